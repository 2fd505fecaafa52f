#pragma once

#include "twistor/space.hpp"

#include <array>

namespace twistor {

/// Thrown when formal Chern data fails a structural requirement (e.g. a
/// moduli dimension that comes out non-integral).
struct FormalDataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Rank plus Chern classes c1, c2, c3, each homogeneous of degree 2, 4, 6.
/// Purely formal: nothing here requires the data to come from an actual
/// bundle.
struct FormalBundle {
    int rank = 1;
    CohomologyClass c1, c2, c3;
};

/// Validates rank >= 1 and homogeneity of each class.
FormalBundle make_bundle(int rank, CohomologyClass c1, CohomologyClass c2, CohomologyClass c3);

FormalBundle trivial_bundle(int rank, int n);

/// c_i -> (-1)^i c_i; an involution.
FormalBundle dual(const FormalBundle& v);

/// Tensor with the line bundle of first Chern class l (homogeneous of
/// degree 2):
///   c1' = c1 + r*l
///   c2' = c2 + (r-1) c1 l + C(r,2) l^2
///   c3' = c3 + (r-2) c2 l + C(r-1,2) c1 l^2 + C(r,3) l^3
FormalBundle twist(const FormalBundle& v, const CohomologyClass& l, const RingPresentation& p);

/// End V = V (x) V*: rank r^2, c1 = c3 = 0, c2 = 2r c2(V) + (1-r) c1(V)^2.
FormalBundle end_bundle(const FormalBundle& v, const RingPresentation& p);

/// ch0 = r, ch1 = c1, ch2 = (c1^2 - 2 c2)/2, ch3 = (c1^3 - 3 c1 c2 + 3 c3)/6.
std::array<CohomologyClass, 4> chern_character(const FormalBundle& v, const RingPresentation& p);

/// td0 = 1, td1 = c1(P)/2, td2 = (c1(P)^2 + c2(P))/12, td3 = c1(P)c2(P)/24.
std::array<CohomologyClass, 4> todd(const TwistorPresentation& tp);

struct EulerChar {
    Rational chi;
    bool integral;
};

/// Hirzebruch-Riemann-Roch on the threefold:
/// chi = integrate(ch0 td3 + ch1 td2 + ch2 td1 + ch3 td0).
/// Non-integral values are reported through the flag, never thrown.
EulerChar euler_characteristic(const FormalBundle& v, const TwistorPresentation& tp);

}  // namespace twistor
