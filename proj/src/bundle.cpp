#include "twistor/bundle.hpp"

namespace twistor {

namespace {

Rational binom(long long n, long long k) { return Rational(BigInt::binomial(n, k)); }

}  // namespace

FormalBundle make_bundle(int rank, CohomologyClass c1, CohomologyClass c2, CohomologyClass c3) {
    if (rank < 1) throw std::invalid_argument("make_bundle: rank must be positive");
    if (c1.n != c2.n || c2.n != c3.n)
        throw PresentationMismatch("make_bundle: Chern classes over different presentations");
    if (!c1.homogeneous_of_degree(2)) throw FormalDataError("make_bundle: c1 not homogeneous of degree 2");
    if (!c2.homogeneous_of_degree(4)) throw FormalDataError("make_bundle: c2 not homogeneous of degree 4");
    if (!c3.homogeneous_of_degree(6)) throw FormalDataError("make_bundle: c3 not homogeneous of degree 6");
    return FormalBundle{rank, std::move(c1), std::move(c2), std::move(c3)};
}

FormalBundle trivial_bundle(int rank, int n) {
    return make_bundle(rank, CohomologyClass(n), CohomologyClass(n), CohomologyClass(n));
}

FormalBundle dual(const FormalBundle& v) {
    return FormalBundle{v.rank, -v.c1, v.c2, -v.c3};
}

FormalBundle twist(const FormalBundle& v, const CohomologyClass& l, const RingPresentation& p) {
    if (!l.homogeneous_of_degree(2)) throw FormalDataError("twist: twisting class not homogeneous of degree 2");
    const long long r = v.rank;
    CohomologyClass l2 = mul(l, l, p);
    CohomologyClass l3 = mul(l2, l, p);
    CohomologyClass c1 = v.c1 + Rational(r) * l;
    CohomologyClass c2 = v.c2 + Rational(r - 1) * mul(v.c1, l, p) + binom(r, 2) * l2;
    CohomologyClass c3 = v.c3 + Rational(r - 2) * mul(v.c2, l, p) + binom(r - 1, 2) * mul(v.c1, l2, p) +
                         binom(r, 3) * l3;
    return FormalBundle{v.rank, std::move(c1), std::move(c2), std::move(c3)};
}

FormalBundle end_bundle(const FormalBundle& v, const RingPresentation& p) {
    const long long r = v.rank;
    if (r > 46340)  // r^2 must stay an int
        throw std::invalid_argument("end_bundle: rank " + std::to_string(r) + " is too large");
    CohomologyClass c2 = Rational(2 * r) * v.c2 + Rational(1 - r) * mul(v.c1, v.c1, p);
    return FormalBundle{static_cast<int>(r * r), CohomologyClass(v.c1.n), std::move(c2),
                        CohomologyClass(v.c1.n)};
}

std::array<CohomologyClass, 4> chern_character(const FormalBundle& v, const RingPresentation& p) {
    const int n = v.c1.n;
    CohomologyClass c1sq = mul(v.c1, v.c1, p);
    CohomologyClass c1cu = mul(c1sq, v.c1, p);
    CohomologyClass ch0 = Rational(v.rank) * CohomologyClass::unit(n);
    CohomologyClass ch1 = v.c1;
    CohomologyClass ch2 = Rational(BigInt(1), BigInt(2)) * (c1sq - Rational(2) * v.c2);
    CohomologyClass ch3 = Rational(BigInt(1), BigInt(6)) *
                          (c1cu - Rational(3) * mul(v.c1, v.c2, p) + Rational(3) * v.c3);
    return {std::move(ch0), std::move(ch1), std::move(ch2), std::move(ch3)};
}

std::array<CohomologyClass, 4> todd(const TwistorPresentation& tp) {
    const int n = tp.n();
    CohomologyClass c1sq = mul(tp.c1P, tp.c1P, tp.ring);
    CohomologyClass td0 = CohomologyClass::unit(n);
    CohomologyClass td1 = Rational(BigInt(1), BigInt(2)) * tp.c1P;
    CohomologyClass td2 = Rational(BigInt(1), BigInt(12)) * (c1sq + tp.c2P);
    CohomologyClass td3 = Rational(BigInt(1), BigInt(24)) * mul(tp.c1P, tp.c2P, tp.ring);
    return {std::move(td0), std::move(td1), std::move(td2), std::move(td3)};
}

EulerChar euler_characteristic(const FormalBundle& v, const TwistorPresentation& tp) {
    auto ch = chern_character(v, tp.ring);
    auto td = todd(tp);
    Rational chi;
    for (int i = 0; i < 4; ++i) chi += integrate(mul(ch[static_cast<size_t>(i)], td[static_cast<size_t>(3 - i)], tp.ring));
    return {chi, chi.is_integer()};
}

}  // namespace twistor
