#pragma once

#include "twistor/rational.hpp"

#include <string>
#include <vector>

namespace twistor {

/// Thrown when classes built over different generator counts are mixed, or
/// when a raw monomial does not match the presentation it is reduced against.
struct PresentationMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Exponent vector of a raw, unreduced monomial w^a * prod_i e_i^{k_i}.
/// eta_powers must have one entry per generator of the presentation.
struct Monomial {
    int omega_power = 0;
    std::vector<int> eta_powers;

    Monomial() = default;
    Monomial(int omega, std::vector<int> etas)
        : omega_power(omega), eta_powers(std::move(etas)) {}

    int degree() const;

    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.omega_power == b.omega_power && a.eta_powers == b.eta_powers;
    }
};

struct RawTerm {
    Rational coeff;
    Monomial mono;
};

/// The presentation of the even cohomology ring of the twistor space: one
/// degree-2 generator w plus n degree-2 generators e_1..e_n, reduced by the
/// rewrite rules
///
///     e_i * e_j  ->  0                        (i != j)
///     e_i^2      ->  -w^2 - sum_j w*e_j
///     any monomial of degree > 6  ->  0
///
/// together with the top-degree evaluations
///
///     w^3     ->  (1-n) * pt
///     w^2 e_i ->  pt .
///
/// Each e_i^2 substitution strictly lowers the total e-degree, so rewriting
/// terminates; confluence is witnessed by the derived identities e_i^3 = 0
/// and w e_i^2 = -pt, which the test suite checks for every i and n.
struct RingPresentation {
    int n = 0;

    /// Negative-control fixture: flips the sign of the e_i^2 rule, which
    /// silently breaks w e_i^2 = -pt and everything downstream of it.
    bool corrupt_eta_rule = false;

    explicit RingPresentation(int generators = 0, bool corrupt = false)
        : n(generators), corrupt_eta_rule(corrupt) {
        if (generators < 0) throw std::invalid_argument("RingPresentation: negative n");
    }
};

/// A ring element in normal form: per-degree coefficient vectors over the
/// basis {1}, {w, e_1..e_n}, {w^2, w e_1..w e_n}, {pt}. The zero class has
/// all coefficients zero; equality is exact.
struct CohomologyClass {
    int n = 0;
    Rational c0;               ///< coefficient of 1
    std::vector<Rational> c2;  ///< [w, e_1..e_n], size n+1
    std::vector<Rational> c4;  ///< [w^2, w e_1..w e_n], size n+1
    Rational c6;               ///< coefficient of pt

    CohomologyClass() : c2(1), c4(1) {}
    explicit CohomologyClass(int generators);

    static CohomologyClass zero(int n) { return CohomologyClass(n); }
    static CohomologyClass unit(int n);
    static CohomologyClass omega(int n);
    static CohomologyClass eta(int n, int i);        // e_i, 1-based
    static CohomologyClass omega_sq(int n);
    static CohomologyClass omega_eta(int n, int i);  // w e_i, 1-based
    static CohomologyClass point(int n);

    bool is_zero() const;
    bool is_integral() const;  // every stored coefficient is an integer

    /// The part of the class in one of the degrees 0, 2, 4, 6.
    CohomologyClass component(int degree) const;
    bool homogeneous_of_degree(int degree) const;

    friend bool operator==(const CohomologyClass& a, const CohomologyClass& b);
    friend bool operator!=(const CohomologyClass& a, const CohomologyClass& b) { return !(a == b); }
};

/// Reduces a formal combination of raw monomials to normal form. Linear and
/// idempotent. Throws PresentationMismatch when a monomial's generator count
/// differs from p.n.
CohomologyClass normalize(const std::vector<RawTerm>& raw, const RingPresentation& p);

/// Ring product followed by reduction. Monomials pushed above degree 6 are
/// annihilated before any rewriting happens. Products of normal-form inputs
/// take a closed-form path over the basis; mul_via_rewriter computes the same
/// product by raw expansion through normalize, and the two agree on every
/// input (property-tested). Corrupted presentations always go through the
/// rewriter so the fixture poisons products too.
CohomologyClass mul(const CohomologyClass& a, const CohomologyClass& b, const RingPresentation& p);

/// Reference route for mul: expand basis-by-basis into raw monomials and
/// reduce through normalize.
CohomologyClass mul_via_rewriter(const CohomologyClass& a, const CohomologyClass& b,
                                 const RingPresentation& p);

CohomologyClass add(const CohomologyClass& a, const CohomologyClass& b);
CohomologyClass sub(const CohomologyClass& a, const CohomologyClass& b);
CohomologyClass scalar_mul(const Rational& scalar, const CohomologyClass& a);

/// Coefficient of pt in the degree-6 component; lower degrees are ignored.
Rational integrate(const CohomologyClass& a);

CohomologyClass operator+(const CohomologyClass& a, const CohomologyClass& b);
CohomologyClass operator-(const CohomologyClass& a, const CohomologyClass& b);
CohomologyClass operator-(const CohomologyClass& a);
CohomologyClass operator*(const Rational& scalar, const CohomologyClass& a);

/// Canonical text form: terms ordered by degree then basis index, each as
/// coeff*monomial (degree-0 terms as a bare number), e.g.
/// "3*w^2 + 2*w*e1 - 1*pt". The zero class renders as "0".
std::string render_class(const CohomologyClass& a);

/// Inverse of render_class; also accepts general w/e power products, which
/// are reduced through normalize. Throws std::invalid_argument on malformed
/// text and PresentationMismatch on generators outside 1..n.
CohomologyClass parse_class(const std::string& text, const RingPresentation& p);

}  // namespace twistor
