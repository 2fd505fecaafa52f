#pragma once

#include "twistor/bundle.hpp"

#include <functional>
#include <string>
#include <vector>

namespace twistor {

/// JSON value for an exact rational: integers become JSON numbers, proper
/// fractions become "p/q" strings (lossless interchange).
nlohmann::json rational_json(const Rational& q);

/// Pullback-type instanton Chern data: rank r, c1(V) = sum b_i e_i,
/// c2(V) = k[F], c3(V) = 0.
struct InstantonData {
    int r = 1;
    std::vector<long long> b;
    long long k = 0;
    TwistorPresentation space;
};

enum class Divisor { S, Sbar };
enum class Route { standard, paper };

std::string to_string(Divisor d);
std::string to_string(Route r);

/// (rank r, c1 = sum b_i e_i, c2 = k F, c3 = 0). Throws when the b-vector
/// length differs from n. Formal data such as rank 1 with k != 0 is accepted;
/// integrality is checked downstream.
FormalBundle pullback_bundle(const InstantonData& d);

/// c2(End V) = 2r c2(V) + (1-r) c1(V)^2, always a multiple of [F] for
/// pullback data.
CohomologyClass end_bundle_c2(const InstantonData& d);

/// The alternative Chern-class list for "End(V)(-S)" that the paper route
/// evaluates, parametrized by sigma (for S) or sigma_bar (for Sbar):
///   c1 = r(w + s)
///   c2 = c2(End V) + C(r,2)(w^2 + 2ws + s^2)
///   c3 = (r-2) c2(End V)(w + s) + C(r,3)(w^3 + 3w^2 s + 3w s^2)
/// Note the rank-r coefficients; the standard twist of the rank-r^2 bundle
/// End V would carry -r^2(w + s) instead. Both routes give the same
/// S-versus-Sbar difference, which is what the sweeps assert.
struct PaperChernList {
    int rank;
    CohomologyClass c1, c2, c3;
};

PaperChernList paper_chern_list(const InstantonData& d, Divisor divisor);

/// chi(End V(-divisor)) through the standard calculus:
/// twist(end_bundle(V), -[divisor]) fed to generic Riemann-Roch.
Rational chi_standard_route(const InstantonData& d, Divisor divisor);

/// chi(End V(-divisor)) summed group by group from the expanded
/// Riemann-Roch pairing over the PaperChernList data, evaluated in the
/// ring. Agrees exactly with euler_characteristic applied to the rank-r
/// bundle carrying that data (the two-route consistency the sweeps check).
Rational chi_paper_route(const InstantonData& d, Divisor divisor);

struct DimensionReport {
    long long dimension;
    Rational chi;
    bool integral;
    long long real_dimension;  ///< 2 x complex dimension, informational
};

/// The framed-moduli dimension -chi(End V(-S)) via the standard route.
/// Throws FormalDataError when chi is not an integer (formal Chern data).
DimensionReport moduli_dimension(const InstantonData& d);

/// chi(End V(-S)) - chi(End V(-Sbar)) under the chosen route; identically 0.
Rational lemma25_difference(const InstantonData& d, Route route);

/// The chi(-S) - chi(-Sbar) difference reduced to the three intersection
/// numbers w(sigma^2-sigmabar^2) = n-2A, w^2(sigma-sigmabar) = 2A-n and
/// w eta (sigma-sigmabar) = n-2A:
///   (n-2A)(7r/6 + r^2/2 - r^3/6) + (2A-n)(13r/6 + r^2/2 - r^3/6) + (n-2A) r.
/// Identically zero; requires 0 <= A <= n.
Rational difference_polynomial(long long r, long long n, long long A);

struct SweepCase {
    nlohmann::json params;
    nlohmann::json values;
    bool pass = true;
};

/// Structured outcome of an identity or lemma sweep. pass requires every
/// recorded difference to be exactly zero (and every identity to hold).
struct VerificationReport {
    nlohmann::json config;
    std::vector<SweepCase> cases;
    bool pass = true;
    std::vector<nlohmann::json> counterexamples;

    nlohmann::json to_json(bool include_cases = true) const;
};

/// Ring-evaluation checks of the supporting identities:
///   integrate(w (sigma^2 - sigmabar^2)) = n - 2A
///   integrate(w^2 (sigma - sigmabar))   = 2A - n
///   integrate(w eta (sigma - sigmabar)) = n - 2A
/// the five vanishing products
///   (sigma-sigmabar) eta^2, (sigma^2-sigmabar^2) eta, (sigma-sigmabar)[F],
///   (sigma-sigmabar) c2(End V), (sigma-sigmabar)(w^2 + w eta)
/// and the degree-4 identities eta sigma = sigma^2, eta sigmabar = sigmabar^2.
VerificationReport verify_identities(const TwistorPresentation& tp);

struct SweepConfig {
    int n_max = 5;
    int r_max = 3;
    long long k_min = -3;
    long long k_max = 6;
    int extra_b_samples = 1;  ///< b = 0 is always included; extras drawn from {-1,0,1}^n
    bool mode_paper = true;
    bool mode_normalized = true;
    bool route_standard = true;
    bool route_paper = true;
    bool check_identities = true;
    bool check_transcription = true;
    bool corrupt = false;  ///< negative-control fixture: flips the e_i^2 rule sign
    unsigned seed = 20240801u;
    int threads = 0;  ///< 0 = hardware concurrency, capped at 8
    size_t max_counterexamples = 10;
};

/// Runs lemma25_difference (selected routes), the transcription equivalence
/// check, moduli chi/dimension and the identity suite over the full grid of
/// (n, a-vector, c2 mode, r, k, b). Grid points are evaluated with bounded
/// parallelism; the report is assembled in deterministic order regardless of
/// scheduling. Throws std::invalid_argument on an empty range.
VerificationReport sweep(const SweepConfig& config);

}  // namespace twistor
