#pragma once

#include "twistor/ring.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace twistor {

/// Choice of second Chern class of the space: `paper` takes
/// c2(P) = 3(e - sgn)[F] with (e, sgn) = (2+n, -n), i.e. (6+6n)[F]; that
/// makes chi(O_P) = 1+n. `normalized` takes c2(P) = 6[F], which pins
/// chi(O_P) = 1 for every n (and agrees with `paper` at n = 0). Reports
/// carry both readings rather than deciding between them.
enum class C2Mode { paper, normalized };

std::string to_string(C2Mode mode);
C2Mode c2_mode_from_string(const std::string& text);

struct EulerSignature {
    int euler;
    int signature;
};

/// Topological invariants of #n(-CP^2): e = 2 + n, sgn = -n (n = 0 is S^4).
EulerSignature euler_and_signature(int n);

/// The ring presentation for a fixed space together with its distinguished
/// classes. Immutable after build_presentation; freely shareable.
struct TwistorPresentation {
    RingPresentation ring;
    std::vector<int> a;  ///< entries in {0,1}; [S] = w + sum a_i e_i
    C2Mode c2_mode = C2Mode::paper;
    int euler = 2;
    int signature = 0;

    CohomologyClass omega;      ///< w
    CohomologyClass eta;        ///< sum of the e_i
    CohomologyClass sigma;      ///< sum of a_i e_i
    CohomologyClass sigma_bar;  ///< sum of (1-a_i) e_i
    CohomologyClass F;          ///< fibre class w^2 + w*eta
    CohomologyClass S;          ///< w + sigma
    CohomologyClass Sbar;       ///< w + sigma_bar
    CohomologyClass c1P;        ///< 4w + 2*eta
    CohomologyClass c2P;        ///< multiple of F per c2_mode

    int n() const { return ring.n; }
    int A() const;  // sum of the a_i

    /// {n, a, c2_mode, derived:{A, e, sgn}}; embedded in every report.
    nlohmann::json to_json() const;
};

/// Validates the a-vector (length n, entries 0/1), derives (e, sgn) from n
/// and populates every cached class in normal form. The (e, sgn) override is
/// an expert escape hatch reachable from the CLI; it only moves c2P in paper
/// mode.
TwistorPresentation build_presentation(int n, const std::vector<int>& a, C2Mode mode,
                                       std::optional<EulerSignature> override_es = std::nullopt);

/// Checks c1(P) == 2[S] + 2[Sbar] by ring evaluation.
bool canonical_class_check(const TwistorPresentation& tp);

}  // namespace twistor
