#include "twistor/space.hpp"

namespace twistor {

std::string to_string(C2Mode mode) {
    return mode == C2Mode::paper ? "paper" : "normalized";
}

C2Mode c2_mode_from_string(const std::string& text) {
    if (text == "paper") return C2Mode::paper;
    if (text == "normalized") return C2Mode::normalized;
    throw std::invalid_argument("unknown c2 mode '" + text + "' (expected paper|normalized)");
}

EulerSignature euler_and_signature(int n) {
    if (n < 0) throw std::invalid_argument("euler_and_signature: negative n");
    return {2 + n, -n};
}

int TwistorPresentation::A() const {
    int total = 0;
    for (int ai : a) total += ai;
    return total;
}

nlohmann::json TwistorPresentation::to_json() const {
    return nlohmann::json{
        {"n", n()},
        {"a", a},
        {"c2_mode", to_string(c2_mode)},
        {"derived", {{"A", A()}, {"e", euler}, {"sgn", signature}}},
    };
}

TwistorPresentation build_presentation(int n, const std::vector<int>& a, C2Mode mode,
                                       std::optional<EulerSignature> override_es) {
    if (n < 0) throw std::invalid_argument("build_presentation: negative n");
    if (static_cast<int>(a.size()) != n)
        throw std::invalid_argument("build_presentation: a-vector has length " + std::to_string(a.size()) +
                                    ", expected n=" + std::to_string(n));
    for (int ai : a)
        if (ai != 0 && ai != 1)
            throw std::invalid_argument("build_presentation: a-vector entries must be 0 or 1");

    TwistorPresentation tp;
    tp.ring = RingPresentation(n);
    tp.a = a;
    tp.c2_mode = mode;
    EulerSignature es = override_es.value_or(euler_and_signature(n));
    tp.euler = es.euler;
    tp.signature = es.signature;

    tp.omega = CohomologyClass::omega(n);
    tp.eta = CohomologyClass(n);
    tp.sigma = CohomologyClass(n);
    tp.sigma_bar = CohomologyClass(n);
    for (int i = 1; i <= n; ++i) {
        CohomologyClass ei = CohomologyClass::eta(n, i);
        tp.eta = tp.eta + ei;
        if (a[static_cast<size_t>(i) - 1] == 1)
            tp.sigma = tp.sigma + ei;
        else
            tp.sigma_bar = tp.sigma_bar + ei;
    }
    tp.S = tp.omega + tp.sigma;
    tp.Sbar = tp.omega + tp.sigma_bar;
    tp.F = mul(tp.omega, tp.omega + tp.eta, tp.ring);
    tp.c1P = scalar_mul(Rational(4), tp.omega) + scalar_mul(Rational(2), tp.eta);
    int c2_multiple = mode == C2Mode::paper ? 3 * (tp.euler - tp.signature) : 6;
    tp.c2P = scalar_mul(Rational(c2_multiple), tp.F);
    return tp;
}

bool canonical_class_check(const TwistorPresentation& tp) {
    CohomologyClass lhs = scalar_mul(Rational(2), tp.S) + scalar_mul(Rational(2), tp.Sbar);
    return lhs == tp.c1P;
}

}  // namespace twistor
