#include "twistor/ring.hpp"

#include <cctype>
#include <deque>
#include <numeric>

namespace twistor {

int Monomial::degree() const {
    int total = omega_power;
    for (int e : eta_powers) total += e;
    return 2 * total;
}

CohomologyClass::CohomologyClass(int generators) : n(generators) {
    if (generators < 0) throw std::invalid_argument("CohomologyClass: negative n");
    c2.assign(static_cast<size_t>(n) + 1, Rational());
    c4.assign(static_cast<size_t>(n) + 1, Rational());
}

CohomologyClass CohomologyClass::unit(int n) {
    CohomologyClass out(n);
    out.c0 = Rational(1);
    return out;
}

CohomologyClass CohomologyClass::omega(int n) {
    CohomologyClass out(n);
    out.c2[0] = Rational(1);
    return out;
}

CohomologyClass CohomologyClass::eta(int n, int i) {
    if (i < 1 || i > n) throw PresentationMismatch("eta index " + std::to_string(i) + " outside 1.." + std::to_string(n));
    CohomologyClass out(n);
    out.c2[static_cast<size_t>(i)] = Rational(1);
    return out;
}

CohomologyClass CohomologyClass::omega_sq(int n) {
    CohomologyClass out(n);
    out.c4[0] = Rational(1);
    return out;
}

CohomologyClass CohomologyClass::omega_eta(int n, int i) {
    if (i < 1 || i > n) throw PresentationMismatch("eta index " + std::to_string(i) + " outside 1.." + std::to_string(n));
    CohomologyClass out(n);
    out.c4[static_cast<size_t>(i)] = Rational(1);
    return out;
}

CohomologyClass CohomologyClass::point(int n) {
    CohomologyClass out(n);
    out.c6 = Rational(1);
    return out;
}

bool CohomologyClass::is_zero() const {
    if (!c0.is_zero() || !c6.is_zero()) return false;
    for (const auto& q : c2)
        if (!q.is_zero()) return false;
    for (const auto& q : c4)
        if (!q.is_zero()) return false;
    return true;
}

bool CohomologyClass::is_integral() const {
    if (!c0.is_integer() || !c6.is_integer()) return false;
    for (const auto& q : c2)
        if (!q.is_integer()) return false;
    for (const auto& q : c4)
        if (!q.is_integer()) return false;
    return true;
}

CohomologyClass CohomologyClass::component(int degree) const {
    CohomologyClass out(n);
    switch (degree) {
        case 0: out.c0 = c0; break;
        case 2: out.c2 = c2; break;
        case 4: out.c4 = c4; break;
        case 6: out.c6 = c6; break;
        default: throw std::invalid_argument("component: degree must be 0, 2, 4 or 6");
    }
    return out;
}

bool CohomologyClass::homogeneous_of_degree(int degree) const {
    return *this == component(degree);
}

bool operator==(const CohomologyClass& a, const CohomologyClass& b) {
    return a.n == b.n && a.c0 == b.c0 && a.c2 == b.c2 && a.c4 == b.c4 && a.c6 == b.c6;
}

namespace {

void check_same(const CohomologyClass& a, const CohomologyClass& b) {
    if (a.n != b.n)
        throw PresentationMismatch("classes over different presentations: n=" + std::to_string(a.n) +
                                   " vs n=" + std::to_string(b.n));
}

// Number of distinct e generators appearing, and the (last) one seen.
int count_eta_factors(const Monomial& m, int& which) {
    int distinct = 0;
    which = -1;
    for (size_t i = 0; i < m.eta_powers.size(); ++i) {
        if (m.eta_powers[i] != 0) {
            ++distinct;
            which = static_cast<int>(i);
        }
    }
    return distinct;
}

}  // namespace

CohomologyClass normalize(const std::vector<RawTerm>& raw, const RingPresentation& p) {
    CohomologyClass out(p.n);
    std::deque<RawTerm> work(raw.begin(), raw.end());
    const Rational eta_sq_sign = p.corrupt_eta_rule ? Rational(1) : Rational(-1);

    while (!work.empty()) {
        RawTerm term = std::move(work.front());
        work.pop_front();
        if (term.coeff.is_zero()) continue;
        const Monomial& m = term.mono;
        if (static_cast<int>(m.eta_powers.size()) != p.n)
            throw PresentationMismatch("monomial has " + std::to_string(m.eta_powers.size()) +
                                       " eta exponents, presentation has n=" + std::to_string(p.n));
        if (m.omega_power < 0)
            throw std::invalid_argument("normalize: negative omega exponent");
        for (int e : m.eta_powers)
            if (e < 0) throw std::invalid_argument("normalize: negative eta exponent");

        // truncation happens before any rewriting
        if (m.degree() > 6) continue;

        int which = -1;
        int distinct = count_eta_factors(m, which);
        if (distinct >= 2) continue;  // divisible by e_i e_j, i != j

        if (distinct == 1 && m.eta_powers[static_cast<size_t>(which)] >= 2) {
            // e_i^2 -> -(w^2 + sum_j w e_j), then distribute over the rest
            Monomial base = m;
            base.eta_powers[static_cast<size_t>(which)] -= 2;
            Monomial head = base;
            head.omega_power += 2;
            work.push_back({term.coeff * eta_sq_sign, std::move(head)});
            for (int j = 0; j < p.n; ++j) {
                Monomial t = base;
                t.omega_power += 1;
                t.eta_powers[static_cast<size_t>(j)] += 1;
                work.push_back({term.coeff * eta_sq_sign, std::move(t)});
            }
            continue;
        }

        // basis-like monomial: at most one e factor, exponent <= 1
        switch (m.degree()) {
            case 0:
                out.c0 += term.coeff;
                break;
            case 2:
                if (distinct == 0)
                    out.c2[0] += term.coeff;
                else
                    out.c2[static_cast<size_t>(which) + 1] += term.coeff;
                break;
            case 4:
                if (distinct == 0)
                    out.c4[0] += term.coeff;
                else
                    out.c4[static_cast<size_t>(which) + 1] += term.coeff;
                break;
            case 6:
                // w^3 = (1-n) pt, w^2 e_i = pt
                if (distinct == 0)
                    out.c6 += term.coeff * Rational(1 - p.n);
                else
                    out.c6 += term.coeff;
                break;
            default:
                break;  // unreachable: odd degrees cannot arise
        }
    }
    return out;
}

CohomologyClass mul_via_rewriter(const CohomologyClass& a, const CohomologyClass& b,
                                 const RingPresentation& p) {
    check_same(a, b);
    if (a.n != p.n)
        throw PresentationMismatch("mul: classes have n=" + std::to_string(a.n) +
                                   ", presentation has n=" + std::to_string(p.n));
    const int n = p.n;

    // expand basis-by-basis into raw monomials and push through the rewriter
    std::vector<Monomial> basis;
    std::vector<const Rational*> acoef, bcoef;
    basis.reserve(2 * static_cast<size_t>(n) + 3);
    std::vector<int> zero(static_cast<size_t>(n), 0);
    auto add_basis = [&](int omega, int eta_index, const Rational& ca, const Rational& cb) {
        Monomial m(omega, zero);
        if (eta_index >= 0) m.eta_powers[static_cast<size_t>(eta_index)] = 1;
        basis.push_back(std::move(m));
        acoef.push_back(&ca);
        bcoef.push_back(&cb);
    };
    add_basis(0, -1, a.c0, b.c0);
    add_basis(1, -1, a.c2[0], b.c2[0]);
    for (int i = 0; i < n; ++i) add_basis(0, i, a.c2[static_cast<size_t>(i) + 1], b.c2[static_cast<size_t>(i) + 1]);
    add_basis(2, -1, a.c4[0], b.c4[0]);
    for (int i = 0; i < n; ++i) add_basis(1, i, a.c4[static_cast<size_t>(i) + 1], b.c4[static_cast<size_t>(i) + 1]);

    std::vector<RawTerm> raw;
    for (size_t i = 0; i < basis.size(); ++i) {
        if (acoef[i]->is_zero()) continue;
        for (size_t j = 0; j < basis.size(); ++j) {
            if (bcoef[j]->is_zero()) continue;
            Monomial prod = basis[i];
            prod.omega_power += basis[j].omega_power;
            for (size_t g = 0; g < prod.eta_powers.size(); ++g)
                prod.eta_powers[g] += basis[j].eta_powers[g];
            raw.push_back({*acoef[i] * *bcoef[j], std::move(prod)});
        }
    }
    CohomologyClass out = normalize(raw, p);
    // pt pairs only with the degree-0 parts; pt * (anything positive) truncates
    out.c6 += a.c6 * b.c0 + a.c0 * b.c6;
    return out;
}

CohomologyClass mul(const CohomologyClass& a, const CohomologyClass& b, const RingPresentation& p) {
    if (p.corrupt_eta_rule) return mul_via_rewriter(a, b, p);
    check_same(a, b);
    if (a.n != p.n)
        throw PresentationMismatch("mul: classes have n=" + std::to_string(a.n) +
                                   ", presentation has n=" + std::to_string(p.n));
    const int n = p.n;
    CohomologyClass out(n);
    auto acc = [](Rational& slot, const Rational& x, const Rational& y) {
        if (!x.is_zero() && !y.is_zero()) slot += x * y;
    };

    acc(out.c0, a.c0, b.c0);

    for (int j = 0; j <= n; ++j) {
        acc(out.c2[static_cast<size_t>(j)], a.c0, b.c2[static_cast<size_t>(j)]);
        acc(out.c2[static_cast<size_t>(j)], b.c0, a.c2[static_cast<size_t>(j)]);
    }

    // e_i e_i contributes -(w^2 + sum_j w e_j) for each i; e_i e_j (i != j) dies
    Rational diag;
    for (int i = 1; i <= n; ++i)
        acc(diag, a.c2[static_cast<size_t>(i)], b.c2[static_cast<size_t>(i)]);
    for (int j = 0; j <= n; ++j) {
        Rational& slot = out.c4[static_cast<size_t>(j)];
        acc(slot, a.c0, b.c4[static_cast<size_t>(j)]);
        acc(slot, b.c0, a.c4[static_cast<size_t>(j)]);
        if (j == 0)
            acc(slot, a.c2[0], b.c2[0]);
        else {
            acc(slot, a.c2[0], b.c2[static_cast<size_t>(j)]);
            acc(slot, a.c2[static_cast<size_t>(j)], b.c2[0]);
        }
        if (!diag.is_zero()) slot -= diag;
    }

    // degree 6: w^3 = (1-n) pt, w^2 e_i = pt, w e_i^2 = -pt, mixed products die
    Rational pt;
    acc(pt, a.c0, b.c6);
    acc(pt, b.c0, a.c6);
    const Rational top(1 - n);
    if (!a.c2[0].is_zero() && !b.c4[0].is_zero()) pt += a.c2[0] * b.c4[0] * top;
    if (!b.c2[0].is_zero() && !a.c4[0].is_zero()) pt += b.c2[0] * a.c4[0] * top;
    for (int i = 1; i <= n; ++i) {
        const size_t s = static_cast<size_t>(i);
        acc(pt, a.c2[0], b.c4[s]);
        acc(pt, b.c2[0], a.c4[s]);
        acc(pt, a.c2[s], b.c4[0]);
        acc(pt, b.c2[s], a.c4[0]);
        if (!a.c2[s].is_zero() && !b.c4[s].is_zero()) pt -= a.c2[s] * b.c4[s];
        if (!b.c2[s].is_zero() && !a.c4[s].is_zero()) pt -= b.c2[s] * a.c4[s];
    }
    out.c6 = std::move(pt);
    return out;
}

CohomologyClass add(const CohomologyClass& a, const CohomologyClass& b) {
    check_same(a, b);
    CohomologyClass out = a;
    out.c0 += b.c0;
    for (size_t i = 0; i < out.c2.size(); ++i) out.c2[i] += b.c2[i];
    for (size_t i = 0; i < out.c4.size(); ++i) out.c4[i] += b.c4[i];
    out.c6 += b.c6;
    return out;
}

CohomologyClass sub(const CohomologyClass& a, const CohomologyClass& b) {
    return add(a, scalar_mul(Rational(-1), b));
}

CohomologyClass scalar_mul(const Rational& scalar, const CohomologyClass& a) {
    CohomologyClass out = a;
    out.c0 *= scalar;
    for (auto& q : out.c2) q *= scalar;
    for (auto& q : out.c4) q *= scalar;
    out.c6 *= scalar;
    return out;
}

Rational integrate(const CohomologyClass& a) { return a.c6; }

CohomologyClass operator+(const CohomologyClass& a, const CohomologyClass& b) { return add(a, b); }
CohomologyClass operator-(const CohomologyClass& a, const CohomologyClass& b) { return sub(a, b); }
CohomologyClass operator-(const CohomologyClass& a) { return scalar_mul(Rational(-1), a); }
CohomologyClass operator*(const Rational& scalar, const CohomologyClass& a) { return scalar_mul(scalar, a); }

namespace {

void append_term(std::string& out, const Rational& coeff, const std::string& mono) {
    if (coeff.is_zero()) return;
    Rational mag = coeff.is_negative() ? -coeff : coeff;
    if (out.empty()) {
        if (coeff.is_negative()) out += "-";
    } else {
        out += coeff.is_negative() ? " - " : " + ";
    }
    out += mag.to_string();
    if (!mono.empty()) {
        out += "*";
        out += mono;
    }
}

}  // namespace

std::string render_class(const CohomologyClass& a) {
    std::string out;
    append_term(out, a.c0, "");
    append_term(out, a.c2[0], "w");
    for (int i = 1; i <= a.n; ++i) append_term(out, a.c2[static_cast<size_t>(i)], "e" + std::to_string(i));
    append_term(out, a.c4[0], "w^2");
    for (int i = 1; i <= a.n; ++i) append_term(out, a.c4[static_cast<size_t>(i)], "w*e" + std::to_string(i));
    append_term(out, a.c6, "pt");
    return out.empty() ? "0" : out;
}

namespace {

struct ClassScanner {
    const std::string& text;
    size_t pos = 0;

    explicit ClassScanner(const std::string& t) : text(t) {}

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= text.size();
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    bool accept(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) {
        throw std::invalid_argument("class syntax error at offset " + std::to_string(pos) + ": " + what);
    }
    std::string number() {
        skip_ws();
        size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) fail("expected a number");
        return text.substr(start, pos - start);
    }
    int integer() { return std::stoi(number()); }
};

}  // namespace

CohomologyClass parse_class(const std::string& text, const RingPresentation& p) {
    ClassScanner in(text);
    std::vector<RawTerm> raw;
    Rational pt_total;

    bool first = true;
    while (!in.eof()) {
        bool negative = false;
        if (in.accept('-'))
            negative = true;
        else if (in.accept('+')) {
            if (first) in.fail("unexpected leading '+'");
        } else if (!first) {
            in.fail("expected '+' or '-' between terms");
        }
        first = false;

        // coefficient (integer or p/q), then optional *monomial factors
        std::string num = in.number();
        Rational coeff;
        if (in.accept('/'))
            coeff = Rational(BigInt(num), BigInt(in.number()));
        else
            coeff = Rational(BigInt(num));
        if (negative) coeff = -coeff;

        Monomial mono(0, std::vector<int>(static_cast<size_t>(p.n), 0));
        bool is_pt = false;
        while (in.accept('*')) {
            char c = in.peek();
            if (c == 'w') {
                ++in.pos;
                int e = 1;
                if (in.accept('^')) e = in.integer();
                mono.omega_power += e;
            } else if (c == 'e') {
                ++in.pos;
                int idx = in.integer();
                if (idx < 1 || idx > p.n)
                    throw PresentationMismatch("generator e" + std::to_string(idx) + " outside 1.." +
                                               std::to_string(p.n));
                int e = 1;
                if (in.accept('^')) e = in.integer();
                mono.eta_powers[static_cast<size_t>(idx) - 1] += e;
            } else if (c == 'p') {
                if (text.compare(in.pos, 2, "pt") != 0) in.fail("expected monomial");
                in.pos += 2;
                is_pt = true;
            } else {
                in.fail("expected monomial factor");
            }
        }
        if (is_pt) {
            if (mono.degree() != 0) in.fail("pt cannot be combined with other factors");
            pt_total += coeff;
        } else {
            raw.push_back({std::move(coeff), std::move(mono)});
        }
    }

    CohomologyClass out = normalize(raw, p);
    out.c6 += pt_total;
    return out;
}

}  // namespace twistor
