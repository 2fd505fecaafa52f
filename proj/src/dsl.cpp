#include "twistor/dsl.hpp"

#include <cctype>

namespace twistor::dsl {

std::string error_code(ScriptErrorKind kind) {
    switch (kind) {
        case ScriptErrorKind::lexical: return "E_LEX";
        case ScriptErrorKind::syntax: return "E_SYNTAX";
        case ScriptErrorKind::unbound_identifier: return "E_UNBOUND";
        case ScriptErrorKind::degree_mismatch: return "E_DEGREE";
        case ScriptErrorKind::no_active_space: return "E_NO_SPACE";
        case ScriptErrorKind::assertion_failed: return "E_ASSERT";
        case ScriptErrorKind::formal_data: return "E_FORMAL";
        case ScriptErrorKind::runtime: return "E_RUNTIME";
    }
    return "E_UNKNOWN";
}

bool operator==(const ClassExpr& a, const ClassExpr& b) {
    return a.kind == b.kind && a.number == b.number && a.name == b.name && a.exponent == b.exponent &&
           a.kids == b.kids;
}

bool operator==(const BundleExpr& a, const BundleExpr& b) {
    if (a.kind != b.kind || a.name != b.name || a.twist_by != b.twist_by) return false;
    if (!a.base != !b.base) return false;
    return !a.base || *a.base == *b.base;
}

// --------------------------------------------------------------------------
// lexer

namespace {

enum class Tok { ident, integer, eq, eqeq, le, lbracket, rbracket, lparen, rparen, plus, minus, star, caret, comma, newline, end };

struct Token {
    Tok kind;
    std::string text;
    long long value = 0;
    int line = 0, col = 0;
};

struct Lexer {
    const std::string& src;
    size_t pos = 0;
    int line = 1, col = 1;
    std::vector<Token> tokens;

    explicit Lexer(const std::string& s) : src(s) {}

    void push(Tok kind, std::string text, int l, int c, long long v = 0) {
        tokens.push_back(Token{kind, std::move(text), v, l, c});
    }

    void run() {
        while (pos < src.size()) {
            char ch = src[pos];
            int l = line, c = col;
            if (ch == '\n') {
                push(Tok::newline, "\n", l, c);
                ++pos;
                ++line;
                col = 1;
                continue;
            }
            if (ch == '#') {  // comment to end of line
                while (pos < src.size() && src[pos] != '\n') advance();
                continue;
            }
            if (std::isspace(static_cast<unsigned char>(ch))) {
                advance();
                continue;
            }
            if (std::isdigit(static_cast<unsigned char>(ch))) {
                std::string text;
                while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
                    text.push_back(src[pos]);
                    advance();
                }
                push(Tok::integer, text, l, c, std::stoll(text));
                continue;
            }
            if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
                std::string text;
                while (pos < src.size() &&
                       (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_' || src[pos] == '.')) {
                    text.push_back(src[pos]);
                    advance();
                }
                push(Tok::ident, text, l, c);
                continue;
            }
            switch (ch) {
                case '=':
                    if (pos + 1 < src.size() && src[pos + 1] == '=') {
                        push(Tok::eqeq, "==", l, c);
                        advance();
                        advance();
                    } else {
                        push(Tok::eq, "=", l, c);
                        advance();
                    }
                    continue;
                case '<':
                    if (pos + 1 < src.size() && src[pos + 1] == '=') {
                        push(Tok::le, "<=", l, c);
                        advance();
                        advance();
                        continue;
                    }
                    throw ScriptError(ScriptErrorKind::lexical, l, c, "stray '<'");
                case '[': push(Tok::lbracket, "[", l, c); advance(); continue;
                case ']': push(Tok::rbracket, "]", l, c); advance(); continue;
                case '(': push(Tok::lparen, "(", l, c); advance(); continue;
                case ')': push(Tok::rparen, ")", l, c); advance(); continue;
                case '+': push(Tok::plus, "+", l, c); advance(); continue;
                case '-': push(Tok::minus, "-", l, c); advance(); continue;
                case '*': push(Tok::star, "*", l, c); advance(); continue;
                case '^': push(Tok::caret, "^", l, c); advance(); continue;
                case ',': push(Tok::comma, ",", l, c); advance(); continue;
                default:
                    throw ScriptError(ScriptErrorKind::lexical, l, c,
                                      std::string("unexpected character '") + ch + "'");
            }
        }
        push(Tok::end, "", line, col);
    }

    void advance() {
        ++pos;
        ++col;
    }
};

// --------------------------------------------------------------------------
// parser

struct Parser {
    std::vector<Token> toks;
    size_t pos = 0;

    explicit Parser(std::vector<Token> t) : toks(std::move(t)) {}

    const Token& peek() const { return toks[pos]; }
    const Token& get() { return toks[pos++]; }

    bool at(Tok kind) const { return peek().kind == kind; }
    bool at_ident(const char* word) const { return at(Tok::ident) && peek().text == word; }

    Token expect(Tok kind, const std::string& what) {
        if (!at(kind))
            throw ScriptError(ScriptErrorKind::syntax, peek().line, peek().col,
                              "expected " + what + ", found '" + peek().text + "'");
        return get();
    }
    int expect_int_between(long long lo, long long hi, const std::string& what) {
        Token t = expect(Tok::integer, what);
        if (t.value < lo || t.value > hi)
            throw ScriptError(ScriptErrorKind::syntax, t.line, t.col,
                              what + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) +
                                  "], got " + t.text);
        return static_cast<int>(t.value);
    }
    void expect_ident(const char* word) {
        if (!at_ident(word))
            throw ScriptError(ScriptErrorKind::syntax, peek().line, peek().col,
                              std::string("expected '") + word + "', found '" + peek().text + "'");
        get();
    }
    [[noreturn]] void fail(const std::string& message) const {
        throw ScriptError(ScriptErrorKind::syntax, peek().line, peek().col, message);
    }

    void skip_newlines() {
        while (at(Tok::newline)) get();
    }

    Script script() {
        Script out;
        skip_newlines();
        while (!at(Tok::end)) {
            Statement stmt;
            stmt.line = peek().line;
            stmt.body = statement();
            out.statements.push_back(std::move(stmt));
            if (at(Tok::end)) break;
            if (!at(Tok::newline)) fail("expected end of statement, found '" + peek().text + "'");
            skip_newlines();
        }
        return out;
    }

    StatementBody statement() {
        if (!at(Tok::ident)) fail("expected a statement keyword");
        const std::string& kw = peek().text;
        if (kw == "space") return space_stmt();
        if (kw == "let") return let_stmt();
        if (kw == "bundle") return bundle_stmt();
        if (kw == "print") { get(); return PrintStmt{class_expr()}; }
        if (kw == "chi") { get(); return ChiStmt{bundle_expr()}; }
        if (kw == "dim") { get(); return DimStmt{bundle_expr()}; }
        if (kw == "assert") return assert_stmt();
        if (kw == "verify") return verify_stmt();
        if (kw == "sweep") return sweep_stmt();
        fail("unknown statement '" + kw + "'");
    }

    SpaceStmt space_stmt() {
        expect_ident("space");
        SpaceStmt out;
        expect_ident("n");
        expect(Tok::eq, "'='");
        out.n = expect_int_between(0, 4096, "n");
        while (at(Tok::ident)) {
            if (peek().text == "a") {
                get();
                expect(Tok::eq, "'='");
                expect(Tok::lbracket, "'['");
                out.has_a = true;
                if (!at(Tok::rbracket)) {
                    out.a.push_back(static_cast<int>(expect(Tok::integer, "0 or 1").value));
                    while (at(Tok::comma)) {
                        get();
                        out.a.push_back(static_cast<int>(expect(Tok::integer, "0 or 1").value));
                    }
                }
                expect(Tok::rbracket, "']'");
            } else if (peek().text == "c2") {
                get();
                expect(Tok::eq, "'='");
                Token mode = expect(Tok::ident, "paper|normalized");
                if (mode.text != "paper" && mode.text != "normalized")
                    throw ScriptError(ScriptErrorKind::syntax, mode.line, mode.col,
                                      "c2 mode must be paper or normalized");
                out.c2_mode = mode.text;
            } else {
                fail("unknown space option '" + peek().text + "'");
            }
        }
        return out;
    }

    LetStmt let_stmt() {
        expect_ident("let");
        LetStmt out;
        out.name = expect(Tok::ident, "a name").text;
        expect(Tok::eq, "'='");
        out.expr = class_expr();
        return out;
    }

    BundleStmt bundle_stmt() {
        expect_ident("bundle");
        BundleStmt out;
        out.name = expect(Tok::ident, "a name").text;
        expect_ident("rank");
        expect(Tok::eq, "'='");
        out.rank = expect_int_between(1, 46340, "rank");
        expect_ident("c1");
        expect(Tok::eq, "'='");
        out.c1 = class_expr();
        expect_ident("c2");
        expect(Tok::eq, "'='");
        out.c2 = class_expr();
        if (at_ident("c3")) {
            get();
            expect(Tok::eq, "'='");
            out.c3 = class_expr();
        }
        return out;
    }

    AssertStmt assert_stmt() {
        expect_ident("assert");
        AssertStmt out;
        out.lhs = class_expr();
        expect(Tok::eqeq, "'=='");
        out.rhs = class_expr();
        return out;
    }

    VerifyStmt verify_stmt() {
        expect_ident("verify");
        Token t = expect(Tok::ident, "a verify target");
        if (t.text != "canonical" && t.text != "identities" && t.text != "lemma2.5")
            throw ScriptError(ScriptErrorKind::syntax, t.line, t.col,
                              "verify target must be canonical, identities or lemma2.5");
        return VerifyStmt{t.text};
    }

    SweepStmt sweep_stmt() {
        expect_ident("sweep");
        SweepStmt out;
        while (at(Tok::ident) && peek().text != "verify") {
            Token name = get();
            if (name.text != "n" && name.text != "r" && name.text != "k")
                throw ScriptError(ScriptErrorKind::syntax, name.line, name.col,
                                  "sweep bound must be one of n, r, k");
            expect(Tok::le, "'<='");
            long long v = expect(Tok::integer, "an integer").value;
            out.bounds.emplace_back(name.text, v);
        }
        expect_ident("verify");
        Token t = expect(Tok::ident, "a verify target");
        if (t.text != "lemma2.5" && t.text != "identities")
            throw ScriptError(ScriptErrorKind::syntax, t.line, t.col,
                              "sweep target must be lemma2.5 or identities");
        out.target = t.text;
        return out;
    }

    // classexpr := ["+"|"-"] product { ("+"|"-") product }
    ClassExpr class_expr() {
        ClassExpr lhs;
        if (at(Tok::minus)) {
            Token t = get();
            ClassExpr inner = product();
            lhs.kind = ClassExpr::Kind::neg;
            lhs.kids.push_back(std::move(inner));
            lhs.line = t.line;
            lhs.col = t.col;
        } else {
            if (at(Tok::plus)) get();
            lhs = product();
        }
        while (at(Tok::plus) || at(Tok::minus)) {
            Token op = get();
            ClassExpr rhs = product();
            ClassExpr node;
            node.kind = op.kind == Tok::plus ? ClassExpr::Kind::add : ClassExpr::Kind::sub;
            node.line = op.line;
            node.col = op.col;
            node.kids.push_back(std::move(lhs));
            node.kids.push_back(std::move(rhs));
            lhs = std::move(node);
        }
        return lhs;
    }

    ClassExpr product() {
        ClassExpr lhs = power();
        while (at(Tok::star)) {
            Token op = get();
            ClassExpr rhs = power();
            ClassExpr node;
            node.kind = ClassExpr::Kind::mul;
            node.line = op.line;
            node.col = op.col;
            node.kids.push_back(std::move(lhs));
            node.kids.push_back(std::move(rhs));
            lhs = std::move(node);
        }
        return lhs;
    }

    ClassExpr power() {
        ClassExpr base = primary();
        if (at(Tok::caret)) {
            Token op = get();
            ClassExpr node;
            node.kind = ClassExpr::Kind::pow;
            node.exponent = expect_int_between(0, 1000, "an exponent");
            node.line = op.line;
            node.col = op.col;
            node.kids.push_back(std::move(base));
            return node;
        }
        return base;
    }

    ClassExpr primary() {
        ClassExpr out;
        out.line = peek().line;
        out.col = peek().col;
        if (at(Tok::integer)) {
            out.kind = ClassExpr::Kind::number;
            out.number = get().value;
            return out;
        }
        if (at(Tok::lparen)) {
            get();
            out = class_expr();
            expect(Tok::rparen, "')'");
            return out;
        }
        if (at_ident("integrate")) {
            Token t = get();
            expect(Tok::lparen, "'('");
            ClassExpr inner = class_expr();
            expect(Tok::rparen, "')'");
            out.kind = ClassExpr::Kind::integrate_op;
            out.line = t.line;
            out.col = t.col;
            out.kids.push_back(std::move(inner));
            return out;
        }
        if (at(Tok::ident)) {
            Token t = get();
            out.kind = ClassExpr::Kind::name;
            out.name = t.text;
            return out;
        }
        fail("expected a class expression");
    }

    // bundleexpr := atom { "(" classexpr ")" }
    // atom := "End" "(" bundleexpr ")" | "O" | IDENT
    BundleExpr bundle_expr() {
        BundleExpr out = bundle_atom();
        while (at(Tok::lparen)) {
            Token t = get();
            ClassExpr l = class_expr();
            expect(Tok::rparen, "')'");
            BundleExpr node;
            node.kind = BundleExpr::Kind::twist;
            node.base = std::make_shared<BundleExpr>(std::move(out));
            node.twist_by = std::move(l);
            node.line = t.line;
            node.col = t.col;
            out = std::move(node);
        }
        return out;
    }

    BundleExpr bundle_atom() {
        BundleExpr out;
        out.line = peek().line;
        out.col = peek().col;
        if (at_ident("End")) {
            get();
            expect(Tok::lparen, "'('");
            BundleExpr inner = bundle_expr();
            expect(Tok::rparen, "')'");
            out.kind = BundleExpr::Kind::end_of;
            out.base = std::make_shared<BundleExpr>(std::move(inner));
            return out;
        }
        if (at_ident("O")) {
            get();
            out.kind = BundleExpr::Kind::trivial_line;
            return out;
        }
        Token t = expect(Tok::ident, "a bundle name");
        out.kind = BundleExpr::Kind::named;
        out.name = t.text;
        return out;
    }
};

}  // namespace

Script parse(const std::string& text) {
    Lexer lex(text);
    lex.run();
    Parser parser(std::move(lex.tokens));
    return parser.script();
}

// --------------------------------------------------------------------------
// printer

namespace {

int precedence(ClassExpr::Kind kind) {
    switch (kind) {
        case ClassExpr::Kind::add:
        case ClassExpr::Kind::sub:
        case ClassExpr::Kind::neg: return 1;
        case ClassExpr::Kind::mul: return 2;
        case ClassExpr::Kind::pow: return 3;
        default: return 4;
    }
}

void print_expr(const ClassExpr& e, std::string& out, int parent_prec) {
    bool parens = precedence(e.kind) < parent_prec;
    if (parens) out += "(";
    switch (e.kind) {
        case ClassExpr::Kind::number: out += std::to_string(e.number); break;
        case ClassExpr::Kind::name: out += e.name; break;
        case ClassExpr::Kind::add:
            print_expr(e.kids[0], out, 1);
            out += " + ";
            print_expr(e.kids[1], out, 2);
            break;
        case ClassExpr::Kind::sub:
            print_expr(e.kids[0], out, 1);
            out += " - ";
            print_expr(e.kids[1], out, 2);
            break;
        case ClassExpr::Kind::neg:
            out += "-";
            print_expr(e.kids[0], out, 2);
            break;
        case ClassExpr::Kind::mul:
            print_expr(e.kids[0], out, 2);
            out += "*";
            print_expr(e.kids[1], out, 3);
            break;
        case ClassExpr::Kind::pow:
            print_expr(e.kids[0], out, 4);
            out += "^" + std::to_string(e.exponent);
            break;
        case ClassExpr::Kind::integrate_op:
            out += "integrate(";
            print_expr(e.kids[0], out, 0);
            out += ")";
            break;
    }
    if (parens) out += ")";
}

void print_bundle(const BundleExpr& e, std::string& out) {
    switch (e.kind) {
        case BundleExpr::Kind::named: out += e.name; break;
        case BundleExpr::Kind::trivial_line: out += "O"; break;
        case BundleExpr::Kind::end_of:
            out += "End(";
            print_bundle(*e.base, out);
            out += ")";
            break;
        case BundleExpr::Kind::twist:
            print_bundle(*e.base, out);
            out += "(";
            print_expr(*e.twist_by, out, 0);
            out += ")";
            break;
    }
}

struct StatementPrinter {
    std::string out;

    void operator()(const SpaceStmt& s) {
        out += "space n=" + std::to_string(s.n);
        if (s.has_a) {
            out += " a=[";
            for (size_t i = 0; i < s.a.size(); ++i) {
                if (i) out += ",";
                out += std::to_string(s.a[i]);
            }
            out += "]";
        }
        if (!s.c2_mode.empty()) out += " c2=" + s.c2_mode;
    }
    void operator()(const LetStmt& s) {
        out += "let " + s.name + " = ";
        print_expr(s.expr, out, 0);
    }
    void operator()(const BundleStmt& s) {
        out += "bundle " + s.name + " rank=" + std::to_string(s.rank) + " c1=";
        print_expr(s.c1, out, 0);
        out += " c2=";
        print_expr(s.c2, out, 0);
        if (s.c3) {
            out += " c3=";
            print_expr(*s.c3, out, 0);
        }
    }
    void operator()(const PrintStmt& s) {
        out += "print ";
        print_expr(s.expr, out, 0);
    }
    void operator()(const ChiStmt& s) {
        out += "chi ";
        print_bundle(s.bundle, out);
    }
    void operator()(const DimStmt& s) {
        out += "dim ";
        print_bundle(s.bundle, out);
    }
    void operator()(const AssertStmt& s) {
        out += "assert ";
        print_expr(s.lhs, out, 0);
        out += " == ";
        print_expr(s.rhs, out, 0);
    }
    void operator()(const VerifyStmt& s) { out += "verify " + s.target; }
    void operator()(const SweepStmt& s) {
        out += "sweep";
        for (const auto& [name, bound] : s.bounds) out += " " + name + "<=" + std::to_string(bound);
        out += " verify " + s.target;
    }
};

}  // namespace

std::string print(const ClassExpr& expr) {
    std::string out;
    print_expr(expr, out, 0);
    return out;
}

std::string print(const BundleExpr& expr) {
    std::string out;
    print_bundle(expr, out);
    return out;
}

std::string print(const Script& script) {
    std::string out;
    for (const auto& stmt : script.statements) {
        StatementPrinter printer;
        std::visit(printer, stmt.body);
        out += printer.out;
        out += "\n";
    }
    return out;
}

// --------------------------------------------------------------------------
// executor

namespace {

struct Env {
    std::optional<TwistorPresentation> space;
    std::map<std::string, CohomologyClass> classes;
    std::map<std::string, FormalBundle> bundles;
    int stmt_index = 0;

    const TwistorPresentation& need_space(int line, int col) const {
        if (!space)
            throw ScriptError(ScriptErrorKind::no_active_space, line, col,
                              "no active space; add a 'space n=...' statement first", stmt_index);
        return *space;
    }
};

bool is_generator_name(const std::string& name, int& index) {
    if (name.size() < 2 || name[0] != 'e') return false;
    for (size_t i = 1; i < name.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(name[i]))) return false;
    index = std::stoi(name.substr(1));
    return true;
}

CohomologyClass eval_class(const ClassExpr& e, Env& env) {
    const TwistorPresentation& tp = env.need_space(e.line, e.col);
    const int n = tp.n();
    switch (e.kind) {
        case ClassExpr::Kind::number:
            return Rational(e.number) * CohomologyClass::unit(n);
        case ClassExpr::Kind::name: {
            int index = 0;
            if (e.name == "w") return tp.omega;
            if (e.name == "F") return tp.F;
            if (e.name == "S") return tp.S;
            if (e.name == "Sbar") return tp.Sbar;
            if (e.name == "pt") return CohomologyClass::point(n);
            if (e.name == "eta") return tp.eta;
            if (e.name == "sigma") return tp.sigma;
            if (e.name == "sigmabar") return tp.sigma_bar;
            if (e.name == "c1P") return tp.c1P;
            if (e.name == "c2P") return tp.c2P;
            if (is_generator_name(e.name, index)) {
                if (index < 1 || index > n)
                    throw ScriptError(ScriptErrorKind::unbound_identifier, e.line, e.col,
                                      "generator " + e.name + " does not exist: space has n=" +
                                          std::to_string(n),
                                      env.stmt_index);
                return CohomologyClass::eta(n, index);
            }
            if (auto it = env.classes.find(e.name); it != env.classes.end()) return it->second;
            throw ScriptError(ScriptErrorKind::unbound_identifier, e.line, e.col,
                              "unbound identifier '" + e.name + "'", env.stmt_index);
        }
        case ClassExpr::Kind::add:
            return eval_class(e.kids[0], env) + eval_class(e.kids[1], env);
        case ClassExpr::Kind::sub:
            return eval_class(e.kids[0], env) - eval_class(e.kids[1], env);
        case ClassExpr::Kind::neg:
            return -eval_class(e.kids[0], env);
        case ClassExpr::Kind::mul:
            return mul(eval_class(e.kids[0], env), eval_class(e.kids[1], env), tp.ring);
        case ClassExpr::Kind::pow: {
            if (e.exponent < 0)
                throw ScriptError(ScriptErrorKind::runtime, e.line, e.col, "negative exponent", env.stmt_index);
            CohomologyClass base = eval_class(e.kids[0], env);
            CohomologyClass out = CohomologyClass::unit(n);
            for (int i = 0; i < e.exponent; ++i) out = mul(out, base, tp.ring);
            return out;
        }
        case ClassExpr::Kind::integrate_op:
            return integrate(eval_class(e.kids[0], env)) * CohomologyClass::unit(n);
    }
    throw ScriptError(ScriptErrorKind::runtime, e.line, e.col, "unreachable", env.stmt_index);
}

FormalBundle eval_bundle(const BundleExpr& e, Env& env) {
    const TwistorPresentation& tp = env.need_space(e.line, e.col);
    switch (e.kind) {
        case BundleExpr::Kind::named: {
            if (auto it = env.bundles.find(e.name); it != env.bundles.end()) return it->second;
            throw ScriptError(ScriptErrorKind::unbound_identifier, e.line, e.col,
                              "unbound bundle '" + e.name + "'", env.stmt_index);
        }
        case BundleExpr::Kind::trivial_line:
            return trivial_bundle(1, tp.n());
        case BundleExpr::Kind::end_of:
            return end_bundle(eval_bundle(*e.base, env), tp.ring);
        case BundleExpr::Kind::twist: {
            FormalBundle base = eval_bundle(*e.base, env);
            CohomologyClass l = eval_class(*e.twist_by, env);
            if (!l.homogeneous_of_degree(2))
                throw ScriptError(ScriptErrorKind::degree_mismatch, e.twist_by->line, e.twist_by->col,
                                  "twisting class must be homogeneous of degree 2, got " + render_class(l),
                                  env.stmt_index);
            return twist(base, l, tp.ring);
        }
    }
    throw ScriptError(ScriptErrorKind::runtime, e.line, e.col, "unreachable", env.stmt_index);
}

CohomologyClass homogeneous_part(const ClassExpr& src, Env& env, int degree, const char* label) {
    CohomologyClass value = eval_class(src, env);
    if (!value.homogeneous_of_degree(degree))
        throw ScriptError(ScriptErrorKind::degree_mismatch, src.line, src.col,
                          std::string(label) + " must be homogeneous of degree " + std::to_string(degree) +
                              ", got " + render_class(value),
                          env.stmt_index);
    return value;
}

struct Executor {
    Env env;
    ExecResult result;
    int line = 0;

    void emit(std::string text, nlohmann::json value) {
        result.outputs.push_back(ExecOutput{env.stmt_index, std::move(text), std::move(value)});
    }

    void operator()(const SpaceStmt& s) {
        std::vector<int> a = s.a;
        if (!s.has_a) a.assign(static_cast<size_t>(s.n), 1);  // all-ones default, A = n
        C2Mode mode = s.c2_mode.empty() ? C2Mode::paper : c2_mode_from_string(s.c2_mode);
        try {
            env.space = build_presentation(s.n, a, mode);
        } catch (const std::invalid_argument& err) {
            throw ScriptError(ScriptErrorKind::runtime, line, 1, err.what(), env.stmt_index);
        }
        env.classes.clear();
        env.bundles.clear();
    }

    void operator()(const LetStmt& s) { env.classes[s.name] = eval_class(s.expr, env); }

    void operator()(const BundleStmt& s) {
        CohomologyClass c1 = homogeneous_part(s.c1, env, 2, "c1");
        CohomologyClass c2 = homogeneous_part(s.c2, env, 4, "c2");
        const int n = env.need_space(line, 1).n();
        CohomologyClass c3 =
            s.c3 ? homogeneous_part(*s.c3, env, 6, "c3") : CohomologyClass(n);
        if (s.rank < 1)
            throw ScriptError(ScriptErrorKind::runtime, line, 1, "bundle rank must be positive",
                              env.stmt_index);
        env.bundles[s.name] = make_bundle(s.rank, std::move(c1), std::move(c2), std::move(c3));
    }

    void operator()(const PrintStmt& s) {
        CohomologyClass value = eval_class(s.expr, env);
        emit(render_class(value), nlohmann::json{{"type", "print"}, {"value", render_class(value)}});
    }

    void operator()(const ChiStmt& s) {
        FormalBundle b = eval_bundle(s.bundle, env);
        EulerChar chi = euler_characteristic(b, *env.space);
        emit("chi = " + chi.chi.to_string(),
             nlohmann::json{{"type", "chi"}, {"chi", rational_json(chi.chi)}, {"integral", chi.integral}});
    }

    void operator()(const DimStmt& s) {
        const TwistorPresentation& tp = env.need_space(line, 1);
        FormalBundle b = eval_bundle(s.bundle, env);
        FormalBundle twisted = twist(end_bundle(b, tp.ring), -tp.S, tp.ring);
        EulerChar chi = euler_characteristic(twisted, tp);
        if (!chi.integral)
            throw ScriptError(ScriptErrorKind::formal_data, line, 1,
                              "moduli dimension is not an integer: chi = " + chi.chi.to_string(),
                              env.stmt_index);
        long long dim = (-chi.chi).to_int64();
        emit("dim = " + std::to_string(dim),
             nlohmann::json{{"type", "dim"},
                            {"dimension", dim},
                            {"chi", rational_json(chi.chi)},
                            {"integral", true},
                            {"real_dimension", 2 * dim}});
    }

    void operator()(const AssertStmt& s) {
        CohomologyClass lhs = eval_class(s.lhs, env);
        CohomologyClass rhs = eval_class(s.rhs, env);
        if (lhs != rhs)
            throw ScriptError(ScriptErrorKind::assertion_failed, line, 1,
                              "assertion failed: lhs = " + render_class(lhs) +
                                  ", rhs = " + render_class(rhs),
                              env.stmt_index);
    }

    void operator()(const VerifyStmt& s) {
        const TwistorPresentation& tp = env.need_space(line, 1);
        bool pass = true;
        nlohmann::json detail;
        if (s.target == "canonical") {
            pass = canonical_class_check(tp);
        } else if (s.target == "identities") {
            VerificationReport report = verify_identities(tp);
            pass = report.pass;
            detail = report.to_json(false);
        } else {  // lemma2.5 against the active space
            for (int r = 1; r <= 3 && pass; ++r) {
                for (long long k = -3; k <= 6 && pass; ++k) {
                    InstantonData d{r, std::vector<long long>(static_cast<size_t>(tp.n()), 0), k, tp};
                    pass = lemma25_difference(d, Route::standard).is_zero() &&
                           lemma25_difference(d, Route::paper).is_zero();
                    if (!pass) detail = nlohmann::json{{"r", r}, {"k", k}};
                }
            }
        }
        if (!pass) result.verification_failed = true;
        emit("verify " + s.target + ": " + (pass ? "pass" : "fail"),
             nlohmann::json{{"type", "verify"}, {"target", s.target}, {"pass", pass}, {"detail", detail}});
    }

    void operator()(const SweepStmt& s) {
        SweepConfig config;
        config.n_max = 3;
        for (const auto& [name, bound] : s.bounds) {
            if (name == "n") config.n_max = static_cast<int>(bound);
            if (name == "r") config.r_max = static_cast<int>(bound);
            if (name == "k") config.k_max = bound;
        }
        if (s.target == "identities") {
            config.route_standard = true;
            config.route_paper = false;
            config.check_transcription = false;
        }
        VerificationReport report = sweep(config);
        if (!report.pass) result.verification_failed = true;
        emit("sweep verify " + s.target + ": " + (report.pass ? "pass" : "fail") + " (" +
                 std::to_string(report.cases.size()) + " cases)",
             nlohmann::json{{"type", "sweep"},
                            {"target", s.target},
                            {"pass", report.pass},
                            {"report", report.to_json(false)}});
    }
};

}  // namespace

ExecResult execute(const Script& script) {
    Executor exec;
    for (size_t i = 0; i < script.statements.size(); ++i) {
        exec.env.stmt_index = static_cast<int>(i);
        exec.line = script.statements[i].line;
        try {
            std::visit(exec, script.statements[i].body);
        } catch (ScriptError&) {
            throw;
        } catch (const std::exception& err) {
            throw ScriptError(ScriptErrorKind::runtime, script.statements[i].line, 1, err.what(),
                              static_cast<int>(i));
        }
    }
    return exec.result;
}

}  // namespace twistor::dsl
