#pragma once

#include "twistor/instanton.hpp"

#include <map>
#include <memory>
#include <optional>
#include <variant>

namespace twistor::dsl {

enum class ScriptErrorKind {
    lexical,
    syntax,
    unbound_identifier,
    degree_mismatch,
    no_active_space,
    assertion_failed,
    formal_data,
    runtime,
};

std::string error_code(ScriptErrorKind kind);

/// Carries a machine-readable kind, the 1-based source position and (when
/// raised during execution) the statement index.
struct ScriptError : std::runtime_error {
    ScriptErrorKind kind;
    int line;
    int col;
    int statement_index;  // -1 outside execution

    ScriptError(ScriptErrorKind k, int line_, int col_, const std::string& message, int stmt = -1)
        : std::runtime_error("[" + error_code(k) + "] line " + std::to_string(line_) + ":" +
                             std::to_string(col_) + ": " + message),
          kind(k),
          line(line_),
          col(col_),
          statement_index(stmt) {}
};

struct ClassExpr {
    enum class Kind { number, name, add, sub, neg, mul, pow, integrate_op };
    Kind kind = Kind::number;
    long long number = 0;          // Kind::number
    std::string name;              // Kind::name
    int exponent = 1;              // Kind::pow
    std::vector<ClassExpr> kids;   // operands
    int line = 0, col = 0;

    friend bool operator==(const ClassExpr& a, const ClassExpr& b);
    friend bool operator!=(const ClassExpr& a, const ClassExpr& b) { return !(a == b); }
};

struct BundleExpr {
    enum class Kind { named, trivial_line, end_of, twist };
    Kind kind = Kind::named;
    std::string name;                         // named
    std::shared_ptr<const BundleExpr> base;   // end_of, twist
    std::optional<ClassExpr> twist_by;        // twist
    int line = 0, col = 0;

    friend bool operator==(const BundleExpr& a, const BundleExpr& b);
    friend bool operator!=(const BundleExpr& a, const BundleExpr& b) { return !(a == b); }
};

struct SpaceStmt {
    int n = 0;
    std::vector<int> a;
    bool has_a = false;
    std::string c2_mode;  // empty when omitted
    friend bool operator==(const SpaceStmt&, const SpaceStmt&) = default;
};
struct LetStmt {
    std::string name;
    ClassExpr expr;
    friend bool operator==(const LetStmt&, const LetStmt&) = default;
};
struct BundleStmt {
    std::string name;
    int rank = 1;
    ClassExpr c1, c2;
    std::optional<ClassExpr> c3;
    friend bool operator==(const BundleStmt&, const BundleStmt&) = default;
};
struct PrintStmt {
    ClassExpr expr;
    friend bool operator==(const PrintStmt&, const PrintStmt&) = default;
};
struct ChiStmt {
    BundleExpr bundle;
    friend bool operator==(const ChiStmt&, const ChiStmt&) = default;
};
struct DimStmt {
    BundleExpr bundle;
    friend bool operator==(const DimStmt&, const DimStmt&) = default;
};
struct AssertStmt {
    ClassExpr lhs, rhs;
    friend bool operator==(const AssertStmt&, const AssertStmt&) = default;
};
struct VerifyStmt {
    std::string target;  // canonical | identities | lemma2.5
    friend bool operator==(const VerifyStmt&, const VerifyStmt&) = default;
};
struct SweepStmt {
    std::vector<std::pair<std::string, long long>> bounds;  // n/r/k <= value, source order
    std::string target;                                     // lemma2.5
    friend bool operator==(const SweepStmt&, const SweepStmt&) = default;
};

using StatementBody =
    std::variant<SpaceStmt, LetStmt, BundleStmt, PrintStmt, ChiStmt, DimStmt, AssertStmt, VerifyStmt, SweepStmt>;

struct Statement {
    StatementBody body;
    int line = 0;
    friend bool operator==(const Statement& a, const Statement& b) { return a.body == b.body; }
};

struct Script {
    std::vector<Statement> statements;
    friend bool operator==(const Script& a, const Script& b) { return a.statements == b.statements; }
};

/// Text -> AST. Reports lexical and syntax errors with positions; never
/// resolves names or touches any space.
Script parse(const std::string& text);

/// AST -> canonical source text. print(parse(t)) reparses to an identical AST.
std::string print(const Script& script);
std::string print(const ClassExpr& expr);
std::string print(const BundleExpr& expr);

struct ExecOutput {
    int statement_index;
    std::string text;
    nlohmann::json value;
};

struct ExecResult {
    std::vector<ExecOutput> outputs;
    bool verification_failed = false;  // some verify/sweep statement failed
};

/// Runs the script in order. Semantic errors (unbound identifiers, degree
/// mismatches, missing space) and failed assertions throw ScriptError with
/// the offending statement index; failed verifications are recorded in the
/// result instead.
ExecResult execute(const Script& script);

}  // namespace twistor::dsl
