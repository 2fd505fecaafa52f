#include "twistor/dsl.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace twistor;
using namespace twistor::dsl;

namespace {

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

ExecResult run(const std::string& text) { return execute(parse(text)); }

}  // namespace

TEST_CASE("parse: the three-statement example") {
    Script s = parse("space n=0\nbundle V rank=2 c1=0 c2=1*F\ndim V\n");
    REQUIRE(s.statements.size() == 3);
    CHECK(std::holds_alternative<SpaceStmt>(s.statements[0].body));
    CHECK(std::holds_alternative<BundleStmt>(s.statements[1].body));
    CHECK(std::holds_alternative<DimStmt>(s.statements[2].body));
    CHECK(std::get<SpaceStmt>(s.statements[0].body).n == 0);
    CHECK(std::get<BundleStmt>(s.statements[1].body).rank == 2);
}

TEST_CASE("parse: comments, blank lines, positions") {
    Script s = parse("# heading\n\nspace n=1 a=[1] # trailing\n  print w\n");
    REQUIRE(s.statements.size() == 2);
    CHECK(s.statements[0].line == 3);
    CHECK(s.statements[1].line == 4);
}

TEST_CASE("parse errors are positioned and typed") {
    try {
        parse("space n=1\nlet x = $\n");
        FAIL("expected a lexical error");
    } catch (const ScriptError& e) {
        CHECK(e.kind == ScriptErrorKind::lexical);
        CHECK(e.line == 2);
    }
    try {
        parse("space x=1\n");
        FAIL("expected a syntax error");
    } catch (const ScriptError& e) {
        CHECK(e.kind == ScriptErrorKind::syntax);
        CHECK(e.line == 1);
    }
    CHECK_THROWS_AS(parse("verify bogus\n"), ScriptError);
    CHECK_THROWS_AS(parse("sweep q<=3 verify lemma2.5\n"), ScriptError);
    CHECK_THROWS_AS(parse("bundle V rank=2 c1=0\n"), ScriptError);  // missing c2
    // out-of-range literals are syntax errors, not silent truncations
    CHECK_THROWS_AS(parse("space n=99999999999\n"), ScriptError);
    CHECK_THROWS_AS(parse("space n=1\nbundle V rank=0 c1=0 c2=0\n"), ScriptError);
    CHECK_THROWS_AS(parse("space n=1\nbundle V rank=999999 c1=0 c2=0\n"), ScriptError);
    CHECK_THROWS_AS(parse("space n=1\nprint w^9999\n"), ScriptError);
}

TEST_CASE("parsing never executes: semantic errors surface at execute time") {
    // e2 does not exist when n=1, but the script parses fine
    Script s = parse("space n=1 a=[1]\nlet s = e1 + e2\n");
    REQUIRE(s.statements.size() == 2);
    try {
        execute(s);
        FAIL("expected an unbound-identifier error");
    } catch (const ScriptError& e) {
        CHECK(e.kind == ScriptErrorKind::unbound_identifier);
        CHECK(e.statement_index == 1);
        CHECK(std::string(e.what()).find("e2") != std::string::npos);
    }
}

TEST_CASE("execute: ring evaluation through the script surface") {
    ExecResult r = run("space n=1 a=[1]\nprint integrate(w^2 * e1)\n");
    REQUIRE(r.outputs.size() == 1);
    CHECK(r.outputs[0].text == "1");

    ExecResult r2 = run("space n=2 a=[1,0]\nlet d = sigma - sigmabar\nprint w^2 * d\n");
    REQUIRE(r2.outputs.size() == 1);
    CHECK(r2.outputs[0].text == "0");  // integrates to 2A-n = 0 here

    ExecResult r3 = run("space n=3 a=[1,1,1]\nprint integrate(w^2 * (sigma - sigmabar))\n");
    CHECK(r3.outputs[0].text == "3");
}

TEST_CASE("execute: assertions pass and fail with normal forms") {
    CHECK_NOTHROW(run("space n=3 a=[1,0,1]\nassert 2*S + 2*Sbar == c1P\n"));
    CHECK_NOTHROW(run("space n=2 a=[1,1]\nassert S*Sbar == F\n"));
    try {
        run("space n=1 a=[1]\nassert w == 2*w\n");
        FAIL("expected assertion failure");
    } catch (const ScriptError& e) {
        CHECK(e.kind == ScriptErrorKind::assertion_failed);
        CHECK(std::string(e.what()).find("1*w") != std::string::npos);
        CHECK(std::string(e.what()).find("2*w") != std::string::npos);
    }
}

TEST_CASE("execute: chi, dim and the End(V)(-S) sugar") {
    ExecResult r = run(
        "space n=0\n"
        "bundle V rank=2 c1=0 c2=1*F\n"
        "chi End(V)(-S)\n"
        "dim V\n");
    REQUIRE(r.outputs.size() == 2);
    CHECK(r.outputs[0].text == "chi = -4");
    CHECK(r.outputs[1].text == "dim = 4");
    CHECK(r.outputs[1].value["real_dimension"] == 8);

    // chi O(-S) = 0 on the n=0 space
    ExecResult r2 = run("space n=0\nchi O(-S)\n");
    CHECK(r2.outputs[0].text == "chi = 0");

    // the sugar really is twist(end_bundle(V), -S)
    TwistorPresentation tp = build_presentation(0, {}, C2Mode::paper);
    InstantonData d{2, {}, 1, tp};
    Rational direct = chi_standard_route(d, Divisor::S);
    CHECK(r.outputs[0].value["chi"] == rational_json(direct));
}

TEST_CASE("execute: degree mismatch and missing space are typed errors") {
    try {
        run("space n=1 a=[1]\nbundle V rank=2 c1=F c2=1*F\n");
        FAIL("expected degree mismatch");
    } catch (const ScriptError& e) {
        CHECK(e.kind == ScriptErrorKind::degree_mismatch);
        CHECK(e.statement_index == 1);
    }
    try {
        run("print w\n");
        FAIL("expected no-active-space");
    } catch (const ScriptError& e) {
        CHECK(e.kind == ScriptErrorKind::no_active_space);
        CHECK(e.statement_index == 0);
    }
    try {
        run("space n=0\nchi End(V)(-S)\n");
        FAIL("expected unbound bundle");
    } catch (const ScriptError& e) {
        CHECK(e.kind == ScriptErrorKind::unbound_identifier);
    }
}

TEST_CASE("execute: verify and sweep statements") {
    ExecResult ok = run("space n=2 a=[1,0]\nverify canonical\nverify identities\nverify lemma2.5\n");
    CHECK_FALSE(ok.verification_failed);
    REQUIRE(ok.outputs.size() == 3);
    CHECK(ok.outputs[0].text == "verify canonical: pass");
    CHECK(ok.outputs[1].text == "verify identities: pass");
    CHECK(ok.outputs[2].text == "verify lemma2.5: pass");

    ExecResult swept = run("sweep n<=1 r<=2 k<=2 verify lemma2.5\n");
    CHECK_FALSE(swept.verification_failed);
    CHECK(swept.outputs[0].value["pass"] == true);
}

TEST_CASE("a space statement opens a fresh scope") {
    try {
        run("space n=1 a=[1]\nlet x = w\nspace n=2 a=[1,0]\nprint x\n");
        FAIL("expected unbound identifier after scope reset");
    } catch (const ScriptError& e) {
        CHECK(e.kind == ScriptErrorKind::unbound_identifier);
        CHECK(e.statement_index == 3);
    }
    // defaults: a omitted means all ones, c2 omitted means paper mode
    ExecResult r = run("space n=2\nassert sigma == eta\n");
    CHECK(r.outputs.empty());
}

TEST_CASE("print/parse round trip is the identity on ASTs") {
    const char* samples[] = {
        "space n=2 a=[1,0] c2=normalized\n",
        "let x = 2*w + 3*e1 - (w + e2)^2\n",
        "print integrate(w^2*e1 + 4*F*S)\n",
        "bundle V rank=3 c1=e1 - e2 c2=2*F c3=0\n",
        "chi End(V)(-S)\n",
        "dim V(-S)(-Sbar)\n",
        "assert 2*S + 2*Sbar == c1P\n",
        "sweep n<=4 r<=3 k<=5 verify lemma2.5\n",
        "verify canonical\n",
        "let y = -w - (-3)\n",
    };
    for (const char* text : samples) {
        Script first = parse(text);
        std::string printed = print(first);
        Script second = parse(printed);
        CHECK(first == second);
        CHECK(print(second) == printed);
    }
}

TEST_CASE("committed script corpus: parse, print, reparse, execute") {
    const char* dir = std::getenv("TWISTOR_SCRIPTS");
    REQUIRE_MESSAGE(dir != nullptr, "TWISTOR_SCRIPTS must point at tests/scripts");
    std::vector<std::filesystem::path> scripts;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.path().extension() == ".tws") scripts.push_back(entry.path());
    CHECK(scripts.size() >= 20);
    std::sort(scripts.begin(), scripts.end());
    for (const auto& path : scripts) {
        INFO("script: ", path.string());
        std::string text = slurp(path);
        Script ast = parse(text);
        Script reparsed = parse(print(ast));
        CHECK(ast == reparsed);
        CHECK(print(reparsed) == print(ast));
        // every committed script must also execute cleanly
        ExecResult result = execute(ast);
        CHECK_FALSE(result.verification_failed);
    }
}
