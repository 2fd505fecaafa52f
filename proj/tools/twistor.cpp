#include "twistor/dsl.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace twistor;

constexpr int kExitVerificationFailed = 1;
constexpr int kExitUsage = 2;

std::vector<int> parse_int_list(const std::string& text, const char* flag) {
    std::vector<int> out;
    if (text.empty()) return out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            out.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw CLI::ValidationError(std::string(flag) + ": '" + item + "' is not an integer");
        }
    }
    return out;
}

struct SpaceArgs {
    int n = 0;
    std::string a_text;
    bool a_given = false;
    std::string c2_mode = "paper";
    int euler_override = 0;
    int sign_override = 0;
    bool has_euler_override = false;
    bool has_sign_override = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--n", n, "number of eta generators (n=0 means S^4)")->check(CLI::NonNegativeNumber);
        cmd->add_option("--a", a_text, "a-vector as comma list of 0/1, e.g. 1,0,1 (default: all ones)")
            ->each([this](const std::string&) { a_given = true; });
        cmd->add_option("--c2-mode", c2_mode, "c2(P) convention: paper | normalized")
            ->check(CLI::IsMember({"paper", "normalized"}));
        cmd->add_option("--e", euler_override, "expert: override e(M)")
            ->each([this](const std::string&) { has_euler_override = true; });
        cmd->add_option("--sgn", sign_override, "expert: override sgn(M)")
            ->each([this](const std::string&) { has_sign_override = true; });
    }

    TwistorPresentation build() const {
        std::vector<int> a;
        if (a_given)
            a = parse_int_list(a_text, "--a");
        else
            a.assign(static_cast<size_t>(n), 1);
        std::optional<EulerSignature> override_es;
        if (has_euler_override || has_sign_override) {
            EulerSignature es = euler_and_signature(n);
            if (has_euler_override) es.euler = euler_override;
            if (has_sign_override) es.signature = sign_override;
            override_es = es;
        }
        try {
            return build_presentation(n, a, c2_mode_from_string(c2_mode), override_es);
        } catch (const std::invalid_argument& e) {
            throw CLI::ValidationError("--n/--a: " + std::string(e.what()));
        }
    }
};

struct BundleArgs {
    int rank = 1;
    std::string c1_text;
    long long k = 0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--rank", rank, "bundle rank")->check(CLI::PositiveNumber);
        cmd->add_option("--c1", c1_text, "b-vector of c1(V) = sum b_i e_i as comma list (default: zero)");
        cmd->add_option("--k", k, "c2(V) = k [F]");
    }

    InstantonData build(const TwistorPresentation& tp) const {
        std::vector<long long> b;
        for (int v : parse_int_list(c1_text, "--c1")) b.push_back(v);
        if (!b.empty() && b.size() != static_cast<size_t>(tp.n()))
            throw CLI::ValidationError("--c1: expected " + std::to_string(tp.n()) +
                                       " entries (one per eta generator), got " +
                                       std::to_string(b.size()));
        b.resize(static_cast<size_t>(tp.n()), 0);
        return InstantonData{rank, std::move(b), k, tp};
    }
};

nlohmann::json with_schema(nlohmann::json body) {
    body["schema"] = 1;
    return body;
}

int run_eval(const std::string& path, bool json_out) {
    std::string text;
    if (path == "-") {
        std::stringstream buffer;
        buffer << std::cin.rdbuf();
        text = buffer.str();
    } else {
        std::ifstream in(path);
        if (!in) {
            std::cerr << "eval: cannot open script '" << path << "'\n";
            return kExitUsage;
        }
        std::stringstream buffer;
        buffer << in.rdbuf();
        text = buffer.str();
    }
    dsl::Script script = dsl::parse(text);
    dsl::ExecResult result = dsl::execute(script);
    if (json_out) {
        nlohmann::json outputs = nlohmann::json::array();
        for (const auto& out : result.outputs)
            outputs.push_back(nlohmann::json{
                {"statement", out.statement_index}, {"text", out.text}, {"value", out.value}});
        std::cout << with_schema({{"outputs", outputs},
                                  {"verification_failed", result.verification_failed}})
                         .dump(2)
                  << "\n";
    } else {
        for (const auto& out : result.outputs) std::cout << out.text << "\n";
    }
    return result.verification_failed ? kExitVerificationFailed : 0;
}

int run_dim(const SpaceArgs& space, const BundleArgs& bundle, bool json_out) {
    TwistorPresentation tp = space.build();
    InstantonData d = bundle.build(tp);
    DimensionReport report = moduli_dimension(d);
    if (json_out) {
        std::cout << with_schema({{"space", tp.to_json()},
                                  {"bundle", {{"rank", d.r}, {"b", d.b}, {"k", d.k}}},
                                  {"dimension", report.dimension},
                                  {"chi", rational_json(report.chi)},
                                  {"integral", report.integral},
                                  {"real_dimension", report.real_dimension}})
                         .dump(2)
                  << "\n";
    } else {
        std::cout << "dimension: " << report.dimension << "\n";
        std::cout << "chi(End V(-S)): " << report.chi << "\n";
        std::cout << "real dimension: " << report.real_dimension << "\n";
        if (report.dimension < 0)
            std::cout << "note: negative dimension; the smoothness interpretation needs the "
                         "vanishing hypotheses\n";
    }
    return 0;
}

int run_chi(const SpaceArgs& space, const BundleArgs& bundle, const std::string& route, bool json_out) {
    TwistorPresentation tp = space.build();
    InstantonData d = bundle.build(tp);
    FormalBundle v = pullback_bundle(d);
    EulerChar chi_v = euler_characteristic(v, tp);

    TwistorPresentation paper_tp = build_presentation(tp.n(), tp.a, C2Mode::paper);
    TwistorPresentation norm_tp = build_presentation(tp.n(), tp.a, C2Mode::normalized);
    Rational chi_o_paper = euler_characteristic(trivial_bundle(1, tp.n()), paper_tp).chi;
    Rational chi_o_norm = euler_characteristic(trivial_bundle(1, tp.n()), norm_tp).chi;

    nlohmann::json body{{"space", tp.to_json()},
                        {"bundle", {{"rank", d.r}, {"b", d.b}, {"k", d.k}}},
                        {"chi_V", rational_json(chi_v.chi)},
                        {"chi_V_integral", chi_v.integral},
                        {"chi_O_P", {{"paper", rational_json(chi_o_paper)},
                                     {"normalized", rational_json(chi_o_norm)}}}};
    if (route == "standard" || route == "both") {
        body["chi_EndV_minus_S"]["standard"] = rational_json(chi_standard_route(d, Divisor::S));
        body["chi_EndV_minus_Sbar"]["standard"] = rational_json(chi_standard_route(d, Divisor::Sbar));
    }
    if (route == "paper" || route == "both") {
        body["chi_EndV_minus_S"]["paper"] = rational_json(chi_paper_route(d, Divisor::S));
        body["chi_EndV_minus_Sbar"]["paper"] = rational_json(chi_paper_route(d, Divisor::Sbar));
    }
    if (json_out) {
        std::cout << with_schema(body).dump(2) << "\n";
    } else {
        std::cout << "chi(V): " << chi_v.chi << "\n";
        std::cout << "chi(O_P): paper mode " << chi_o_paper << ", normalized mode " << chi_o_norm << "\n";
        if (body.contains("chi_EndV_minus_S")) {
            for (auto& [route_name, value] : body["chi_EndV_minus_S"].items())
                std::cout << "chi(End V(-S)) " << route_name << " route: "
                          << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
            for (auto& [route_name, value] : body["chi_EndV_minus_Sbar"].items())
                std::cout << "chi(End V(-Sbar)) " << route_name << " route: "
                          << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
        }
    }
    return 0;
}

SweepConfig make_sweep_config(int n_max, int r_max, long long k_max, const std::string& route,
                              bool corrupt) {
    SweepConfig config;
    config.n_max = n_max;
    config.r_max = r_max;
    config.k_max = k_max;
    config.route_standard = route == "standard" || route == "both";
    config.route_paper = route == "paper" || route == "both";
    config.corrupt = corrupt;
    return config;
}

void print_report_text(const VerificationReport& report, const std::string& label) {
    std::cout << label << ": " << (report.pass ? "pass" : "FAIL") << " (" << report.cases.size()
              << " cases)\n";
    if (!report.pass) {
        for (const auto& ce : report.counterexamples)
            std::cout << "counterexample: " << ce.dump() << "\n";
    }
}

int run_verify(const std::string& lemma, const std::string& identity, int n_max, int r_max,
               long long k_max, const std::string& route, bool corrupt, bool json_out) {
    if (lemma.empty() && identity.empty())
        throw CLI::ValidationError("verify: give --lemma 2.5 or --identity canonical|proof|all");

    bool pass = true;
    nlohmann::json body;
    std::vector<VerificationReport> reports;

    if (!lemma.empty()) {
        if (lemma != "2.5") throw CLI::ValidationError("verify: the only supported lemma is 2.5");
        SweepConfig config = make_sweep_config(n_max, r_max, k_max, route, corrupt);
        VerificationReport report = sweep(config);
        pass = pass && report.pass;
        body["lemma_2_5"] = report.to_json(false);
        if (!json_out) print_report_text(report, "lemma 2.5 sweep");
    }
    if (identity == "canonical" || identity == "all") {
        VerificationReport report;
        report.config = nlohmann::json{{"check", "canonical class"}, {"n_max", n_max}};
        for (int n = 0; n <= n_max; ++n) {
            for (unsigned mask = 0; mask < (1u << n); ++mask) {
                std::vector<int> a(static_cast<size_t>(n));
                for (int i = 0; i < n; ++i) a[static_cast<size_t>(i)] = (mask >> i) & 1u;
                TwistorPresentation tp = build_presentation(n, a, C2Mode::paper);
                if (corrupt) tp.c1P = Rational(4) * tp.omega;  // tampered fixture
                SweepCase c;
                c.params = nlohmann::json{{"space", tp.to_json()}};
                c.pass = canonical_class_check(tp);
                c.values = nlohmann::json{{"c1P_equals_2S_plus_2Sbar", c.pass}};
                if (!c.pass) {
                    report.pass = false;
                    report.counterexamples.push_back(c.params);
                }
                report.cases.push_back(std::move(c));
            }
        }
        pass = pass && report.pass;
        body["canonical"] = report.to_json(false);
        if (!json_out) print_report_text(report, "canonical class identity");
    }
    if (identity == "proof" || identity == "all") {
        VerificationReport merged;
        merged.config = nlohmann::json{{"check", "lemma 2.5 proof identities"}, {"n_max", n_max}};
        for (int n = 0; n <= n_max; ++n) {
            for (unsigned mask = 0; mask < (1u << n); ++mask) {
                std::vector<int> a(static_cast<size_t>(n));
                for (int i = 0; i < n; ++i) a[static_cast<size_t>(i)] = (mask >> i) & 1u;
                TwistorPresentation tp = build_presentation(n, a, C2Mode::paper);
                if (corrupt) tp.ring.corrupt_eta_rule = true;
                VerificationReport report = verify_identities(tp);
                merged.pass = merged.pass && report.pass;
                for (auto& c : report.cases) {
                    if (!c.pass && merged.counterexamples.size() < 10)
                        merged.counterexamples.push_back(c.params);
                    merged.cases.push_back(std::move(c));
                }
            }
        }
        pass = pass && merged.pass;
        body["proof_identities"] = merged.to_json(false);
        if (!json_out) print_report_text(merged, "proof identity suite");
    }
    if (!identity.empty() && identity != "canonical" && identity != "proof" && identity != "all")
        throw CLI::ValidationError("verify: unknown identity '" + identity + "'");

    body["pass"] = pass;
    if (json_out) std::cout << with_schema(body).dump(2) << "\n";
    return pass ? 0 : kExitVerificationFailed;
}

int run_sweep(int n_max, int r_max, long long k_min, long long k_max, const std::string& route,
              int b_samples, bool corrupt, bool include_cases, bool json_out) {
    SweepConfig config = make_sweep_config(n_max, r_max, k_max, route, corrupt);
    config.k_min = k_min;
    config.extra_b_samples = b_samples;
    VerificationReport report = sweep(config);
    if (json_out)
        std::cout << with_schema(report.to_json(include_cases)).dump(2) << "\n";
    else
        print_report_text(report, "sweep");
    return report.pass ? 0 : kExitVerificationFailed;
}

int run_table(const SpaceArgs& space, const BundleArgs& bundle, const std::vector<std::string>& vary,
              long long from, long long to, bool json_out) {
    if (vary.size() != 1)
        throw CLI::ValidationError("table: exactly one --vary parameter is required");
    const std::string& parameter = vary.front();
    if (parameter != "k" && parameter != "r" && parameter != "n")
        throw CLI::ValidationError("table: --vary must be one of k, r, n");
    if (from > to) throw CLI::ValidationError("table: --from must not exceed --to");
    if (parameter == "n" && (space.a_given || !bundle.c1_text.empty()))
        throw CLI::ValidationError("table: varying n fixes a to all-ones and c1 to zero");

    nlohmann::json rows = nlohmann::json::array();
    std::vector<std::string> lines;
    for (long long value = from; value <= to; ++value) {
        SpaceArgs sp = space;
        BundleArgs bd = bundle;
        if (parameter == "k") bd.k = value;
        if (parameter == "r") bd.rank = static_cast<int>(value);
        if (parameter == "n") sp.n = static_cast<int>(value);
        TwistorPresentation tp = sp.build();
        InstantonData d = bd.build(tp);
        Rational chi = chi_standard_route(d, Divisor::S);
        Rational chi_o = euler_characteristic(trivial_bundle(1, tp.n()), tp).chi;
        bool integral = chi.is_integer();
        nlohmann::json row{{"space", tp.to_json()},
                           {"r", d.r},
                           {"b", d.b},
                           {"k", d.k},
                           {"chi", rational_json(chi)},
                           {"integral", integral},
                           {"chi_O_P", rational_json(chi_o)}};
        std::string dim_text = "-";
        if (integral) {
            long long dim = (-chi).to_int64();
            row["dim"] = dim;
            row["real_dim"] = 2 * dim;
            dim_text = std::to_string(dim);
        } else {
            row["dim"] = nullptr;
            row["real_dim"] = nullptr;
        }
        rows.push_back(std::move(row));
        lines.push_back(std::to_string(tp.n()) + "," + std::to_string(d.r) + "," + std::to_string(d.k) +
                        "," + dim_text + "," + chi.to_string() + "," +
                        (integral ? std::to_string(-2 * chi.to_int64()) : "-") + "," + chi_o.to_string());
    }
    if (json_out) {
        std::cout << with_schema({{"vary", parameter}, {"from", from}, {"to", to}, {"rows", rows}}).dump(2)
                  << "\n";
    } else {
        std::cout << "n,r,k,dim,chi,real_dim,chi_O_P\n";
        for (const auto& line : lines) std::cout << line << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"symbolic intersection theory on compact twistor spaces"};
    app.require_subcommand(1);

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "run a .tws script");
    std::string script_path;
    bool eval_json = false;
    eval_cmd->add_option("script", script_path, "script path ('-' for stdin)")->required();
    eval_cmd->add_flag("--json", eval_json, "JSON output");

    // dim
    auto* dim_cmd = app.add_subcommand("dim", "framed moduli dimension -chi(End V(-S))");
    SpaceArgs dim_space;
    BundleArgs dim_bundle;
    bool dim_json = false;
    dim_space.attach(dim_cmd);
    dim_bundle.attach(dim_cmd);
    dim_cmd->add_flag("--json", dim_json, "JSON output");

    // chi
    auto* chi_cmd = app.add_subcommand("chi", "Euler characteristics of the pullback bundle");
    SpaceArgs chi_space;
    BundleArgs chi_bundle;
    bool chi_json = false;
    std::string chi_route = "both";
    chi_space.attach(chi_cmd);
    chi_bundle.attach(chi_cmd);
    chi_cmd->add_option("--route", chi_route, "standard | paper | both")
        ->check(CLI::IsMember({"standard", "paper", "both"}));
    chi_cmd->add_flag("--json", chi_json, "JSON output");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "verify identities and lemma sweeps");
    std::string lemma, identity, verify_route = "both";
    int verify_n_max = 5, verify_r_max = 3;
    long long verify_k_max = 6;
    bool verify_corrupt = false, verify_json = false;
    verify_cmd->add_option("--lemma", lemma, "lemma to verify (2.5)");
    verify_cmd->add_option("--identity", identity, "canonical | proof | all");
    verify_cmd->add_option("--n-max", verify_n_max, "sweep bound for n")->check(CLI::NonNegativeNumber);
    verify_cmd->add_option("--r-max", verify_r_max, "sweep bound for r")->check(CLI::PositiveNumber);
    verify_cmd->add_option("--k-max", verify_k_max, "sweep bound for k");
    verify_cmd->add_option("--route", verify_route, "standard | paper | both")
        ->check(CLI::IsMember({"standard", "paper", "both"}));
    verify_cmd->add_flag("--corrupt", verify_corrupt,
                         "negative-control self-test: flip the sign of the e_i^2 rewrite rule");
    verify_cmd->add_flag("--json", verify_json, "JSON output");

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "full verification sweep with report");
    int sweep_n_max = 5, sweep_r_max = 3, sweep_b_samples = 1;
    long long sweep_k_min = -3, sweep_k_max = 6;
    std::string sweep_route = "both";
    bool sweep_corrupt = false, sweep_json = false, sweep_cases = false;
    sweep_cmd->add_option("--n-max", sweep_n_max, "sweep bound for n")->check(CLI::NonNegativeNumber);
    sweep_cmd->add_option("--r-max", sweep_r_max, "sweep bound for r")->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--k-min", sweep_k_min, "lower bound for k");
    sweep_cmd->add_option("--k-max", sweep_k_max, "upper bound for k");
    sweep_cmd->add_option("--b-samples", sweep_b_samples, "extra sampled b-vectors per grid point")
        ->check(CLI::NonNegativeNumber);
    sweep_cmd->add_option("--route", sweep_route, "standard | paper | both")
        ->check(CLI::IsMember({"standard", "paper", "both"}));
    sweep_cmd->add_flag("--corrupt", sweep_corrupt,
                        "negative-control self-test: flip the sign of the e_i^2 rewrite rule");
    sweep_cmd->add_flag("--cases", sweep_cases, "include every case in the JSON report");
    sweep_cmd->add_flag("--json", sweep_json, "JSON output");

    // table
    auto* table_cmd = app.add_subcommand("table", "tabulate dimensions over one varying parameter");
    SpaceArgs table_space;
    BundleArgs table_bundle;
    std::vector<std::string> table_vary;
    long long table_from = 0, table_to = 10;
    bool table_json = false;
    table_space.attach(table_cmd);
    table_bundle.attach(table_cmd);
    table_cmd->add_option("--vary", table_vary, "parameter to vary: k | r | n");
    table_cmd->add_option("--from", table_from, "first value");
    table_cmd->add_option("--to", table_to, "last value");
    table_cmd->add_flag("--json", table_json, "JSON output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (eval_cmd->parsed()) return run_eval(script_path, eval_json);
        if (dim_cmd->parsed()) return run_dim(dim_space, dim_bundle, dim_json);
        if (chi_cmd->parsed()) return run_chi(chi_space, chi_bundle, chi_route, chi_json);
        if (verify_cmd->parsed())
            return run_verify(lemma, identity, verify_n_max, verify_r_max, verify_k_max, verify_route,
                              verify_corrupt, verify_json);
        if (sweep_cmd->parsed())
            return run_sweep(sweep_n_max, sweep_r_max, sweep_k_min, sweep_k_max, sweep_route,
                             sweep_b_samples, sweep_corrupt, sweep_cases, sweep_json);
        if (table_cmd->parsed())
            return run_table(table_space, table_bundle, table_vary, table_from, table_to, table_json);
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const twistor::dsl::ScriptError& e) {
        std::cerr << e.what() << "\n";
        return e.kind == twistor::dsl::ScriptErrorKind::assertion_failed ? kExitVerificationFailed
                                                                         : kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return 0;
}
