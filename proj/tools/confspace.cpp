// Command-line scenario runner.
//
//   confspace check <scenario> [--suite S] [--quad-order N] [--tol X]
//                              [--format text|json] [--out PATH] [--timing]
//   confspace validate <scenario>
//   confspace list-fixtures
//
// Exit status: 0 pass, 1 check failure, 2 usage or load error.

#include "confspace/scenario.hpp"
#include "confspace/suites.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct CheckOptions {
    std::string scenario;
    std::string suite = "";
    std::size_t quad_order = 0;
    double tol = 0.0;
    std::string format = "text";
    std::string out;
    bool timing = false;
};

int run_check(const CheckOptions& opt) {
    using namespace confspace;
    Scenario s = load_scenario(resolve_scenario(opt.scenario));
    const Suite suite = suite_from_string(opt.suite.empty() ? s.designated_suite : opt.suite);
    if (opt.quad_order != 0) s.rule.order = opt.quad_order;
    if (opt.tol > 0.0) s.tolerances.identity = opt.tol;

    const auto start = std::chrono::steady_clock::now();
    Report report = run_suite(s, suite);
    if (opt.timing)
        report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const std::string doc = emit_report(report, opt.format == "json" ? ReportFormat::json : ReportFormat::text);
    if (opt.out.empty()) {
        std::cout << doc;
    } else {
        std::ofstream out(opt.out, std::ios::binary);
        if (!out) throw Error("cannot write '" + opt.out + "'");
        out << doc;
    }
    return report.passed() ? kExitPass : kExitFail;
}

int run_validate(const std::string& path) {
    using namespace confspace;
    const Scenario s = load_scenario(resolve_scenario(path));
    std::cout << "ok: " << s.name << " (D=" << s.dimension() << ", preset " << to_string(s.system.scale().kind())
              << ", " << s.sample_set.size() << " validation points)\n";
    return kExitPass;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Conformal-space identity checker"};
    app.require_subcommand(1);

    CheckOptions check;
    auto* cmd_check = app.add_subcommand("check", "Run a check suite on a scenario file or bundled fixture");
    cmd_check->add_option("scenario", check.scenario, "Scenario file or fixture name")->required();
    cmd_check->add_option("--suite", check.suite, "identities|measures|examples|inner|audit|all")
        ->check(CLI::IsMember({"identities", "measures", "examples", "inner", "audit", "all"}));
    cmd_check->add_option("--quad-order", check.quad_order, "Override the quadrature order")
        ->check(CLI::Range(1, 64));
    cmd_check->add_option("--tol", check.tol, "Override identity_tol")->check(CLI::PositiveNumber);
    cmd_check->add_option("--format", check.format, "text|json")->check(CLI::IsMember({"text", "json"}));
    cmd_check->add_option("--out", check.out, "Write the report to a file");
    cmd_check->add_flag("--timing", check.timing, "Include wall-clock time in the report");

    std::string validate_path;
    auto* cmd_validate = app.add_subcommand("validate", "Load and validate a scenario");
    cmd_validate->add_option("scenario", validate_path, "Scenario file or fixture name")->required();

    auto* cmd_list = app.add_subcommand("list-fixtures", "List bundled fixtures");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*cmd_check) return run_check(check);
        if (*cmd_validate) return run_validate(validate_path);
        if (*cmd_list) {
            for (const auto& name : confspace::list_fixtures()) std::cout << name << '\n';
            return kExitPass;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
