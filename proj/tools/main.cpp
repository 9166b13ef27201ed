// aacsim: scenario runner and stability verifier for the adaptive
// approximation-based control simulator.
//
// Exit codes: 0 success, 2 stability-check failure, 1 error.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "aac/errors.hpp"
#include "aac/scenario.hpp"
#include "aac/simulate.hpp"
#include "aac/verify.hpp"

namespace fs = std::filesystem;

namespace {

// --scenario accepts a JSON file path or the name of a builtin scenario.
aac::Scenario resolve_scenario(const std::string& ref) {
    if (fs::exists(ref)) return aac::load_scenario(ref);
    return aac::builtin_scenario(ref);
}

int cmd_run(const std::string& scenario_ref, const std::string& out,
            std::optional<double> dt, std::optional<double> t_end,
            std::optional<std::uint64_t> seed, bool with_plot) {
    aac::Scenario scn = resolve_scenario(scenario_ref);
    if (dt) scn.dt = *dt;
    if (t_end) scn.t_end = *t_end;
    if (seed) {
        scn.seed = *seed;
        scn.measurement.seed = *seed;
    }
    scn.validate();
    const aac::RunLog log = aac::simulate(scn);
    aac::export_csv(log, out);
    std::cout << scn.name << ": " << log.rows.size() << " rows -> " << out
              << "\n"
              << "  terminal ||x|| = " << log.summary.terminal_x_norm
              << ", sup||x|| last 25% = " << log.summary.sup_x_last_quarter
              << ", max|u| = " << log.summary.max_abs_u << "\n";
    if (with_plot) {
        const fs::path plot = fs::path(out).replace_extension(".plot.py");
        aac::emit_plot_script(log, plot);
        std::cout << "  plot script -> " << plot.string() << "\n";
    }
    return 0;
}

int cmd_run_all(const std::string& out_dir, bool with_plot) {
    fs::create_directories(out_dir);
    for (const aac::Scenario& scn : aac::builtin_scenarios()) {
        const fs::path csv = fs::path(out_dir) / (scn.name + ".csv");
        const aac::RunLog log = aac::simulate(scn);
        aac::export_csv(log, csv);
        // each CSV ships with the exact scenario that produced it
        aac::save_scenario(scn, fs::path(out_dir) / (scn.name + ".json"));
        std::cout << scn.name << " -> " << csv.string()
                  << "  (terminal ||x|| = " << log.summary.terminal_x_norm
                  << ")\n";
        if (with_plot)
            aac::emit_plot_script(log,
                                  fs::path(out_dir) / (scn.name + ".plot.py"));
    }
    return 0;
}

int cmd_verify(const std::string& scenario_ref, bool as_json) {
    const aac::Scenario scn = resolve_scenario(scenario_ref);
    const aac::BoundReport report = aac::verify_scenario(scn);
    if (as_json)
        std::cout << aac::report_json(report);
    else
        std::cout << aac::report_table(report);
    return report.all_pass() ? 0 : 2;
}

int cmd_list_builtins() {
    for (const aac::Scenario& scn : aac::builtin_scenarios())
        std::cout << scn.name << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "aacsim: adaptive approximation-based control simulation and "
        "verification"};
    app.require_subcommand(1);

    std::string scenario_ref, out_path, out_dir = "out";
    std::optional<double> dt, t_end;
    std::optional<std::uint64_t> seed;
    bool as_json = false, with_plot = false, builtin = false;

    auto* run = app.add_subcommand("run", "simulate one scenario to CSV");
    run->add_option("--scenario", scenario_ref,
                    "scenario JSON file or builtin name")
        ->required();
    run->add_option("--out", out_path, "output CSV path")->required();
    run->add_option("--dt", dt, "override integration step [s]");
    run->add_option("--t-end", t_end, "override horizon [s]");
    run->add_option("--seed", seed, "override the scenario seed");
    run->add_flag("--plot", with_plot, "also emit the plot script");

    auto* run_all =
        app.add_subcommand("run-all", "simulate the builtin scenario library");
    run_all->add_flag("--builtin", builtin, "run the builtin library");
    run_all->add_option("--out-dir", out_dir, "output directory")->required();
    run_all->add_flag("--plot", with_plot, "also emit plot scripts");

    auto* verify =
        app.add_subcommand("verify", "run a scenario and check its bounds");
    verify->add_option("--scenario", scenario_ref,
                       "scenario JSON file or builtin name")
        ->required();
    verify->add_flag("--json", as_json, "machine-readable report");

    auto* list = app.add_subcommand("list-builtins", "list builtin scenarios");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed())
            return cmd_run(scenario_ref, out_path, dt, t_end, seed, with_plot);
        if (run_all->parsed()) return cmd_run_all(out_dir, with_plot);
        if (verify->parsed()) return cmd_verify(scenario_ref, as_json);
        if (list->parsed()) return cmd_list_builtins();
    } catch (const aac::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
