// openqb: scenario runner, verification battery and parameter sweeps.
#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <thread>

#include "checks.hpp"
#include "config.hpp"
#include "scenario.hpp"

namespace fs = std::filesystem;
using namespace openqb;

namespace {

std::vector<app::Scenario> resolve(const std::string& preset_name, const std::string& config_file, const std::string& manifest_file,
                                   const std::vector<std::string>& sets)
{
    const int sources = !preset_name.empty() + !config_file.empty() + !manifest_file.empty();
    if (sources != 1) throw app::ConfigError("give exactly one of --preset, --config or --manifest");

    app::Config overrides;
    for (const auto& s : sets) overrides.set_assignment(s);

    std::vector<app::Scenario> out;
    if (!preset_name.empty()) {
        out = app::preset(preset_name);
    } else if (!config_file.empty()) {
        out.push_back(app::scenario_from_config(app::Config::load(config_file)));
    } else {
        out.push_back(app::scenario_from_manifest(manifest_file));
    }
    if (!sets.empty())
        for (auto& s : out) s = app::apply_config(s, overrides);
    return out;
}

void print_run(const app::RunResult& r, const fs::path& dir)
{
    std::printf("%s -> %s\n", r.scenario.name.c_str(), dir.string().c_str());
    if (r.numeric)
        std::printf("  N = %d, trace drift %.2e, min eigenvalue %.2e, top population %.2e\n", r.numeric->N, r.numeric->max_trace_drift,
                    r.numeric->min_eigenvalue, r.numeric->max_top_population);
    for (const auto& w : r.warnings) std::printf("  warning: %s\n", w.c_str());
}

int cmd_run(const std::string& preset_name, const std::string& config_file, const std::string& manifest_file,
            const std::vector<std::string>& sets, const std::string& out)
{
    const auto scenarios = resolve(preset_name, config_file, manifest_file, sets);
    for (const auto& s : scenarios) {
        const fs::path dir = fs::path(out) / s.name;
        const app::RunResult r = app::run_scenario(s);
        app::write_outputs(r, dir);
        print_run(r, dir);
    }
    return 0;
}

int cmd_verify(const std::string& only, double tol_scale, const std::string& fault, const std::vector<int>& criteria, bool list_faults)
{
    if (list_faults) {
        for (const auto& l : verify::fault_labels()) std::printf("%s\n", l.c_str());
        return 0;
    }
    verify::CheckOptions opt;
    opt.only = only;
    opt.tol_scale = tol_scale;
    opt.inject_fault = fault;
    opt.criteria.insert(criteria.begin(), criteria.end());
    std::printf("%-28s %-18s %12s %12s  %-4s %8s\n", "check", "module", "measured", "tolerance", "", "time");
    opt.on_result = [](const verify::CheckResult& r) {
        std::printf("%-28s %-18s %12.3e %12.3e  %-4s %7.1fs\n", r.id.c_str(), r.module.c_str(), r.measured, r.tolerance,
                    r.pass ? "ok" : "FAIL", r.seconds);
        if (!r.pass && !r.detail.empty()) std::printf("    %s\n", r.detail.c_str());
        std::fflush(stdout);
    };
    const auto results = verify::run_checks(opt);
    const long failed = std::count_if(results.begin(), results.end(), [](const auto& r) { return !r.pass; });
    std::printf("%zu checks, %ld failed\n", results.size(), failed);
    return failed == 0 ? 0 : 1;
}

int cmd_sweep(const std::string& preset_name, const std::string& config_file, const std::vector<std::string>& sets,
              const std::vector<std::string>& vary, const std::string& out, unsigned jobs)
{
    const auto base = resolve(preset_name, config_file, "", sets);
    if (base.size() != 1) throw app::ConfigError("sweeps need a single base scenario");
    if (vary.empty()) throw app::ConfigError("nothing to vary; pass --vary key=v1,v2,...");

    // cartesian product over every --vary axis
    std::vector<std::pair<app::Scenario, std::string>> variants{{base.front(), base.front().name}};
    for (const auto& axis : vary) {
        const auto eq = axis.find('=');
        if (eq == std::string::npos) throw app::ConfigError("expected key=v1,v2,..., got '" + axis + "'");
        const std::string key = app::trim(axis.substr(0, eq));
        const auto values = app::split(axis.substr(eq + 1), ',');
        std::vector<std::pair<app::Scenario, std::string>> next;
        for (const auto& [s, name] : variants)
            for (const auto& v : values) {
                if (v.empty()) throw app::ConfigError("empty value in --vary " + key);
                app::Config c;
                c.set(key, v);
                app::Scenario t = app::apply_config(s, c);
                t.name = name + "_" + key + "=" + v;
                next.emplace_back(t, t.name);
            }
        variants = std::move(next);
    }

    if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::future<app::RunResult>> running;
    std::vector<app::RunResult> done;
    size_t next = 0;
    // each task owns its scenario and output directory
    auto launch = [&](const app::Scenario& s) {
        return std::async(std::launch::async, [s, out] {
            app::RunResult r = app::run_scenario(s);
            app::write_outputs(r, fs::path(out) / s.name);
            return r;
        });
    };
    while (next < variants.size() || !running.empty()) {
        while (next < variants.size() && running.size() < jobs) running.push_back(launch(variants[next++].first));
        done.push_back(running.front().get());
        running.erase(running.begin());
    }
    nlohmann::json idx = nlohmann::json::array();
    for (const auto& r : done) {
        print_run(r, fs::path(out) / r.scenario.name);
        idx.push_back(r.scenario.name);
    }
    std::ofstream(fs::path(out) / "sweep.json") << nlohmann::json{{"variants", idx}}.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App cli{"Open qubit-boson dynamics with closed-form, perturbative and Lindblad solvers"};
    cli.set_version_flag("--version", app::version_string());
    cli.require_subcommand(1);

    std::string preset_name, config_file, manifest_file, out = "out";
    std::vector<std::string> sets, vary;

    auto* run = cli.add_subcommand("run", "run a scenario and write CSV series plus a JSON manifest");
    run->add_option("--preset", preset_name, "named preset (fig2-left, fig2-right, fig3, fig4, fig5, fig6)");
    run->add_option("--config", config_file, "scenario config file")->check(CLI::ExistingFile);
    run->add_option("--manifest", manifest_file, "rerun from a manifest.json written earlier")->check(CLI::ExistingFile);
    run->add_option("--set", sets, "override a config key, e.g. --set params.g=0.05");
    run->add_option("--out", out, "output directory")->capture_default_str();

    std::string only, fault;
    double tol_scale = 1.0;
    std::vector<int> criteria;
    bool list_faults = false;
    auto* ver = cli.add_subcommand("verify", "run the cross-validation battery");
    ver->add_option("--only", only, "restrict to one module")
        ->check(CLI::IsMember({"params", "bargmann", "jc-dispersive", "rabi-perturbative", "lindblad-numeric"}));
    ver->add_option("--tol-scale", tol_scale, "multiply every tolerance")->check(CLI::PositiveNumber)->capture_default_str();
    ver->add_option("--criteria", criteria, "restrict to these criterion numbers")->delimiter(',');
    ver->add_option("--inject-fault", fault, "negate the second-order table term with this label");
    ver->add_flag("--list-faults", list_faults, "print the labels accepted by --inject-fault");

    unsigned jobs = 0;
    auto* sweep = cli.add_subcommand("sweep", "run one scenario over a grid of parameter values");
    sweep->add_option("--preset", preset_name, "single-scenario preset to start from");
    sweep->add_option("--config", config_file, "scenario config file")->check(CLI::ExistingFile);
    sweep->add_option("--set", sets, "override a config key before sweeping");
    sweep->add_option("--vary", vary, "key=v1,v2,... (repeat for a product grid)")->required();
    sweep->add_option("--out", out, "output directory")->capture_default_str();
    sweep->add_option("--jobs", jobs, "concurrent scenarios (default: hardware threads)");

    std::string show_preset;
    auto* show = cli.add_subcommand("show", "print the resolved config of a preset");
    show->add_option("preset", show_preset)->required();

    cli.add_subcommand("presets", "list preset names");

    CLI11_PARSE(cli, argc, argv);
    try {
        if (*run) return cmd_run(preset_name, config_file, manifest_file, sets, out);
        if (*ver) return cmd_verify(only, tol_scale, fault, criteria, list_faults);
        if (*sweep) return cmd_sweep(preset_name, config_file, sets, vary, out, jobs);
        if (*show) {
            for (const auto& s : app::preset(show_preset)) std::printf("# %s\n%s\n", s.name.c_str(), app::scenario_to_config(s).dump().c_str());
            return 0;
        }
        for (const auto& n : app::preset_names()) std::printf("%s\n", n.c_str());
        return 0;
    } catch (const app::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
