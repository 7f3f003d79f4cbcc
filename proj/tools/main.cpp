#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "trinet/errors.hpp"
#include "trinet/run.hpp"

namespace {

using trinet::ClosureFlavor;

std::optional<ClosureFlavor> parse_flavor_flag(const std::string& s) {
    if (s.empty()) return std::nullopt;
    return trinet::flavor_from_string(s);
}

void print_warnings(const trinet::RunConfig& cfg) {
    std::vector<std::string> warnings;
    trinet::build_model_spec(cfg).validate(&warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

int dispatch(int argc, char** argv) {
    CLI::App app{"trinet: adaptive triadic network simulation and simplicial-structure checks"};
    app.require_subcommand(1);

    // simulate
    std::string sim_config, sim_out = "out";
    std::optional<std::uint64_t> sim_seed;
    auto* simulate = app.add_subcommand("simulate", "integrate a configured system");
    simulate->add_option("--config", sim_config, "run configuration (JSON)")->required();
    simulate->add_option("--out", sim_out, "output directory");
    simulate->add_option("--seed", sim_seed, "override the config seed");

    // preset
    std::string preset_name, preset_out = "out";
    std::optional<std::uint64_t> preset_seed;
    std::optional<double> preset_dt;
    auto* preset = app.add_subcommand("preset", "run a built-in experiment");
    preset->add_option("name", preset_name, "sym-case | antisym-case | kuramoto-closure | consensus-persistent")
        ->required();
    preset->add_option("--out", preset_out, "output directory");
    preset->add_option("--seed", preset_seed, "override the preset seed");
    preset->add_option("--dt", preset_dt, "override the integration step");

    // analyze
    std::string an_traj, an_out = "out";
    double an_eps = -1.0, an_window = -1.0, an_delta = -1.0;
    std::string an_flavor;
    auto* analyze = app.add_subcommand("analyze", "norm series and regime verdict from a trajectory");
    analyze->add_option("--trajectory", an_traj, "trajectory file")->required();
    analyze->add_option("--out", an_out, "output directory");
    analyze->add_option("--epsilon-rel", an_eps, "regime threshold");
    analyze->add_option("--window", an_window, "trailing window fraction");
    analyze->add_option("--delta", an_delta, "closure threshold for the violation columns");
    analyze->add_option("--flavor", an_flavor, "unoriented | oriented | semisimplicial");

    // check
    std::string ck_traj, ck_out = "out";
    double ck_delta = -1.0;
    std::string ck_flavor;
    std::optional<bool> ck_symmetrize;
    auto* check = app.add_subcommand("check", "closure retention scan of a trajectory");
    check->add_option("--trajectory", ck_traj, "trajectory file")->required();
    check->add_option("--out", ck_out, "output directory");
    check->add_option("--delta", ck_delta, "closure threshold");
    check->add_option("--flavor", ck_flavor, "unoriented | oriented | semisimplicial");
    check->add_option("--symmetrize", ck_symmetrize, "project tensors before checks (true/false)");

    // sweep
    std::string sw_config, sw_out = "out";
    auto* sweep = app.add_subcommand("sweep", "run several configs concurrently");
    sweep->add_option("--config", sw_config, "sweep configuration (JSON with a runs array)")
        ->required();
    sweep->add_option("--out", sw_out, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    if (simulate->parsed()) {
        trinet::RunConfig cfg = trinet::parse_run_config(trinet::read_json(sim_config));
        if (sim_seed) cfg.seed = *sim_seed;
        print_warnings(cfg);
        trinet::run_config(cfg, sim_out);
        std::cout << "wrote artifacts to " << sim_out << "\n";
    } else if (preset->parsed()) {
        print_warnings(trinet::preset_config(preset_name));
        trinet::run_preset(preset_name, preset_out, preset_seed, preset_dt);
        std::cout << "wrote artifacts to " << preset_out << "\n";
    } else if (analyze->parsed()) {
        trinet::AnalyzeOptions opts;
        if (an_eps > 0) opts.epsilon_rel = an_eps;
        if (an_window > 0) opts.window_fraction = an_window;
        if (an_delta > 0) opts.delta = an_delta;
        opts.flavor = parse_flavor_flag(an_flavor);
        trinet::analyze_trajectory(an_traj, an_out, opts);
        std::cout << "wrote analysis to " << an_out << "\n";
    } else if (check->parsed()) {
        trinet::CheckOptions opts;
        if (ck_delta > 0) opts.delta = ck_delta;
        opts.flavor = parse_flavor_flag(ck_flavor);
        opts.symmetrize = ck_symmetrize;
        trinet::check_trajectory(ck_traj, ck_out, opts);
        std::cout << "wrote retention record to " << ck_out << "\n";
    } else if (sweep->parsed()) {
        const auto doc = trinet::read_json(sw_config);
        if (!doc.is_object() || !doc.contains("runs") || !doc.at("runs").is_array())
            throw trinet::ConfigError("sweep config must be an object with a 'runs' array");
        std::vector<trinet::RunConfig> configs;
        for (const auto& entry : doc.at("runs"))
            configs.push_back(trinet::parse_run_config(entry));
        trinet::run_sweep(configs, sw_out);
        std::cout << "wrote " << configs.size() << " runs to " << sw_out << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const trinet::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
