#include "trinet/run.hpp"

#include <future>

#include "trinet/errors.hpp"

namespace trinet {

namespace fs = std::filesystem;

namespace {

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
}

SymmetrizePolicy policy_from(bool symmetrize) {
    return symmetrize ? SymmetrizePolicy::Project : SymmetrizePolicy::None;
}

std::vector<NormSeriesRow> build_rows(const Trajectory& traj, const NormSeries& series,
                                      double delta, ClosureFlavor flavor,
                                      SymmetrizePolicy policy) {
    std::vector<NormSeriesRow> rows(traj.samples.size());
    for (std::size_t m = 0; m < traj.samples.size(); ++m) {
        const SystemState& s = traj.samples[m];
        NormSeriesRow& row = rows[m];
        row.t = series.times[m];
        row.a1_sym = series.a1_sym[m];
        row.a1_alt = series.a1_alt[m];
        row.a2_sym = series.a2_sym[m];
        row.a2_alt = series.a2_alt[m];
        row.a2_mix = series.a2_mix[m];
        const OrderParameter op = order_parameter(s.x);
        row.r = op.r;
        row.psi = op.psi;

        const auto [s1, s2] = projected_for_flavor(s.a1, s.a2, ClosureFlavor::Unoriented);
        row.violations_unoriented = check_closure_unoriented(s1, s2, delta).violations.size();
        if (policy == SymmetrizePolicy::Project) {
            const auto [f1, f2] = projected_for_flavor(s.a1, s.a2, flavor);
            row.violations_flavored = check_closure(f1, f2, delta, flavor).violations.size();
        } else {
            row.violations_flavored = check_closure(s.a1, s.a2, delta, flavor).violations.size();
        }
    }
    return rows;
}

void emit_analysis(const Trajectory& traj, const RegimeSettings& regime,
                   const ClosureSettings& closure, const fs::path& out_dir,
                   RunArtifacts* artifacts) {
    const NormSeries series = norm_series(traj);
    const RegimeVerdict verdict =
        classify_regime(series, regime.epsilon_rel, regime.window_fraction);
    const SymmetrizePolicy policy = policy_from(closure.symmetrize);

    const auto rows = build_rows(traj, series, closure.delta, closure.flavor, policy);
    const fs::path csv = out_dir / "norms.csv";
    write_norm_series_csv(csv, rows);
    const fs::path regime_path = out_dir / "regime.json";
    write_json(regime_path, regime_to_json(verdict));
    if (artifacts) {
        artifacts->norms_csv = csv;
        artifacts->regime_json = regime_path;
    }
}

void emit_retention(const Trajectory& traj, const RegimeSettings& regime,
                    const ClosureSettings& closure, const fs::path& out_dir,
                    RunArtifacts* artifacts) {
    const SymmetrizePolicy policy = policy_from(closure.symmetrize);
    const RetentionRecord rec = scan_retention(traj, closure.delta, closure.flavor, policy);
    const RegimeVerdict verdict =
        classify_regime(norm_series(traj), regime.epsilon_rel, regime.window_fraction);
    const fs::path path = out_dir / "retention.json";
    write_json(path, retention_to_json(rec, closure.delta, closure.flavor, policy, verdict));
    if (artifacts) artifacts->retention_json = path;
}

RegimeSettings regime_from_config(const nlohmann::ordered_json& config) {
    RegimeSettings out;
    if (config.contains("regime")) {
        out.epsilon_rel = config.at("regime").value("epsilon_rel", out.epsilon_rel);
        out.window_fraction = config.at("regime").value("window_fraction", out.window_fraction);
    }
    return out;
}

ClosureSettings closure_from_config(const nlohmann::ordered_json& config) {
    ClosureSettings out;
    if (config.contains("closure")) {
        out.delta = config.at("closure").value("delta", out.delta);
        if (config.at("closure").contains("flavor"))
            out.flavor = flavor_from_string(config.at("closure").at("flavor"));
        out.symmetrize = config.at("closure").value("symmetrize", out.symmetrize);
    }
    return out;
}

} // namespace

RunArtifacts run_config(const RunConfig& cfg, const fs::path& out_dir) {
    ensure_dir(out_dir);
    const ModelSpec spec = build_model_spec(cfg);
    spec.validate();
    const SystemState initial = build_initial_state(cfg);
    const Trajectory traj = integrate(spec, initial, cfg.plan);

    RunArtifacts artifacts;
    artifacts.trajectory = out_dir / "trajectory.bin";
    write_trajectory(artifacts.trajectory, traj, run_config_to_json(cfg));

    emit_analysis(traj, cfg.regime, cfg.closure, out_dir, &artifacts);
    emit_retention(traj, cfg.regime, cfg.closure, out_dir, &artifacts);

    // Six snapshots spread evenly over the sample grid, as in the figure
    // layouts these runs reproduce.
    const RegimeVerdict verdict = classify_regime(
        norm_series(traj), cfg.regime.epsilon_rel, cfg.regime.window_fraction);
    const std::size_t last = traj.samples.size() - 1;
    for (std::size_t snap = 0; snap < 6; ++snap) {
        const std::size_t idx = snap * last / 5;
        const Snapshot s = make_snapshot(traj.samples[idx], cfg.closure.delta,
                                         cfg.closure.flavor, to_string(verdict.regime));
        const fs::path path = out_dir / ("snapshot_" + std::to_string(snap) + ".json");
        write_snapshot_json(path, s);
        artifacts.snapshots.push_back(path);
    }
    return artifacts;
}

RunArtifacts run_preset(const std::string& name, const fs::path& out_dir,
                        std::optional<std::uint64_t> seed, std::optional<double> dt) {
    RunConfig cfg = preset_config(name);
    if (seed) cfg.seed = *seed;
    if (dt) {
        cfg.plan.dt = *dt;
        cfg.plan.validate();
    }
    return run_config(cfg, out_dir);
}

void analyze_trajectory(const fs::path& trajectory_file, const fs::path& out_dir,
                        const AnalyzeOptions& opts) {
    ensure_dir(out_dir);
    const TrajectoryFile file = read_trajectory(trajectory_file);
    RegimeSettings regime = regime_from_config(file.config);
    ClosureSettings closure = closure_from_config(file.config);
    if (opts.epsilon_rel) regime.epsilon_rel = *opts.epsilon_rel;
    if (opts.window_fraction) regime.window_fraction = *opts.window_fraction;
    if (opts.delta) closure.delta = *opts.delta;
    if (opts.flavor) closure.flavor = *opts.flavor;
    emit_analysis(file.traj, regime, closure, out_dir, nullptr);
}

void check_trajectory(const fs::path& trajectory_file, const fs::path& out_dir,
                      const CheckOptions& opts) {
    ensure_dir(out_dir);
    const TrajectoryFile file = read_trajectory(trajectory_file);
    const RegimeSettings regime = regime_from_config(file.config);
    ClosureSettings closure = closure_from_config(file.config);
    if (opts.delta) closure.delta = *opts.delta;
    if (opts.flavor) closure.flavor = *opts.flavor;
    if (opts.symmetrize) closure.symmetrize = *opts.symmetrize;
    emit_retention(file.traj, regime, closure, out_dir, nullptr);
}

void run_sweep(const std::vector<RunConfig>& configs, const fs::path& out_dir) {
    ensure_dir(out_dir);
    std::vector<std::future<void>> jobs;
    jobs.reserve(configs.size());
    for (const RunConfig& cfg : configs) {
        jobs.push_back(std::async(std::launch::async, [cfg, out_dir] {
            run_config(cfg, out_dir / cfg.name);
        }));
    }
    for (auto& job : jobs) job.get(); // propagate the first failure
}

} // namespace trinet
