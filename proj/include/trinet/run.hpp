#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "trinet/config.hpp"
#include "trinet/io.hpp"

namespace trinet {

struct RunArtifacts {
    std::filesystem::path trajectory;
    std::filesystem::path norms_csv;
    std::filesystem::path regime_json;
    std::filesystem::path retention_json;
    std::vector<std::filesystem::path> snapshots;
};

// Integrate the configured system and emit every artifact into out_dir:
// trajectory.bin, norms.csv, regime.json, retention.json and six evenly
// spaced snapshot_<k>.json files.
RunArtifacts run_config(const RunConfig& cfg, const std::filesystem::path& out_dir);

// Convenience wrapper used by the `preset` subcommand.
RunArtifacts run_preset(const std::string& name, const std::filesystem::path& out_dir,
                        std::optional<std::uint64_t> seed = std::nullopt,
                        std::optional<double> dt = std::nullopt);

struct AnalyzeOptions {
    std::optional<double> epsilon_rel;
    std::optional<double> window_fraction;
    std::optional<double> delta;
    std::optional<ClosureFlavor> flavor;
};

// Recompute norms.csv and regime.json from a stored trajectory; with no
// overrides this reproduces the simulate outputs byte for byte.
void analyze_trajectory(const std::filesystem::path& trajectory_file,
                        const std::filesystem::path& out_dir, const AnalyzeOptions& opts = {});

struct CheckOptions {
    std::optional<double> delta;
    std::optional<ClosureFlavor> flavor;
    std::optional<bool> symmetrize;
};

// Recompute retention.json from a stored trajectory.
void check_trajectory(const std::filesystem::path& trajectory_file,
                      const std::filesystem::path& out_dir, const CheckOptions& opts = {});

// Run several configs concurrently, each into out_dir/<name>.
void run_sweep(const std::vector<RunConfig>& configs, const std::filesystem::path& out_dir);

} // namespace trinet
