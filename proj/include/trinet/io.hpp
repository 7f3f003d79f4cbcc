#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "trinet/analysis.hpp"
#include "trinet/integrate.hpp"

namespace trinet {

inline constexpr const char* kToolVersion = "0.1.0";

// 17 significant digits: enough to reproduce any double exactly.
std::string format_double(double v);

// Flat binary trajectory container: magic, little-endian u64 header length,
// JSON header (n, layout, sample times, resolved run config), then the
// packed little-endian float64 samples.
void write_trajectory(const std::filesystem::path& path, const Trajectory& traj,
                      const nlohmann::ordered_json& config);

struct TrajectoryFile {
    Trajectory traj;
    nlohmann::ordered_json config;
};

TrajectoryFile read_trajectory(const std::filesystem::path& path);

struct NormSeriesRow {
    double t = 0;
    double a1_sym = 0, a1_alt = 0, a2_sym = 0, a2_alt = 0, a2_mix = 0;
    double r = 0, psi = 0;
    std::size_t violations_unoriented = 0;
    std::size_t violations_flavored = 0;
};

void write_norm_series_csv(const std::filesystem::path& path,
                           const std::vector<NormSeriesRow>& rows);

struct SnapshotEdge {
    std::size_t i, j;
    double weight;
};

struct SnapshotTriad {
    std::size_t i, j, k;
    double weight;
};

// Thresholded network snapshot at one sample time. In the unoriented and
// oriented flavors the tensors are projected first and each simplex is
// listed once under its lexicographically minimal representative; the
// semi-simplicial flavor lists every ordered tuple.
struct Snapshot {
    double t = 0;
    double delta = 0;
    ClosureFlavor flavor = ClosureFlavor::Unoriented;
    std::string regime;
    std::vector<SnapshotEdge> edges;
    std::vector<SnapshotTriad> triads;
};

Snapshot make_snapshot(const SystemState& state, double delta, ClosureFlavor flavor,
                       const std::string& regime);

void write_snapshot_json(const std::filesystem::path& path, const Snapshot& snap);

nlohmann::ordered_json regime_to_json(const RegimeVerdict& verdict);
nlohmann::ordered_json retention_to_json(const RetentionRecord& rec, double delta,
                                         ClosureFlavor flavor, SymmetrizePolicy policy,
                                         const RegimeVerdict& regime);

void write_json(const std::filesystem::path& path, const nlohmann::ordered_json& doc);
nlohmann::ordered_json read_json(const std::filesystem::path& path);

} // namespace trinet
