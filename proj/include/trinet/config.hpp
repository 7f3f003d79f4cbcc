#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "trinet/analysis.hpp"
#include "trinet/integrate.hpp"
#include "trinet/model.hpp"

namespace trinet {

// A scalar/vector sampling rule for initial data.
struct Sampler {
    enum class Kind { Uniform, Normal, Linspace, Values, Zeros };
    Kind kind = Kind::Zeros;
    double a = 0.0, b = 1.0;        // low/high or mean/stddev
    std::vector<double> values;     // explicit values
};

struct InitialSpec {
    Sampler x;
    Sampler a1;
    Sampler a2;
    // Entry overrides applied after sampling; with symmetrize_overrides the
    // a1 overrides also set the transposed entry and the a2 overrides set
    // all six index arrangements.
    std::vector<std::array<double, 3>> set_a1; // (i, j, value)
    std::vector<std::array<double, 4>> set_a2; // (i, j, k, value)
    bool symmetrize_overrides = false;
};

struct RegimeSettings {
    double epsilon_rel = 0.05;
    double window_fraction = 0.2;
};

struct ClosureSettings {
    double delta = 0.5;
    ClosureFlavor flavor = ClosureFlavor::Unoriented;
    bool symmetrize = true; // project onto the flavor's component before checks
};

struct RunConfig {
    std::string name = "run";
    std::size_t n = 0;
    std::uint64_t seed = 1;
    ModelParams params;
    bool freeze_degenerate = false;
    Sampler omega;
    InitialSpec initial;
    IntegrationPlan plan;
    RegimeSettings regime;
    ClosureSettings closure;
};

// Strict parse: unknown keys are rejected with their path. Throws ConfigError.
RunConfig parse_run_config(const nlohmann::ordered_json& doc);
nlohmann::ordered_json run_config_to_json(const RunConfig& cfg);

// Built-in experiment presets: sym-case, antisym-case, kuramoto-closure,
// consensus-persistent.
RunConfig preset_config(const std::string& name);
std::vector<std::string> preset_names();

// Deterministic materialization of a config (draw order: omega, x, a1, a2,
// then overrides; a single SplitMix64 stream seeded with cfg.seed).
ModelSpec build_model_spec(const RunConfig& cfg);
SystemState build_initial_state(const RunConfig& cfg);

ClosureFlavor flavor_from_string(const std::string& s);

} // namespace trinet
