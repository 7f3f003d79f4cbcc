#pragma once

#include <vector>

#include "trinet/model.hpp"

namespace trinet {

// Fixed-step integration window. Sample times are affine over [t0, t1]
// inclusive and computed by index multiplication, never by accumulation.
struct IntegrationPlan {
    double t0 = 0.0;
    double t1 = 1.0;
    double dt = 0.01;
    std::size_t sample_count = 2;

    void validate() const; // throws ConfigError
    double sample_time(std::size_t m) const;
};

struct Trajectory {
    ModelSpec spec;
    std::vector<SystemState> samples;
};

// Classical RK4 at fixed step dt; intervals between consecutive sample times
// are covered by whole dt-steps plus one shortened final step, so stored
// states land exactly on the plan's sample grid. Throws NumericError with
// the blow-up time and max-magnitude entry if the state leaves the finite
// range.
Trajectory integrate(const ModelSpec& spec, const SystemState& initial,
                     const IntegrationPlan& plan);

// Flat layout [x | A1 row-major | A2 slice-row-major]; pack then unpack is
// the identity bit-for-bit.
std::vector<double> pack_state(const SystemState& state);
SystemState unpack_state(const std::vector<double>& flat, std::size_t n, double t);

} // namespace trinet
