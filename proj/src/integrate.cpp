#include "trinet/integrate.hpp"

#include <cmath>
#include <sstream>

#include "trinet/errors.hpp"

namespace trinet {

namespace {

// State arithmetic on the flat phase-space vector (x, A1, A2).
struct FlatView {
    std::vector<double> x;
    std::vector<double> a1;
    std::vector<double> a2;
};

void axpy(std::vector<double>& y, double a, const std::vector<double>& v) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * v[i];
}

SystemState advanced(const SystemState& s, double h, const Derivative& d) {
    SystemState out = s;
    out.t = s.t + h;
    axpy(out.x, h, d.dx);
    axpy(out.a1.data(), h, d.da1.data());
    axpy(out.a2.data(), h, d.da2.data());
    return out;
}

void accumulate(Derivative& acc, double w, const Derivative& d) {
    axpy(acc.dx, w, d.dx);
    axpy(acc.da1.data(), w, d.da1.data());
    axpy(acc.da2.data(), w, d.da2.data());
}

SystemState rk4_step(const ModelSpec& spec, const SystemState& s, double h) {
    const Derivative k1 = eval_rhs(spec, s);
    const Derivative k2 = eval_rhs(spec, advanced(s, 0.5 * h, k1));
    const Derivative k3 = eval_rhs(spec, advanced(s, 0.5 * h, k2));
    const Derivative k4 = eval_rhs(spec, advanced(s, h, k3));

    Derivative sum{std::vector<double>(s.n(), 0.0), Rank2Tensor(s.n()), Rank3Tensor(s.n())};
    accumulate(sum, 1.0, k1);
    accumulate(sum, 2.0, k2);
    accumulate(sum, 2.0, k3);
    accumulate(sum, 1.0, k4);
    return advanced(s, h / 6.0, sum);
}

void verify_finite(const SystemState& s) {
    if (s.all_finite()) return;
    double worst = 0.0;
    for (double v : pack_state(s))
        if (!std::isfinite(v) || std::abs(v) > std::abs(worst)) worst = v;
    std::ostringstream msg;
    msg << "state blew up at t=" << s.t << " (max-magnitude entry " << worst << ")";
    throw NumericError(msg.str());
}

} // namespace

void IntegrationPlan::validate() const {
    if (!(t1 > t0)) throw ConfigError("integration plan requires t1 > t0");
    if (!(dt > 0.0)) throw ConfigError("integration plan requires dt > 0");
    if (dt > t1 - t0) throw ConfigError("integration plan requires dt <= t1 - t0");
    if (sample_count < 2) throw ConfigError("integration plan requires sample_count >= 2");
}

double IntegrationPlan::sample_time(std::size_t m) const {
    return t0 + static_cast<double>(m) * (t1 - t0) / static_cast<double>(sample_count - 1);
}

Trajectory integrate(const ModelSpec& spec, const SystemState& initial,
                     const IntegrationPlan& plan) {
    plan.validate();
    spec.validate();
    const std::size_t n = spec.n();
    if (initial.n() != n || initial.a1.n() != n || initial.a2.n() != n) {
        std::ostringstream msg;
        msg << "integrate: spec has N=" << n << " but initial state has x:" << initial.n()
            << " a1:" << initial.a1.n() << " a2:" << initial.a2.n();
        throw DimensionError(msg.str());
    }
    if (!initial.all_finite()) throw NumericError("initial state contains non-finite entries");

    Trajectory traj;
    traj.spec = spec;
    traj.samples.reserve(plan.sample_count);

    SystemState current = initial;
    current.t = plan.t0;
    traj.samples.push_back(current);

    for (std::size_t m = 1; m < plan.sample_count; ++m) {
        const double t_prev = plan.sample_time(m - 1);
        const double t_next = plan.sample_time(m);
        const double span = t_next - t_prev;
        // Whole dt-steps, robust to span/dt landing a hair under an integer.
        const auto whole = static_cast<std::size_t>(std::floor(span / plan.dt + 1e-9));
        for (std::size_t s = 0; s < whole; ++s) {
            current = rk4_step(spec, current, plan.dt);
            current.t = t_prev + static_cast<double>(s + 1) * plan.dt;
            verify_finite(current);
        }
        const double leftover = t_next - (t_prev + static_cast<double>(whole) * plan.dt);
        if (leftover > 1e-12 * std::max(1.0, std::abs(span))) {
            current = rk4_step(spec, current, leftover);
            verify_finite(current);
        }
        current.t = t_next;
        traj.samples.push_back(current);
    }
    return traj;
}

std::vector<double> pack_state(const SystemState& state) {
    std::vector<double> flat;
    flat.reserve(state.x.size() + state.a1.size() + state.a2.size());
    flat.insert(flat.end(), state.x.begin(), state.x.end());
    flat.insert(flat.end(), state.a1.data().begin(), state.a1.data().end());
    flat.insert(flat.end(), state.a2.data().begin(), state.a2.data().end());
    return flat;
}

SystemState unpack_state(const std::vector<double>& flat, std::size_t n, double t) {
    const std::size_t expected = n + n * n + n * n * n;
    if (flat.size() != expected) {
        std::ostringstream msg;
        msg << "unpack_state: expected " << expected << " entries for N=" << n << ", got "
            << flat.size();
        throw DimensionError(msg.str());
    }
    SystemState s;
    s.t = t;
    s.x.assign(flat.begin(), flat.begin() + static_cast<std::ptrdiff_t>(n));
    s.a1 = Rank2Tensor(n);
    s.a2 = Rank3Tensor(n);
    std::copy(flat.begin() + static_cast<std::ptrdiff_t>(n),
              flat.begin() + static_cast<std::ptrdiff_t>(n + n * n), s.a1.data().begin());
    std::copy(flat.begin() + static_cast<std::ptrdiff_t>(n + n * n), flat.end(),
              s.a2.data().begin());
    return s;
}

} // namespace trinet
