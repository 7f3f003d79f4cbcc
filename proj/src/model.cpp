#include "trinet/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "trinet/errors.hpp"

namespace trinet {

namespace {

// Clamp exponent arguments well inside the finite double range.
double safe_exp(double z) {
    return std::exp(std::clamp(z, -700.0, 700.0));
}

void require_rate(double v, const char* name) {
    if (!(v > 0.0)) {
        std::ostringstream msg;
        msg << "model parameter " << name << " must be > 0, got " << v;
        throw ConfigError(msg.str());
    }
}

void check_zeta(double zeta, std::vector<std::string>* warnings) {
    require_rate(zeta, "zeta");
    if (zeta > 0.5) {
        std::ostringstream msg;
        msg << "zeta = " << zeta << " violates zeta <= 0.5 (smoothing scale must be small)";
        throw ConfigError(msg.str());
    }
    if (zeta > 0.1 && warnings) {
        std::ostringstream msg;
        msg << "zeta = " << zeta << " is coarse; smoothed thresholds blur beyond 0.1";
        warnings->push_back(msg.str());
    }
}

struct RhsContext {
    const ModelSpec& spec;
    const SystemState& s;
    std::size_t n;
};

// Mean-field phase drift shared by the Kuramoto-type models:
//   omega_i + (1/N) sum_j A1_ij f1 + (1/N^2) sum_{j,k} A2_ijk f2.
template <typename F1, typename F2>
void phase_drift(const RhsContext& c, F1 f1, F2 f2, std::vector<double>& dx) {
    const std::size_t n = c.n;
    const auto& x = c.s.x;
    for (std::size_t i = 0; i < n; ++i) {
        double pair_sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) pair_sum += c.s.a1(i, j) * f1(x[i], x[j]);
        double triad_sum = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                triad_sum += c.s.a2(i, j, k) * f2(x[i], x[j], x[k]);
        dx[i] = c.spec.omega[i] + pair_sum / static_cast<double>(n) +
                triad_sum / static_cast<double>(n * n);
    }
}

void freeze_degenerate_entries(Derivative& d, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) d.da1(i, i) = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (i == j || j == k || k == i) d.da2(i, j, k) = 0.0;
}

void rhs_symmetric_cosine(const RhsContext& c, const SymmetricCosineParams& p, Derivative& d) {
    const std::size_t n = c.n;
    const auto& x = c.s.x;
    phase_drift(
        c, [](double xi, double xj) { return std::sin(xi - xj); },
        [](double xi, double xj, double xk) { return std::sin(2.0 * xi - xj - xk); }, d.dx);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            d.da1(i, j) = -p.delta1 * (c.s.a1(i, j) + std::cos(x[i] - x[j]));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                d.da2(i, j, k) = -p.delta2 * (c.s.a2(i, j, k) + std::cos(x[i] + x[j] + x[k]));
}

void rhs_antisymmetric_sine(const RhsContext& c, const AntisymmetricSineParams& p, Derivative& d) {
    const std::size_t n = c.n;
    const auto& x = c.s.x;
    phase_drift(
        c, [](double xi, double xj) { return std::sin(xj - xi); },
        [](double xi, double xj, double xk) { return std::sin(xj + xk - 2.0 * xi); }, d.dx);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            d.da1(i, j) = -p.delta1 * (c.s.a1(i, j) + std::sin(x[i] - x[j]));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                d.da2(i, j, k) = -p.delta2 * (c.s.a2(i, j, k) +
                                              levi_civita(i, j, k) * std::sin(x[i] + x[j] + x[k]));
}

void rhs_smoothed_kuramoto(const RhsContext& c, const SmoothedKuramotoClosureParams& p,
                           Derivative& d) {
    const std::size_t n = c.n;
    const auto& x = c.s.x;
    phase_drift(
        c, [](double xi, double xj) { return std::sin(xj - xi); },
        [](double xi, double xj, double xk) { return std::sin(xj + xk - 2.0 * xi); }, d.dx);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double reinforce = 0.0;
            if (i != j) {
                const double gate =
                    closure_gate(c.s.a1, c.s.a2, i, j, p.delta, p.zeta, p.scan_all_slices);
                reinforce = p.beta * gate * p.delta *
                            smooth_sign_sym(c.s.a1(i, j), c.s.a1(j, i), p.zeta);
            }
            d.da1(i, j) = -p.alpha * (c.s.a1(i, j) - std::cos(x[i] - x[j])) + reinforce;
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                d.da2(i, j, k) =
                    -p.gamma * (c.s.a2(i, j, k) - p.delta * std::cos(x[i] + x[j] + x[k]));
}

void rhs_consensus_variance(const RhsContext& c, const ConsensusVarianceParams& p, Derivative& d) {
    const std::size_t n = c.n;
    const auto& x = c.s.x;
    for (std::size_t i = 0; i < n; ++i) {
        double pair_sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) pair_sum += c.s.a1(i, j) * (x[j] - x[i]);
        double triad_sum = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                triad_sum += c.s.a2(i, j, k) * (0.5 * (x[j] + x[k]) - x[i]);
        d.dx[i] = pair_sum / static_cast<double>(n) + triad_sum / static_cast<double>(n * n);
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double dxij = x[i] - x[j];
            const double target = p.kappa1 * safe_exp(-p.lambda1 * dxij * dxij);
            double reinforce = 0.0;
            if (i != j) {
                const double gate =
                    closure_gate(c.s.a1, c.s.a2, i, j, p.delta, p.zeta, p.scan_all_slices);
                reinforce = p.beta * p.delta * gate *
                            smooth_sign_sym(c.s.a1(i, j), c.s.a1(j, i), p.zeta);
            }
            d.da1(i, j) = -p.alpha * (c.s.a1(i, j) - target) + reinforce;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                // Local variance over the ordered position pairs of (i,j,k).
                const double dij = x[i] - x[j], dik = x[i] - x[k], djk = x[j] - x[k];
                const double v = (dij * dij + dik * dik + djk * djk) / 3.0;
                d.da2(i, j, k) = -p.gamma * (c.s.a2(i, j, k) - p.kappa2 * safe_exp(-p.lambda2 * v));
            }
        }
    }
}

void require_finite(const Derivative& d, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        if (!std::isfinite(d.dx[i])) {
            std::ostringstream msg;
            msg << "non-finite node derivative at index (" << i << ")";
            throw NumericError(msg.str());
        }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!std::isfinite(d.da1(i, j))) {
                std::ostringstream msg;
                msg << "non-finite edge derivative at index (" << i << "," << j << ")";
                throw NumericError(msg.str());
            }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (!std::isfinite(d.da2(i, j, k))) {
                    std::ostringstream msg;
                    msg << "non-finite triad derivative at index (" << i << "," << j << "," << k
                        << ")";
                    throw NumericError(msg.str());
                }
}

} // namespace

const char* to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::SymmetricCosine: return "symmetric_cosine";
        case ModelKind::AntisymmetricSine: return "antisymmetric_sine";
        case ModelKind::SmoothedKuramotoClosure: return "smoothed_kuramoto_closure";
        case ModelKind::ConsensusVariance: return "consensus_variance";
    }
    return "unknown";
}

ModelKind ModelSpec::kind() const {
    return static_cast<ModelKind>(params.index());
}

void ModelSpec::validate(std::vector<std::string>* warnings) const {
    if (omega.size() < 3) throw ConfigError("model requires N >= 3 nodes");
    std::visit(
        [&](const auto& p) {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, SymmetricCosineParams> ||
                          std::is_same_v<P, AntisymmetricSineParams>) {
                require_rate(p.delta1, "delta1");
                require_rate(p.delta2, "delta2");
            } else {
                require_rate(p.alpha, "alpha");
                require_rate(p.beta, "beta");
                require_rate(p.gamma, "gamma");
                require_rate(p.delta, "delta");
                check_zeta(p.zeta, warnings);
                if constexpr (std::is_same_v<P, ConsensusVarianceParams>) {
                    require_rate(p.kappa1, "kappa1");
                    require_rate(p.kappa2, "kappa2");
                    require_rate(p.lambda1, "lambda1");
                    require_rate(p.lambda2, "lambda2");
                }
            }
        },
        params);
}

bool SystemState::all_finite() const {
    for (double v : x)
        if (!std::isfinite(v)) return false;
    return a1.all_finite() && a2.all_finite();
}

Derivative eval_rhs(const ModelSpec& spec, const SystemState& state) {
    const std::size_t n = spec.n();
    if (state.n() != n || state.a1.n() != n || state.a2.n() != n) {
        std::ostringstream msg;
        msg << "eval_rhs: spec has N=" << n << " but state has x:" << state.n()
            << " a1:" << state.a1.n() << " a2:" << state.a2.n();
        throw DimensionError(msg.str());
    }
    RhsContext c{spec, state, n};
    Derivative d{std::vector<double>(n, 0.0), Rank2Tensor(n), Rank3Tensor(n)};
    std::visit(
        [&](const auto& p) {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, SymmetricCosineParams>)
                rhs_symmetric_cosine(c, p, d);
            else if constexpr (std::is_same_v<P, AntisymmetricSineParams>)
                rhs_antisymmetric_sine(c, p, d);
            else if constexpr (std::is_same_v<P, SmoothedKuramotoClosureParams>)
                rhs_smoothed_kuramoto(c, p, d);
            else
                rhs_consensus_variance(c, p, d);
        },
        spec.params);
    if (spec.freeze_degenerate) freeze_degenerate_entries(d, n);
    require_finite(d, n);
    return d;
}

double smooth_max(std::span<const double> values, double zeta) {
    if (values.empty()) throw ConfigError("smooth_max: empty value list");
    const double m = *std::max_element(values.begin(), values.end());
    double acc = 0.0;
    for (double v : values) acc += safe_exp((v - m) / zeta);
    return m + zeta * std::log(acc);
}

double smooth_min(double a, double b, double zeta) {
    // -max_zeta(-a,-b), written with the shift so large |a-b| cannot overflow.
    const double m = std::min(a, b);
    return m - zeta * std::log1p(safe_exp(-std::abs(a - b) / zeta));
}

double smooth_heaviside(double z, double zeta) {
    return 0.5 * (1.0 + std::tanh(z / zeta));
}

double smooth_sign(double z, double zeta) {
    return std::tanh(z / zeta);
}

double smooth_sign_sym(double x, double y, double zeta) {
    return std::tanh((x + y) / (2.0 * zeta));
}

double closure_gate(const Rank2Tensor& a1, const Rank3Tensor& a2, std::size_t i, std::size_t j,
                    double delta, double zeta, bool scan_all_slices) {
    if (i == j) {
        std::ostringstream msg;
        msg << "closure_gate: degenerate pair (" << i << "," << j << ")";
        throw ConfigError(msg.str());
    }
    const std::size_t n = a2.n();
    std::vector<double> slice;
    slice.reserve(scan_all_slices ? 6 * n : n);
    for (std::size_t k = 0; k < n; ++k) {
        slice.push_back(std::abs(a2(i, j, k)));
        if (scan_all_slices) {
            slice.push_back(std::abs(a2(i, k, j)));
            slice.push_back(std::abs(a2(j, i, k)));
            slice.push_back(std::abs(a2(j, k, i)));
            slice.push_back(std::abs(a2(k, i, j)));
            slice.push_back(std::abs(a2(k, j, i)));
        }
    }
    const double weak_edge =
        smooth_heaviside(delta - smooth_min(std::abs(a1(i, j)), std::abs(a1(j, i)), zeta), zeta);
    const double strong_triad = smooth_heaviside(smooth_max(slice, zeta) - delta, zeta);
    return weak_edge * strong_triad;
}

double beta_lower_bound(double alpha, double delta, double zeta) {
    return 4.0 * alpha * (delta + 1.0) / (delta * std::tanh(delta / zeta));
}

} // namespace trinet
