#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "trinet/tensor.hpp"

namespace trinet {

// The four built-in adaptive triadic models.
//
// SymmetricCosine        phases; edge/triad targets -cos(..): flows to the
//                        symmetric regime.
// AntisymmetricSine      phases; sin edge target and Levi-Civita triadic
//                        driver: flows to the antisymmetric regime.
// SmoothedKuramotoClosure phases; relaxation plus a smoothed closure gate
//                        that reinforces weak edges under strong triads.
// ConsensusVariance      real states; diffusive consensus with variance-
//                        gated triad targets, closure gate on edges.
enum class ModelKind {
    SymmetricCosine,
    AntisymmetricSine,
    SmoothedKuramotoClosure,
    ConsensusVariance,
};

const char* to_string(ModelKind kind);

struct SymmetricCosineParams {
    double delta1 = 0.1;
    double delta2 = 0.1;
};

struct AntisymmetricSineParams {
    double delta1 = 0.1;
    double delta2 = 0.1;
};

struct SmoothedKuramotoClosureParams {
    double alpha = 0.5;
    double beta = 25.0;
    double gamma = 0.8;
    double delta = 0.5; // closure threshold; also scales the triad target
    double zeta = 0.05; // smoothing scale
    bool scan_all_slices = false; // closure gate scans every slice holding {i,j}
};

struct ConsensusVarianceParams {
    double alpha = 0.5;
    double beta = 25.0;
    double gamma = 0.8;
    double delta = 0.5;
    double zeta = 0.05;
    double kappa1 = 1.0;
    double kappa2 = 1.2;
    double lambda1 = 2.0;
    double lambda2 = 5.0;
    bool scan_all_slices = false;
};

using ModelParams = std::variant<SymmetricCosineParams, AntisymmetricSineParams,
                                 SmoothedKuramotoClosureParams, ConsensusVarianceParams>;

// Immutable description of one model instance: which dynamics, its rate
// parameters, the per-node intrinsic parameters, and the seed that produced
// the initial data.
struct ModelSpec {
    ModelParams params;
    std::vector<double> omega; // intrinsic frequencies (ignored by ConsensusVariance)
    std::uint64_t rng_seed = 0;
    bool freeze_degenerate = false; // zero adaptation on diagonals / repeated-index triples

    ModelKind kind() const;
    std::size_t n() const { return omega.size(); }

    // Throws ConfigError on invalid rates; appends soft warnings (e.g. a
    // coarse smoothing scale) when a sink is given.
    void validate(std::vector<std::string>* warnings = nullptr) const;
};

struct SystemState {
    double t = 0.0;
    std::vector<double> x; // phases (rad) or scalar states
    Rank2Tensor a1;
    Rank3Tensor a2;

    std::size_t n() const { return x.size(); }
    bool all_finite() const;
};

struct Derivative {
    std::vector<double> dx;
    Rank2Tensor da1;
    Rank3Tensor da2;
};

// Right-hand side of the full (N + N^2 + N^3)-dimensional system. Pure;
// throws NumericError naming the offending index tuple if any derivative
// entry is non-finite, DimensionError if spec and state disagree on N.
Derivative eval_rhs(const ModelSpec& spec, const SystemState& state);

// Smoothing primitives (log-sum-exp family, smoothing scale zeta > 0).
double smooth_max(std::span<const double> values, double zeta);
double smooth_min(double a, double b, double zeta);
double smooth_heaviside(double z, double zeta); // (1 + tanh(z/zeta)) / 2
double smooth_sign(double z, double zeta);      // tanh(z/zeta)
double smooth_sign_sym(double x, double y, double zeta); // tanh((x+y)/(2 zeta))

// Smoothed closure gate J_ij: close to 1 exactly when the edge pair {i,j}
// sits under the threshold while some triad slice entry above it exists.
// Throws ConfigError if i == j.
double closure_gate(const Rank2Tensor& a1, const Rank3Tensor& a2, std::size_t i,
                    std::size_t j, double delta, double zeta,
                    bool scan_all_slices = false);

// Minimal reinforcement rate that makes the edge faces outward-pointing:
// 4 alpha (delta + 1) / (delta tanh(delta / zeta)).
double beta_lower_bound(double alpha, double delta, double zeta);

} // namespace trinet
