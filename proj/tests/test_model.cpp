#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "trinet/errors.hpp"
#include "trinet/model.hpp"

using namespace trinet;

namespace {

ModelSpec make_spec(ModelParams params, std::size_t n) {
    ModelSpec spec;
    spec.params = std::move(params);
    spec.omega.assign(n, 0.0);
    return spec;
}

SystemState make_state(std::size_t n) {
    SystemState s;
    s.x.assign(n, 0.0);
    s.a1 = Rank2Tensor(n);
    s.a2 = Rank3Tensor(n);
    return s;
}

SystemState random_state(SplitMix64& rng, std::size_t n) {
    SystemState s = make_state(n);
    for (auto& v : s.x) v = rng.uniform(0.0, 2.0 * M_PI);
    s.a1 = oracles::random_rank2(rng, n, -1, 1);
    s.a2 = oracles::random_rank3(rng, n, -1, 1);
    return s;
}

} // namespace

TEST_CASE("symmetric-cosine fixed point of adaptation") {
    const std::size_t n = 4;
    ModelSpec spec = make_spec(SymmetricCosineParams{0.1, 0.1}, n);
    SystemState s = make_state(n);
    for (auto& v : s.a1.data()) v = -1.0;
    for (auto& v : s.a2.data()) v = -1.0;
    const Derivative d = eval_rhs(spec, s);
    for (double v : d.da1.data()) CHECK(v == doctest::Approx(0.0));
    for (double v : d.da2.data()) CHECK(v == doctest::Approx(0.0));
}

TEST_CASE("symmetric-cosine edge adaptation is linear on the alt component") {
    SplitMix64 rng(23);
    const std::size_t n = 5;
    ModelSpec spec = make_spec(SymmetricCosineParams{0.3, 0.2}, n);
    for (int trial = 0; trial < 10; ++trial) {
        const SystemState s = random_state(rng, n);
        const Derivative d = eval_rhs(spec, s);
        const Rank2Tensor da1_alt = alt_part(d.da1);
        const Rank2Tensor a1_alt = alt_part(s.a1);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                CHECK(da1_alt(i, j) == doctest::Approx(-0.3 * a1_alt(i, j)).epsilon(1e-12));
    }
}

TEST_CASE("antisymmetric-sine triadic driver is purely alternating") {
    SplitMix64 rng(29);
    const std::size_t n = 5;
    ModelSpec spec = make_spec(AntisymmetricSineParams{0.1, 0.1}, n);
    for (int trial = 0; trial < 10; ++trial) {
        SystemState s = random_state(rng, n);
        s.a2 = Rank3Tensor(n); // da2 on A2=0 is -delta2 * driver
        const Derivative d = eval_rhs(spec, s);
        const IsotypicSplit3 sp = split3(d.da2);
        CHECK(frobenius_norm(sp.sym) <= 1e-12);
        CHECK(frobenius_norm(sp.mix) <= 1e-12);
    }
}

TEST_CASE("consensus-variance at consensus relaxes triads to kappa2") {
    const std::size_t n = 4;
    ConsensusVarianceParams p;
    ModelSpec spec = make_spec(p, n);
    SystemState s = make_state(n);
    for (auto& v : s.x) v = 0.7;
    SplitMix64 rng(31);
    s.a2 = oracles::random_rank3(rng, n, -1, 1);
    const Derivative d = eval_rhs(spec, s);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                CHECK(d.da2(i, j, k) ==
                      doctest::Approx(-p.gamma * (s.a2(i, j, k) - p.kappa2)).epsilon(1e-12));
}

TEST_CASE("kuramoto-closure reinforces the seeded weak edge") {
    const std::size_t n = 4;
    SmoothedKuramotoClosureParams p; // default (canonical) parameters
    ModelSpec spec = make_spec(p, n);
    SplitMix64 rng(37);
    SystemState s = make_state(n);
    for (auto& v : s.x) v = rng.uniform(0.0, 2.0 * M_PI);
    // Weak edge (0,1) under the strong symmetric triad (0,1,2).
    s.a1(0, 1) = s.a1(1, 0) = 0.1;
    s.a1(0, 2) = s.a1(2, 0) = 0.6;
    s.a1(1, 2) = s.a1(2, 1) = 0.7;
    for (std::size_t a : {0, 1, 2})
        for (std::size_t b : {0, 1, 2})
            for (std::size_t c : {0, 1, 2})
                if (a != b && b != c && a != c) s.a2(a, b, c) = 0.8;
    const Derivative d = eval_rhs(spec, s);
    CHECK(d.da1(0, 1) > 0.0); // sgn(A1_01) * dA1_01 > 0
    CHECK(d.da1(0, 1) * s.a1(0, 1) > 0.0);
}

TEST_CASE("eval_rhs is deterministic and validates dimensions") {
    SplitMix64 rng(41);
    const std::size_t n = 4;
    ModelSpec spec = make_spec(SmoothedKuramotoClosureParams{}, n);
    const SystemState s = random_state(rng, n);
    const Derivative d1 = eval_rhs(spec, s);
    const Derivative d2 = eval_rhs(spec, s);
    CHECK(d1.dx == d2.dx);
    CHECK(d1.da1.data() == d2.da1.data());
    CHECK(d1.da2.data() == d2.da2.data());

    SystemState wrong = make_state(n + 1);
    CHECK_THROWS_AS(eval_rhs(spec, wrong), DimensionError);
}

TEST_CASE("eval_rhs reports the offending tuple on overflow") {
    const std::size_t n = 3;
    ModelSpec spec = make_spec(ConsensusVarianceParams{}, n);
    SystemState s = make_state(n);
    s.x = {1e300, -1e300, 0.0};
    for (auto& v : s.a1.data()) v = 1e10;
    CHECK_THROWS_AS(eval_rhs(spec, s), NumericError);
    try {
        eval_rhs(spec, s);
    } catch (const NumericError& e) {
        CHECK(std::string(e.what()).find("index") != std::string::npos);
    }
}

TEST_CASE("freeze_degenerate zeroes diagonal adaptation") {
    SplitMix64 rng(43);
    const std::size_t n = 4;
    ModelSpec spec = make_spec(SymmetricCosineParams{0.1, 0.1}, n);
    spec.freeze_degenerate = true;
    const SystemState s = random_state(rng, n);
    const Derivative d = eval_rhs(spec, s);
    for (std::size_t i = 0; i < n; ++i) CHECK(d.da1(i, i) == 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            CHECK(d.da2(i, i, j) == 0.0);
            CHECK(d.da2(i, j, i) == 0.0);
            CHECK(d.da2(j, i, i) == 0.0);
        }
}

TEST_CASE("model validation") {
    ModelSpec bad = make_spec(SymmetricCosineParams{-0.1, 0.1}, 4);
    CHECK_THROWS_AS(bad.validate(), ConfigError);

    ModelSpec coarse = make_spec(SmoothedKuramotoClosureParams{0.5, 25, 0.8, 0.5, 0.2}, 4);
    std::vector<std::string> warnings;
    coarse.validate(&warnings);
    CHECK(warnings.size() == 1);

    ModelSpec too_coarse = make_spec(SmoothedKuramotoClosureParams{0.5, 25, 0.8, 0.5, 0.6}, 4);
    CHECK_THROWS_AS(too_coarse.validate(), ConfigError);

    ModelSpec tiny = make_spec(SymmetricCosineParams{}, 2);
    CHECK_THROWS_AS(tiny.validate(), ConfigError);
}

TEST_CASE("smooth_max") {
    const double single[] = {5.0};
    CHECK(smooth_max(single, 0.3) == doctest::Approx(5.0));
    const double pair[] = {0.0, 0.0};
    CHECK(smooth_max(pair, 1.0) == doctest::Approx(std::log(2.0)));
    const double triple[] = {1.0, 2.0, 3.0};
    const double m = smooth_max(triple, 0.01);
    CHECK(m >= 3.0);
    CHECK(m <= 3.0 + 0.01 * std::log(3.0));

    SplitMix64 rng(47);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> vals(1 + rng.next_u64() % 6);
        for (auto& v : vals) v = rng.uniform(-5, 5);
        const double zeta = rng.uniform(0.01, 0.5);
        const double mx = *std::max_element(vals.begin(), vals.end());
        const double sm = smooth_max(vals, zeta);
        CHECK(sm >= mx);
        CHECK(sm <= mx + zeta * std::log(static_cast<double>(vals.size())) + 1e-12);
    }
    CHECK_THROWS_AS(smooth_max({}, 0.1), ConfigError);
}

TEST_CASE("smooth_min") {
    CHECK(smooth_min(4.0, 4.0, 1.0) == doctest::Approx(4.0 - std::log(2.0)));
    const double near_zero = smooth_min(0.0, 10.0, 0.05);
    CHECK(near_zero <= 0.0);
    CHECK(near_zero >= -0.05 * std::log(2.0));
    CHECK(smooth_min(1.3, -0.4, 0.07) == doctest::Approx(smooth_min(-0.4, 1.3, 0.07)));
    // No overflow for widely separated arguments.
    CHECK(smooth_min(-1e6, 1e6, 0.01) == doctest::Approx(-1e6));
}

TEST_CASE("smooth_heaviside and signs") {
    CHECK(smooth_heaviside(0.0, 0.3) == doctest::Approx(0.5));
    // The analytic bound is e^{-2|z|/zeta}; allow the last-ulp rounding of tanh.
    CHECK(std::abs(smooth_heaviside(10.0 * 0.05, 0.05) - 1.0) <= std::exp(-20.0) + 1e-15);
    for (double z : {-2.0, -0.3, 0.1, 1.7})
        CHECK(smooth_heaviside(-z, 0.2) == doctest::Approx(1.0 - smooth_heaviside(z, 0.2)));

    CHECK(smooth_sign(0.0, 0.1) == 0.0);
    CHECK(smooth_sign_sym(0.5, 0.5, 0.05) == doctest::Approx(std::tanh(10.0)));
    for (double z = 0.05; z < 1.0; z += 0.05)
        CHECK(std::abs(smooth_sign(z, 0.05) - 1.0) <= 2.0 * std::exp(-2.0 * z / 0.05) + 1e-15);

    // Finite-difference derivative of H_zeta matches the tanh formula.
    const double zeta = 0.2, h = 1e-5;
    for (double z = -1.0; z <= 1.0; z += 0.1) {
        const double fd = (smooth_heaviside(z + h, zeta) - smooth_heaviside(z - h, zeta)) / (2 * h);
        const double th = std::tanh(z / zeta);
        const double analytic = (1.0 - th * th) / (2.0 * zeta);
        CHECK(std::abs(fd - analytic) <= 1e-6);
    }
}

TEST_CASE("closure_gate") {
    const std::size_t n = 4;
    const double delta = 0.5, zeta = 0.05;
    Rank2Tensor a1(n);
    Rank3Tensor a2(n);

    // Strong edge, no strong parent: both gates closed.
    a1(0, 1) = a1(1, 0) = 0.9;
    const double closed = closure_gate(a1, a2, 0, 1, delta, zeta);
    CHECK(closed <= std::exp(-2.0 * 0.3 / zeta)); // margin c ~ 0.4 - zeta log 2

    // Edge exactly at delta with a triad slice entry exactly at delta.
    Rank2Tensor b1(n);
    Rank3Tensor b2(n);
    b1(0, 1) = b1(1, 0) = delta;
    b2(0, 1, 2) = delta;
    CHECK(closure_gate(b1, b2, 0, 1, delta, zeta) >= 0.25);

    // The seeded violation state: weak edge under strong triad.
    Rank2Tensor c1(n);
    Rank3Tensor c2(n);
    c1(0, 1) = c1(1, 0) = 0.1;
    c2(0, 1, 2) = 0.8;
    CHECK(closure_gate(c1, c2, 0, 1, delta, zeta) > 0.2);

    CHECK_THROWS_AS(closure_gate(a1, a2, 2, 2, delta, zeta), ConfigError);

    // scan_all_slices also sees triads stored under permuted indices.
    Rank3Tensor d2(n);
    d2(2, 0, 1) = 0.8; // pair {0,1} reachable only through the permuted slice
    CHECK(closure_gate(c1, d2, 0, 1, delta, zeta, false) < 0.05);
    CHECK(closure_gate(c1, d2, 0, 1, delta, zeta, true) > 0.2);
}

TEST_CASE("beta_lower_bound") {
    const double b = beta_lower_bound(0.5, 0.5, 0.05);
    CHECK(b == doctest::Approx(6.0).epsilon(1e-6));
    CHECK(25.0 > b);
    CHECK(beta_lower_bound(1.0, 0.5, 0.05) > b);           // monotone in alpha
    CHECK(beta_lower_bound(0.5, 0.5, 5000.0) > 100.0 * b); // diverges with coarse zeta
}
