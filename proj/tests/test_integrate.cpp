#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "trinet/errors.hpp"
#include "trinet/integrate.hpp"

using namespace trinet;

namespace {

ModelSpec sym_spec(std::size_t n, double delta1 = 0.1, double delta2 = 0.1) {
    ModelSpec spec;
    spec.params = SymmetricCosineParams{delta1, delta2};
    spec.omega.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) spec.omega[i] = 0.2 * static_cast<double>(i) - 0.3;
    return spec;
}

SystemState random_state(SplitMix64& rng, std::size_t n) {
    SystemState s;
    s.x.resize(n);
    for (auto& v : s.x) v = rng.uniform(0.0, 2.0 * M_PI);
    s.a1 = oracles::random_rank2(rng, n, -1, 1);
    s.a2 = oracles::random_rank3(rng, n, -1, 1);
    return s;
}

} // namespace

TEST_CASE("plan validation") {
    CHECK_THROWS_AS((IntegrationPlan{1.0, 1.0, 0.1, 2}.validate()), ConfigError);
    CHECK_THROWS_AS((IntegrationPlan{0.0, 1.0, 0.0, 2}.validate()), ConfigError);
    CHECK_THROWS_AS((IntegrationPlan{0.0, 1.0, 2.0, 2}.validate()), ConfigError);
    CHECK_THROWS_AS((IntegrationPlan{0.0, 1.0, 0.1, 1}.validate()), ConfigError);
    CHECK_NOTHROW((IntegrationPlan{0.0, 1.0, 0.1, 2}.validate()));
}

TEST_CASE("pack and unpack state") {
    SystemState zero;
    zero.x.assign(3, 0.0);
    zero.a1 = Rank2Tensor(3);
    zero.a2 = Rank3Tensor(3);
    const auto flat = pack_state(zero);
    CHECK(flat.size() == 39);
    for (double v : flat) CHECK(v == 0.0);

    // A2 entry (i,j,k) sits at offset n + n^2 + i n^2 + j n + k.
    SystemState marked = zero;
    marked.a2(1, 2, 0) = 7.5;
    const auto flat2 = pack_state(marked);
    CHECK(flat2[3 + 9 + 1 * 9 + 2 * 3 + 0] == 7.5);

    SplitMix64 rng(53);
    SystemState s = random_state(rng, 4);
    s.t = 2.25;
    const SystemState back = unpack_state(pack_state(s), 4, s.t);
    CHECK(back.x == s.x);
    CHECK(back.a1.data() == s.a1.data());
    CHECK(back.a2.data() == s.a2.data());

    CHECK_THROWS_AS(unpack_state(std::vector<double>(38, 0.0), 3, 0.0), DimensionError);
}

TEST_CASE("first sample equals the initial state exactly") {
    SplitMix64 rng(59);
    const ModelSpec spec = sym_spec(4);
    const SystemState init = random_state(rng, 4);
    const Trajectory traj = integrate(spec, init, {0.0, 0.01, 0.01, 2});
    REQUIRE(traj.samples.size() == 2);
    CHECK(traj.samples[0].x == init.x);
    CHECK(traj.samples[0].a1.data() == init.a1.data());
    CHECK(traj.samples[0].a2.data() == init.a2.data());
    CHECK(traj.samples[0].t == 0.0);
}

TEST_CASE("sample times are exact affine values") {
    SplitMix64 rng(61);
    const ModelSpec spec = sym_spec(3);
    const SystemState init = random_state(rng, 3);
    const IntegrationPlan plan{0.0, 7.0, 0.01, 23};
    const Trajectory traj = integrate(spec, init, plan);
    REQUIRE(traj.samples.size() == 23);
    for (std::size_t m = 0; m < 23; ++m)
        CHECK(traj.samples[m].t == 0.0 + static_cast<double>(m) * 7.0 / 22.0);
}

TEST_CASE("bit-identical replay") {
    SplitMix64 rng(67);
    const ModelSpec spec = sym_spec(4);
    const SystemState init = random_state(rng, 4);
    const IntegrationPlan plan{0.0, 2.0, 0.01, 17};
    const Trajectory a = integrate(spec, init, plan);
    const Trajectory b = integrate(spec, init, plan);
    REQUIRE(a.samples.size() == b.samples.size());
    for (std::size_t m = 0; m < a.samples.size(); ++m) {
        CHECK(a.samples[m].x == b.samples[m].x);
        CHECK(a.samples[m].a1.data() == b.samples[m].a1.data());
        CHECK(a.samples[m].a2.data() == b.samples[m].a2.data());
    }
}

TEST_CASE("alt component decays analytically under the cosine model") {
    SplitMix64 rng(71);
    const ModelSpec spec = sym_spec(5);
    const SystemState init = random_state(rng, 5);
    const IntegrationPlan plan{0.0, 5.0, 0.01, 26};
    const Trajectory traj = integrate(spec, init, plan);

    const double alt0 = frobenius_norm(alt_part(init.a1));
    REQUIRE(alt0 > 0.1);
    for (const auto& s : traj.samples) {
        const double expected = alt0 * std::exp(-0.1 * s.t);
        const double got = frobenius_norm(alt_part(s.a1));
        CHECK(std::abs(got - expected) / expected <= 1e-6);
    }
}

TEST_CASE("sym and mix of the triadic tensor decay under the Levi-Civita model") {
    SplitMix64 rng(73);
    ModelSpec spec;
    spec.params = AntisymmetricSineParams{0.1, 0.1};
    spec.omega = {-1.0, -0.5, 0.0, 0.5, 1.0};
    SystemState init = random_state(rng, 5);
    for (auto& v : init.x) v = rng.uniform(0.0, 1.0);

    const IntegrationPlan plan{0.0, 5.0, 0.01, 26};
    const Trajectory traj = integrate(spec, init, plan);
    const IsotypicSplit3 sp0 = split3(init.a2);
    const double sym0 = frobenius_norm(sp0.sym);
    const double mix0 = frobenius_norm(sp0.mix);
    REQUIRE(sym0 > 0.1);
    REQUIRE(mix0 > 0.1);
    for (const auto& s : traj.samples) {
        const IsotypicSplit3 sp = split3(s.a2);
        CHECK(std::abs(frobenius_norm(sp.sym) - sym0 * std::exp(-0.1 * s.t)) /
                  (sym0 * std::exp(-0.1 * s.t)) <=
              1e-6);
        CHECK(std::abs(frobenius_norm(sp.mix) - mix0 * std::exp(-0.1 * s.t)) /
                  (mix0 * std::exp(-0.1 * s.t)) <=
              1e-6);
    }
}

TEST_CASE("fourth-order convergence on the linear alt subsystem") {
    SplitMix64 rng(79);
    const ModelSpec spec = sym_spec(4);
    const SystemState init = random_state(rng, 4);
    const double alt0 = frobenius_norm(alt_part(init.a1));
    const double T = 8.0;
    const double exact = alt0 * std::exp(-0.1 * T);

    double prev_err = 0.0;
    double dt = 1.0;
    for (int rung = 0; rung < 2; ++rung) {
        const Trajectory traj = integrate(spec, init, {0.0, T, dt, 2});
        const double err = std::abs(frobenius_norm(alt_part(traj.samples.back().a1)) - exact) / exact;
        if (rung > 0) {
            const double ratio = prev_err / err;
            CHECK(ratio >= 14.0);
            CHECK(ratio <= 18.0);
        }
        prev_err = err;
        dt *= 0.5;
    }
}

TEST_CASE("blow-up carries the failure time") {
    ModelSpec spec;
    spec.params = ConsensusVarianceParams{};
    spec.omega.assign(3, 0.0);
    SystemState init;
    init.x = {1e154, -1e154, 0.0};
    init.a1 = Rank2Tensor(3);
    init.a2 = Rank3Tensor(3);
    for (auto& v : init.a1.data()) v = 1e154;
    CHECK_THROWS_AS(integrate(spec, init, {0.0, 1.0, 0.1, 3}), NumericError);
}

TEST_CASE("dimension mismatch is rejected") {
    const ModelSpec spec = sym_spec(4);
    SystemState init;
    init.x.assign(5, 0.0);
    init.a1 = Rank2Tensor(5);
    init.a2 = Rank3Tensor(5);
    CHECK_THROWS_AS(integrate(spec, init, {0.0, 1.0, 0.1, 3}), DimensionError);
}
