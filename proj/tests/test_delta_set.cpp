#include "doctest.h"

#include <set>

#include "oracles.hpp"
#include "trinet/analysis.hpp"
#include "trinet/config.hpp"
#include "trinet/delta_set.hpp"
#include "trinet/errors.hpp"

using namespace trinet;

TEST_CASE("extract on zero tensors") {
    const DeltaSet ds = extract(Rank2Tensor(5), Rank3Tensor(5), 0.5);
    CHECK(ds.x0 == std::vector<std::size_t>{0, 1, 2, 3, 4});
    CHECK(ds.x1.empty());
    CHECK(ds.x2.empty());
    CHECK(validate(ds).is_semisimplicial); // vacuously
    CHECK_THROWS_AS(extract(Rank2Tensor(5), Rank3Tensor(5), 0.0), ConfigError);
}

TEST_CASE("extract levels shrink as delta grows") {
    SplitMix64 rng(109);
    const Rank2Tensor a1 = oracles::random_rank2(rng, 5, -1, 1);
    const Rank3Tensor a2 = oracles::random_rank3(rng, 5, -1, 1);
    const DeltaSet lo = extract(a1, a2, 0.3);
    const DeltaSet hi = extract(a1, a2, 0.6);
    const std::set<std::array<std::size_t, 2>> lo1(lo.x1.begin(), lo.x1.end());
    const std::set<std::array<std::size_t, 3>> lo2(lo.x2.begin(), lo.x2.end());
    for (const auto& e : hi.x1) CHECK(lo1.count(e) == 1);
    for (const auto& t : hi.x2) CHECK(lo2.count(t) == 1);
    CHECK(hi.x1.size() <= lo.x1.size());
    CHECK(hi.x2.size() <= lo.x2.size());
}

TEST_CASE("extract excludes degenerate tuples and orders lexicographically") {
    Rank2Tensor a1(3);
    Rank3Tensor a2(3);
    for (auto& v : a1.data()) v = 1.0;
    for (auto& v : a2.data()) v = 1.0;
    const DeltaSet ds = extract(a1, a2, 0.5);
    CHECK(ds.x1.size() == 6);  // 3*2 ordered pairs
    CHECK(ds.x2.size() == 6);  // 3! ordered triples
    for (const auto& e : ds.x1) CHECK(e[0] != e[1]);
    for (const auto& t : ds.x2) {
        CHECK(t[0] != t[1]);
        CHECK(t[1] != t[2]);
        CHECK(t[0] != t[2]);
    }
    CHECK(std::is_sorted(ds.x1.begin(), ds.x1.end()));
    CHECK(std::is_sorted(ds.x2.begin(), ds.x2.end()));
}

TEST_CASE("face maps") {
    const std::array<std::size_t, 3> tri = {4, 7, 9};
    CHECK(face(tri, 0) == std::array<std::size_t, 2>{7, 9});
    CHECK(face(tri, 1) == std::array<std::size_t, 2>{4, 9});
    CHECK(face(tri, 2) == std::array<std::size_t, 2>{4, 7});

    const std::array<std::size_t, 2> edge = {5, 9};
    CHECK(face(edge, 0) == 9);
    CHECK(face(edge, 1) == 5);

    // d0 d1 = d0 d0: both routes send (i,j,k) to k.
    CHECK(face(face(tri, 1), 0) == 9);
    CHECK(face(face(tri, 0), 0) == 9);

    CHECK_THROWS_AS(face(tri, 3), ConfigError);
    CHECK_THROWS_AS(face(edge, 2), ConfigError);
}

TEST_CASE("validate reports the missing edge") {
    Rank2Tensor a1(4);
    Rank3Tensor a2(4);
    a2(0, 1, 2) = 0.9;
    a1(0, 2) = 0.9;
    a1(1, 2) = 0.9; // edge (0,1) missing
    const DeltaSet ds = extract(a1, a2, 0.5);
    const DeltaSetValidation v = validate(ds);
    CHECK_FALSE(v.is_semisimplicial);
    REQUIRE(v.missing_faces.size() == 1);
    CHECK(v.missing_faces[0].first == std::array<std::size_t, 3>{0, 1, 2});
    CHECK(v.missing_faces[0].second == 2); // d2(0,1,2) = (0,1)
    CHECK(v.identities_hold);
}

TEST_CASE("persistent consensus run ends with the seeded triad extracted") {
    const RunConfig cfg = preset_config("consensus-persistent");
    const ModelSpec spec = build_model_spec(cfg);
    const Trajectory traj = integrate(spec, build_initial_state(cfg), cfg.plan);
    const SystemState& last = traj.samples.back();
    const auto [a1, a2] = projected_for_flavor(last.a1, last.a2, ClosureFlavor::Unoriented);

    const DeltaSet ds = extract(a1, a2, 0.5);
    const std::set<std::array<std::size_t, 3>> triples(ds.x2.begin(), ds.x2.end());
    CHECK(triples.count({0, 1, 2}) == 1); // the (0,1,2) class survives
    const std::set<std::array<std::size_t, 2>> edges(ds.x1.begin(), ds.x1.end());
    for (auto e : {std::array<std::size_t, 2>{0, 1}, {0, 2}, {1, 2}}) CHECK(edges.count(e) == 1);
    CHECK(validate(ds).is_semisimplicial);
}

TEST_CASE("validate agrees with the semi-simplicial closure check") {
    SplitMix64 rng(113);
    for (int trial = 0; trial < 200; ++trial) {
        Rank2Tensor a1 = oracles::random_rank2(rng, 5, -1, 1);
        Rank3Tensor a2 = oracles::random_rank3(rng, 5, -1, 1);
        if (trial % 4 == 0) {
            // Force closure so both verdicts occur in the sample.
            for (std::size_t i = 0; i < 5; ++i)
                for (std::size_t j = 0; j < 5; ++j)
                    if (i != j) a1(i, j) = rng.uniform(0.6, 1.0);
        }
        const DeltaSetValidation v = validate(extract(a1, a2, 0.5));
        CHECK(v.is_semisimplicial == check_closure_semisimplicial(a1, a2, 0.5).in_region);
        CHECK(v.identities_hold);
    }
}
