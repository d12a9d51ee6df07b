#include <doctest.h>

#include <cmath>

#include "model_env.hpp"
#include "molsrl/ccs/envelope.hpp"
#include "molsrl/momdp/deep_sea_treasure.hpp"
#include "molsrl/planner/planner.hpp"
#include "oracles.hpp"

using namespace molsrl;
using namespace molsrl::planner;
using ccs::PartialCCS;
using ccs::ValueVector;
using ccs::WeightVector;

namespace {

const std::string kStem = std::string(MOLSRL_DATA_DIR) + "/deep_sea_treasure";

momdp::DstExplicitModel dst_model() { return momdp::explicit_model(momdp::DstMap::classic(), {}); }

/// Cell reached by following the policy from the start.
std::pair<int, int> destination(const momdp::DstExplicitModel& m, const DeterministicPolicy& pi) {
    std::size_t s = m.model.start;
    for (int t = 0; t < m.model.horizon && !m.model.terminal[s]; ++t) s = m.model.successor(s, pi[s]);
    return m.cells[s];
}

PartialCCS random_set(Rng& rng) {
    std::vector<ValueVector> vs;
    const std::size_t k = 1 + uniform_index(rng, 8);
    for (std::size_t i = 0; i < k; ++i) vs.push_back({uniform01(rng), uniform01(rng)});
    return PartialCCS(vs);
}

}  // namespace

TEST_SUITE("planner") {
    TEST_CASE("value iteration on a one-state problem") {
        const auto model = testenv::bandit(0.0);
        CHECK(scalarised_value_iteration(model, WeightVector::two(1.0))[0] == 0);
        CHECK(scalarised_value_iteration(model, WeightVector::two(0.0))[0] == 1);
        // exact tie goes to the lowest action
        CHECK(scalarised_value_iteration(model, WeightVector::two(0.5))[0] == 0);
    }

    TEST_CASE("value iteration on DST heads for the nearest and the richest treasure") {
        const auto m = dst_model();
        const auto grid = oracle::read_dst(kStem);
        const auto paths = oracle::shortest_treasure_paths(grid);
        auto nearest = paths.front();
        auto richest = paths.front();
        for (const auto& p : paths) {
            if (p.steps < nearest.steps) nearest = p;
            if (p.value > richest.value) richest = p;
        }
        const auto time_pi = scalarised_value_iteration(m.model, WeightVector::two(0.0));
        CHECK(destination(m, time_pi) == std::pair{nearest.x, nearest.y});
        const auto treasure_pi = scalarised_value_iteration(m.model, WeightVector::two(1.0));
        CHECK(destination(m, treasure_pi) == std::pair{richest.x, richest.y});
        const auto v = policy_eval_vector(m.model, treasure_pi);
        const auto expected = oracle::treasure_return(richest.steps, richest.value, grid.max_value(), 0.97, 200);
        CHECK(v[0] == doctest::Approx(expected.first).epsilon(1e-12));
        CHECK(v[1] == doctest::Approx(expected.second).epsilon(1e-12));
    }

    TEST_CASE("policy evaluation examples") {
        const auto m = dst_model();
        DeterministicPolicy down(m.model.state_count, momdp::kDown);
        const auto v = policy_eval_vector(m.model, down);
        const auto map = momdp::DstMap::classic();
        CHECK(v[0] == doctest::Approx(map.treasure_value(0, 1) / map.max_treasure_value()).epsilon(1e-15));
        CHECK(v[1] == doctest::Approx(-1.0 / 200).epsilon(1e-15));

        auto zero = testenv::two_step_chain();
        std::fill(zero.reward.begin(), zero.reward.end(), 0.0);
        const auto z = policy_eval_vector(zero, DeterministicPolicy(zero.state_count, 0));
        CHECK(z.components == std::vector<double>{0.0, 0.0});
    }

    TEST_CASE("rollout and iterative evaluation agree") {
        const auto m = dst_model();
        Rng rng(3);
        for (int i = 0; i < 50; ++i) {
            const auto pi = scalarised_value_iteration(m.model, WeightVector::two(uniform01(rng)));
            const auto a = policy_eval_vector(m.model, pi);
            const auto b = policy_eval_vector_iterative(m.model, pi);
            CHECK(std::abs(a[0] - b[0]) <= 1e-12);
            CHECK(std::abs(a[1] - b[1]) <= 1e-12);
        }
        const auto chain = testenv::two_step_chain();
        for (momdp::ActionId a0 = 0; a0 < 2; ++a0)
            for (momdp::ActionId a1 = 0; a1 < 2; ++a1) {
                DeterministicPolicy pi{a0, a1, 0};
                const auto x = policy_eval_vector(chain, pi);
                const auto y = policy_eval_vector_iterative(chain, pi);
                CHECK(std::abs(x[0] - y[0]) <= 1e-12);
                CHECK(std::abs(x[1] - y[1]) <= 1e-12);
            }
    }

    TEST_CASE("exact CCS of DST matches the shortest-path oracle") {
        const auto truth = exact_ccs(dst_model().model);
        REQUIRE(truth.size() == 10);
        const auto grid = oracle::read_dst(kStem);
        const auto paths = oracle::shortest_treasure_paths(grid);
        REQUIRE(paths.size() == 10);
        // pruned sets are ordered by the first component, which grows with the column here
        for (std::size_t i = 0; i < paths.size(); ++i) {
            const auto expected = oracle::treasure_return(paths[i].steps, paths[i].value, grid.max_value(), 0.97, 200);
            CHECK(std::abs(truth[i][0] - expected.first) <= 1e-9);
            CHECK(std::abs(truth[i][1] - expected.second) <= 1e-9);
        }
        CHECK(truth[0][0] == doctest::Approx(0.2583).epsilon(1e-3));
        CHECK(truth[9][1] == doctest::Approx(-0.07323).epsilon(1e-3));
        // pruning stable
        const auto again = ccs::prune(truth);
        REQUIRE(again.size() == truth.size());
        for (std::size_t i = 0; i < truth.size(); ++i) CHECK(again[i].same_point(truth[i]));
    }

    TEST_CASE("single-treasure map has a one-vector CCS") {
        const auto map = momdp::DstMap::parse("S..\n...\n..T\n", "2 5\n");
        const auto truth = exact_ccs(momdp::explicit_model(map, {}).model);
        REQUIRE(truth.size() == 1);
        CHECK(truth[0][0] == doctest::Approx(std::pow(0.97, 3)).epsilon(1e-12));
    }

    TEST_CASE("max CCS error examples") {
        const PartialCCS a({{1, 0}, {0, 1}});
        CHECK(max_ccs_error(a, a).value == 0.0);
        const auto missing = max_ccs_error(a, PartialCCS({{1, 0}}));
        CHECK(missing.value == doctest::Approx(1.0));
        CHECK(missing.weight[0] == 0.0);

        const PartialCCS truth({{4, 1}, {3, 3}, {1, 4}});
        const auto mid = max_ccs_error(truth, PartialCCS({{4, 1}, {1, 4}}));
        CHECK(mid.value == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(mid.weight[0] == doctest::Approx(0.5).epsilon(1e-12));
        // a learned set that beats the truth everywhere still scores zero
        CHECK(max_ccs_error(truth, PartialCCS({{5, 5}})).value == 0.0);
        CHECK_THROWS(max_ccs_error(truth, PartialCCS{}));
    }

    TEST_CASE("grid maximum agrees with the corner maximum") {
        Rng rng(12);
        for (int i = 0; i < 300; ++i) {
            const auto truth = random_set(rng);
            const auto learned = random_set(rng);
            const auto grid = max_ccs_error(truth, learned, 10001);
            const auto corners = max_ccs_error_corners(truth, learned);
            CHECK(grid.value <= corners.value + 1e-9);
            // piecewise linear with slopes bounded by 2: grid spacing 1e-4 costs at most 2e-4
            CHECK(corners.value - grid.value <= 2e-4 + 1e-9);
        }
        // sets whose corners lie on the grid
        const PartialCCS truth({{4, 1}, {3, 3}, {1, 4}});
        const PartialCCS learned({{4, 0}, {2, 2}, {0, 4}});
        CHECK(std::abs(max_ccs_error(truth, learned).value - max_ccs_error_corners(truth, learned).value) <= 1e-9);
    }

    TEST_CASE("exact solver counts calls and returns no model") {
        ExactSolver solver(testenv::bandit(0.0));
        Rng rng(0);
        const auto r = solver.solve(WeightVector::two(0.2), {}, rng);
        CHECK(r.value.components == std::vector<double>{0.0, 1.0});
        CHECK(std::holds_alternative<std::monostate>(r.model));
        CHECK(solver.calls() == 1);
    }
}
