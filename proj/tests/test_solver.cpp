#include <doctest.h>

#include <cmath>

#include "model_env.hpp"
#include "molsrl/ccs/envelope.hpp"
#include "molsrl/momdp/deep_sea_treasure.hpp"
#include "molsrl/planner/planner.hpp"
#include "molsrl/solver/deep_q.hpp"
#include "molsrl/solver/evaluate.hpp"
#include "molsrl/solver/replay_buffer.hpp"
#include "molsrl/solver/tabular.hpp"

using namespace molsrl;
using namespace molsrl::solver;
using ccs::WeightVector;

TEST_SUITE("solver") {
    TEST_CASE("epsilon schedule") {
        const EpsilonSchedule eps{1.0, 0.05, 2000};
        CHECK(eps(0) == 1.0);
        CHECK(eps(2000) == doctest::Approx(0.05).epsilon(1e-15));
        CHECK(eps(1000) == doctest::Approx(0.525).epsilon(1e-15));
        CHECK(eps(5000) == 0.05);
        CHECK(eps(1999) > eps(2000));
    }

    TEST_CASE("replay buffer keeps the newest items and samples uniformly") {
        ReplayBuffer buf(10);
        Rng rng(17);
        CHECK_THROWS_AS(buf.sample(1, rng), ContractViolation);
        for (std::size_t i = 0; i < 25; ++i) buf.push({{double(i)}, 0, {0.0, 0.0}, {0.0}, false});
        CHECK(buf.size() == 10);
        std::vector<double> kept;
        for (std::size_t i = 0; i < buf.size(); ++i) kept.push_back(buf[i].observation[0]);
        std::sort(kept.begin(), kept.end());
        CHECK(kept.front() == 15.0);
        CHECK(kept.back() == 24.0);

        std::vector<int> counts(25, 0);
        const int draws = 100000;
        CHECK_THROWS_AS(buf.sample(11, rng), ContractViolation);
        for (int i = 0; i < draws / 10; ++i)
            for (const auto* t : buf.sample(10, rng)) ++counts[static_cast<std::size_t>(t->observation[0])];
        const double expected = draws / 10.0;
        const double sigma = std::sqrt(draws * 0.1 * 0.9);
        for (std::size_t i = 15; i < 25; ++i) CHECK(std::abs(counts[i] - expected) <= 3 * sigma);
    }

    TEST_CASE("evaluation examples") {
        momdp::DeepSeaTreasure env(momdp::DstMap::classic(), {});
        Rng rng(0);
        const Policy down = [](const momdp::Environment&, const momdp::Observation&) { return momdp::kDown; };
        const auto v = evaluate_policy(env, down, 1, rng);
        const auto& map = env.map();
        CHECK(v[0] == doctest::Approx(map.treasure_value(0, 1) / map.max_treasure_value()).epsilon(1e-15));
        CHECK(v[1] == doctest::Approx(-1.0 / 200).epsilon(1e-15));
        CHECK(evaluate_policy(env, down, 1, rng).same_point(v));
        CHECK(default_eval_episodes(env) == 1);

        testenv::ModelEnv chain(testenv::two_step_chain(0.0));
        const Policy first = [](const momdp::Environment&, const momdp::Observation&) { return momdp::ActionId{0}; };
        const auto g0 = evaluate_policy(chain, first, 1, rng);
        CHECK(g0.components == std::vector<double>{0.0, -1.0});
    }

    TEST_CASE("deep Q on a one-state problem picks the (1,0) action") {
        testenv::ModelEnv env(testenv::bandit(0.0));
        DeepQConfig config;
        config.total_episodes = 2000;
        config.epsilon = {1.0, 0.05, 1000};
        config.parallel_episodes = 4;
        config.minibatch = 8;
        config.target_sync_episodes = 16;
        config.learning_rate = 1e-2;
        config.zero_head = true;
        DeepQSolver solver(env, nn::ArchitectureTemplate::mlp(2, {8}), config);
        Rng rng(5);
        const auto result = solver.solve(WeightVector::two(1.0), {}, rng);
        CHECK(std::abs(result.value[0] - 1.0) <= 0.01);
        CHECK(std::abs(result.value[1]) <= 0.01);
        CHECK(result.episodes == 2000);
        const auto& net = std::get<nn::QNetwork>(result.model);
        const auto q = net.q_matrix(std::vector<double>{1.0, 0.0});
        CHECK(q(0, 0) == doctest::Approx(1.0).epsilon(0.05));
    }

    TEST_CASE("deep Q with a pure time weight reaches the nearest treasure") {
        momdp::DeepSeaTreasure env(momdp::DstMap::classic(), {});
        DeepQConfig config;
        config.total_episodes = 1000;
        config.epsilon = {1.0, 0.05, 500};
        config.reward_scale = 100.0;
        config.zero_head = true;
        DeepQSolver solver(env, nn::ArchitectureTemplate::mlp(2), config);
        Rng rng(1);
        const auto result = solver.solve(WeightVector::two(0.0), {}, rng);
        CHECK(result.value[1] == doctest::Approx(-1.0 / 200).epsilon(1e-12));
    }

    TEST_CASE("tabular learner on a two-step chain matches the hand-rolled backups") {
        testenv::ModelEnv env(testenv::two_step_chain(0.97));
        TabularConfig config;
        config.total_episodes = 3000;
        config.epsilon = {1.0, 0.05, 1500};
        Rng rng(2);
        const auto w = WeightVector::two(0.8);
        const auto result = tabular_scalarised_q(env, w, QTable(3, 2, 2), config, rng);
        // best path: a0 then a0 -> (0, -1) + 0.97 (1, -1)
        CHECK(result.value[0] == doctest::Approx(0.97).epsilon(1e-15));
        CHECK(result.value[1] == doctest::Approx(-1.97).epsilon(1e-15));
        const auto& table = std::get<QTable>(result.model);
        CHECK(table.at(1, 0)[0] == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(table.at(1, 0)[1] == doctest::Approx(-1.0).epsilon(1e-6));
        CHECK(table.at(0, 0)[0] == doctest::Approx(0.97).epsilon(1e-6));
        CHECK(table.at(0, 0)[1] == doctest::Approx(-1.97).epsilon(1e-6));
        CHECK(table.greedy(0, w) == 0);
    }

    TEST_CASE("zero learning rate leaves the table unchanged") {
        testenv::ModelEnv env(testenv::two_step_chain(0.97));
        QTable table(3, 2, 2);
        table.at(0, 1)[0] = 0.3;
        table.at(1, 0)[1] = -0.7;
        TabularConfig config;
        config.total_episodes = 50;
        config.alpha = 0.0;
        Rng rng(3);
        const auto result = tabular_scalarised_q(env, WeightVector::two(0.5), table, config, rng);
        CHECK(std::get<QTable>(result.model) == table);
    }

    TEST_CASE("table entries start at the configured value") {
        testenv::ModelEnv env(testenv::two_step_chain(0.97));
        TabularConfig config;
        config.initial_value = {1.0, 0.0};
        TabularSolver solver(env, config);
        Rng rng(0);
        const auto table = std::get<QTable>(solver.fresh_model(rng));
        CHECK(table.at(2, 1)[0] == 1.0);
        config.initial_value = {1.0};
        CHECK_THROWS_AS(TabularSolver(env, config), DimensionError);
    }

    TEST_CASE("tabular learner on DST matches the exact planner at random weights") {
        const auto map = momdp::DstMap::classic();
        momdp::DstConfig dc;
        momdp::DeepSeaTreasure env(map, dc);
        const auto truth = planner::exact_ccs(momdp::explicit_model(map, dc).model);
        TabularConfig config;
        config.initial_value = {1.0, 0.0};
        TabularSolver solver(env, config);
        Rng rng(2024);
        for (int i = 0; i < 5; ++i) {
            const auto w = WeightVector::two(uniform01(rng));
            const auto result = solver.solve(w, solver.fresh_model(rng), rng);
            const double best = ccs::max_scalarised_value(truth, w).value;
            CHECK(std::abs(ccs::scalarise(result.value, w) - best) <= 1e-6);
        }
        // w = (1, 0): the farthest, most valuable treasure
        const auto far = solver.solve(WeightVector::two(1.0), solver.fresh_model(rng), rng);
        CHECK(std::abs(far.value[0] - truth.vectors().back()[0]) <= 1e-6);
    }
}
