#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "molsrl/harness/config.hpp"
#include "molsrl/harness/experiment.hpp"

using namespace molsrl;
using namespace molsrl::harness;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("molsrl-test-" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

/// Runs the CLI with a private runs directory; returns its exit status.
int cli(const std::string& args, const fs::path& runs) {
    const std::string cmd = "MOLSRL_RUNS_DIR='" + runs.string() + "' '" + MOLSRL_CLI_PATH + "' " + args +
                            " > '" + (runs / "cli.log").string() + "' 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_SUITE("harness") {
    TEST_CASE("config round trip") {
        ExperimentConfig c;
        c.env = EnvKind::MountainCar;
        c.algorithm = Algorithm::DolFr;
        c.seeds = {3, 7};
        c.episodes = 1234;
        c.tau = 0.01;
        c.hidden = {64, 32};
        c.learning_rate = 2.5e-4;
        c.optimistic = false;
        std::stringstream buf;
        write_config(buf, c);
        const auto back = parse_config(buf);
        std::stringstream again;
        write_config(again, back);
        CHECK(again.str() == buf.str());
        CHECK(back.env == EnvKind::MountainCar);
        CHECK(back.seeds == std::vector<std::uint64_t>{3, 7});
        CHECK(back.hidden == std::vector<std::size_t>{64, 32});
        CHECK(back.learning_rate == 2.5e-4);
        CHECK_FALSE(back.optimistic);
    }

    TEST_CASE("config errors") {
        std::stringstream unknown("[experiment]\nepisodez = 10\n");
        CHECK_THROWS_AS(parse_config(unknown), ConfigError);
        std::stringstream bad("[experiment]\nepisodes = many\n");
        CHECK_THROWS_AS(parse_config(bad), ConfigError);
        CHECK_THROWS_AS(parse_env("cartpole"), ConfigError);
        CHECK_THROWS_AS(parse_algorithm("dqn"), ConfigError);
        ExperimentConfig c;
        c.env = EnvKind::MountainCar;
        c.algorithm = Algorithm::Exact;
        CHECK_THROWS_AS(c.validate(), ConfigError);
        c = {};
        c.max_iterations = 0;
        CHECK_THROWS_AS(c.validate(), ConfigError);
    }

    TEST_CASE("automatic fields") {
        ExperimentConfig c;
        c.env = EnvKind::MountainCar;
        auto r = c.resolve();
        CHECK(r.episodes == 4000);
        CHECK(r.anneal == 2000);
        CHECK(r.tau == 0.005);
        c.env = EnvKind::DstRaw;
        c.algorithm = Algorithm::Exact;
        r = c.resolve();
        CHECK(r.episodes == 6000);
        CHECK(r.anneal == 3000);
        CHECK(r.tau == 0.0);
        const auto dq = make_deep_q_config(ExperimentConfig{}.resolve());
        CHECK(dq.epsilon.start == 1.0);
        CHECK(dq.epsilon.end == 0.05);
        CHECK(dq.epsilon.anneal_episodes == 3000);
        CHECK(dq.parallel_episodes == 32);
        CHECK(dq.replay_capacity == 10000);
        CHECK(dq.target_sync_episodes == 100);
    }

    TEST_CASE("seed lists") {
        CHECK(parse_seeds("3") == std::vector<std::uint64_t>{1, 2, 3});
        CHECK(parse_seeds("4,9") == std::vector<std::uint64_t>{4, 9});
        CHECK_THROWS_AS(parse_seeds("x"), ConfigError);
        CHECK_THROWS_AS(parse_seeds("0"), ConfigError);
    }

    TEST_CASE("error aggregation carries finished runs forward") {
        const auto curve = aggregate_errors({{0.4, 0.2}, {0.6, 0.4, 0.0}}, 100);
        REQUIRE(curve.size() == 3);
        CHECK(curve[0].iteration == 1);
        CHECK(curve[0].episodes == 100);
        CHECK(curve[0].mean == doctest::Approx(0.5));
        CHECK(curve[0].stddev == doctest::Approx(0.1));
        CHECK(curve[2].mean == doctest::Approx(0.1));
        CHECK(curve[2].episodes == 300);
    }

    TEST_CASE("true CCS for DST is exact") {
        const auto t = true_ccs(ExperimentConfig{}.resolve());
        CHECK(t.source == "exact");
        CHECK(t.ccs.size() == 10);
    }

    TEST_CASE("seed runs are reproducible") {
        ExperimentConfig c;
        c.algorithm = Algorithm::Tabular;
        c.episodes = 400;
        c.max_iterations = 5;
        c = c.resolve();
        const auto truth = true_ccs(c).ccs;
        const auto a_dir = scratch("seed-a"), b_dir = scratch("seed-b");
        const auto a = run_seed(c, 2, truth, a_dir);
        const auto b = run_seed(c, 2, truth, b_dir);
        CHECK(a.errors == b.errors);
        for (const char* f : {"ccs.csv", "errors.csv", "learning_curve.csv"})
            CHECK(slurp(a_dir / f) == slurp(b_dir / f));
        CHECK(fs::exists(a_dir / "iterations.csv"));
        CHECK(fs::exists(a_dir / "config.ini"));
        CHECK(a.errors.size() == a.result.log.size());
    }

    TEST_CASE("command line") {
        const auto runs = scratch("cli");
        CHECK(cli("--dump-defaults", runs) == 0);
        CHECK(cli("train --env nowhere", runs) == 2);
        CHECK(cli("train --env mc --alg exact", runs) == 2);
        CHECK(cli("--no-such-flag", runs) == 2);
        CHECK(cli("plan --env dst-raw --out '" + (runs / "plan").string() + "'", runs) == 0);
        CHECK(fs::exists(runs / "plan" / "ccs.csv"));

        const std::string train = "train --env dst-raw --alg tabular --episodes 300 --max-it 4 --seed 3 --out ";
        CHECK(cli(train + "'" + (runs / "t1").string() + "'", runs) == 0);
        CHECK(cli(train + "'" + (runs / "t2").string() + "'", runs) == 0);
        CHECK(slurp(runs / "t1" / "ccs.csv") == slurp(runs / "t2" / "ccs.csv"));

        const auto exp = runs / "exp";
        CHECK(cli("experiment --env dst-raw --alg tabular --episodes 300 --max-it 4 --seeds 2 --jobs 2 --out '" +
                      exp.string() + "'",
                  runs) == 0);
        for (const char* f : {"config.ini", "true_ccs.csv", "error_curve.csv", "plot.json"}) CHECK(fs::exists(exp / f));
        CHECK(fs::exists(exp / "seed-1" / "errors.csv"));
        CHECK(fs::exists(exp / "seed-2" / "errors.csv"));

        const auto curve = slurp(exp / "error_curve.csv");
        fs::remove(exp / "error_curve.csv");
        CHECK(cli("error-curve '" + exp.string() + "'", runs) == 0);
        CHECK(slurp(exp / "error_curve.csv") == curve);
        CHECK(cli("error-curve '" + (runs / "missing").string() + "'", runs) != 0);

        CHECK(cli("plot '" + exp.string() + "' --out '" + (runs / "plot.json").string() + "'", runs) == 0);
        CHECK(slurp(runs / "plot.json").find("error_curve.csv") != std::string::npos);
        fs::remove_all(runs);
    }
}
