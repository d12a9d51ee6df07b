#include <doctest.h>

#include <sstream>

#include "molsrl/nn/adam.hpp"
#include "molsrl/nn/gradient_check.hpp"
#include "molsrl/nn/qnetwork.hpp"
#include "molsrl/nn/serialize.hpp"
#include "molsrl/nn/train.hpp"

using namespace molsrl;
using namespace molsrl::nn;
using molsrl::ccs::WeightVector;

namespace {

std::vector<double> random_features(std::size_t n, Rng& rng) {
    std::vector<double> f(n);
    for (auto& x : f) x = uniform01(rng);
    return f;
}

ArchitectureTemplate small_conv() {
    return ArchitectureTemplate::conv(momdp::ObservationShape::image(3, 11, 10), {4, 6}, {16});
}

Matrix column(const std::vector<double>& f) {
    return Eigen::Map<const Vector>(f.data(), static_cast<Eigen::Index>(f.size()));
}

}  // namespace

TEST_SUITE("nn") {
    TEST_CASE("output has |A| x n entries") {
        QNetwork net(ArchitectureTemplate::mlp(2), 4, 2, 1);
        CHECK(net.output_size() == 8);
        const auto q = net.q_matrix(std::vector<double>{0.1, 0.2});
        CHECK(q.rows() == 4);
        CHECK(q.cols() == 2);
        CHECK_THROWS_AS(net.forward(Matrix::Zero(3, 1)), DimensionError);
    }

    TEST_CASE("zero final layer gives a zero Q-matrix") {
        QNetwork net(ArchitectureTemplate::mlp(2), 4, 2, 1);
        net.zero_last_layer();
        CHECK(net.q_matrix(std::vector<double>{0.3, 0.9}).isZero(0.0));
    }

    TEST_CASE("hand-set tiny MLP") {
        QNetwork net(ArchitectureTemplate::mlp(1, {1}), 2, 1, 0);
        auto& hidden = std::get<Dense>(net.layers()[0]);
        auto& head = std::get<Dense>(net.layers()[1]);
        hidden.weight(0, 0) = 2.0;
        hidden.bias(0) = -1.0;
        head.weight(0, 0) = 3.0;
        head.weight(1, 0) = -1.0;
        head.bias << 0.5, 0.25;
        // x = 2: relu(2*2 - 1) = 3 -> (3*3 + 0.5, -3 + 0.25)
        Matrix in(1, 1);
        in << 2.0;
        const Matrix out = net.forward(in);
        CHECK(out(0, 0) == 9.5);
        CHECK(out(1, 0) == -2.75);
        // x = 0: relu(-1) = 0 -> biases only
        in << 0.0;
        CHECK(net.forward(in)(0, 0) == 0.5);
    }

    TEST_CASE("batched forward equals per-item forward") {
        for (const auto& arch : {ArchitectureTemplate::mlp(2), small_conv()}) {
            QNetwork net(arch, 4, 2, 3);
            Rng rng(1);
            Matrix batch(static_cast<Eigen::Index>(net.input_size()), 5);
            for (Eigen::Index c = 0; c < 5; ++c) batch.col(c) = column(random_features(net.input_size(), rng));
            const Matrix out = net.forward(batch);
            for (Eigen::Index c = 0; c < 5; ++c) CHECK((net.forward(batch.col(c)) - out.col(c)).norm() < 1e-12);
        }
    }

    TEST_CASE("gradient check on MLP and conv templates over 20 seeds") {
        GradientCheckOptions opts;
        opts.max_per_block = 60;
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            Rng rng(seed);
            QNetwork mlp(ArchitectureTemplate::mlp(2), 4, 2, seed);
            CHECK(gradient_check(mlp, random_features(2, rng), WeightVector::two(0.3), opts) <= 1e-4);
            QNetwork conv(small_conv(), 4, 2, seed);
            opts.sample_seed = seed;
            CHECK(gradient_check(conv, random_features(conv.input_size(), rng), WeightVector::two(0.6), opts) <= 1e-4);
        }
    }

    TEST_CASE("linear network gradients are exact to 1e-7") {
        auto arch = ArchitectureTemplate::mlp(3, {5});
        arch.activation = Activation::Identity;
        QNetwork net(arch, 2, 2, 9);
        Rng rng(9);
        CHECK(gradient_check(net, random_features(3, rng), WeightVector::two(0.5)) <= 1e-7);
    }

    TEST_CASE("vector targets") {
        // Identity-free setup: a network whose head is zero except the bias,
        // so Q(s', .) is a fixed matrix independent of s'.
        QNetwork target(ArchitectureTemplate::mlp(1, {1}), 2, 2, 0);
        target.zero_last_layer();
        auto& head = std::get<Dense>(target.layers()[1]);
        head.bias << 0.2, 9.0, 0.3, -9.0;  // rows (0.2, 9), (0.3, -9)

        Transition t;
        t.observation = {0.0};
        t.next_observation = {0.0};
        t.action = 0;
        t.reward = {0.0, -0.005};
        const Transition* batch[] = {&t};

        // w = (1, 0) picks the second row even though its second component is worse
        auto y = vector_targets(target, batch, WeightVector::two(1.0), 0.97);
        CHECK(y(0, 0) == doctest::Approx(0.97 * 0.3));
        CHECK(y(1, 0) == doctest::Approx(-0.005 + 0.97 * -9.0));

        head.bias << 0.5, -0.1, 0.0, -1.0;
        y = vector_targets(target, batch, WeightVector::two(0.5), 0.97);
        CHECK(y(0, 0) == doctest::Approx(0.485));
        CHECK(y(1, 0) == doctest::Approx(-0.102));

        t.terminal = true;
        t.reward = {1.0, 0.0};
        y = vector_targets(target, batch, WeightVector::two(0.5), 0.97);
        CHECK(y(0, 0) == 1.0);
        CHECK(y(1, 0) == 0.0);
    }

    TEST_CASE("terminal transition whose prediction equals the reward has zero loss") {
        QNetwork net(ArchitectureTemplate::mlp(1, {1}), 1, 2, 0);
        net.zero_last_layer();
        std::get<Dense>(net.layers()[1]).bias << 1.0, 0.0;
        QNetwork target = net;
        Transition t{{0.5}, 0, {1.0, 0.0}, {0.5}, true};
        const Transition* batch[] = {&t};
        AdamState adam;
        CHECK(train_step(net, target, batch, WeightVector::two(0.5), 0.97, adam) == 0.0);
    }

    TEST_CASE("greedy action") {
        Matrix q(3, 2);
        q << 0.2, 9, 0.3, -9, 0.3, -9;
        CHECK(greedy_action(q, WeightVector::two(1.0)) == 1);  // tie between 1 and 2 -> lowest
        CHECK(greedy_action(q, WeightVector::two(0.0)) == 0);
    }

    TEST_CASE("train step decreases loss on a linear regression") {
        auto arch = ArchitectureTemplate::mlp(2, {});
        arch.activation = Activation::Identity;
        QNetwork net(arch, 1, 2, 5);
        QNetwork target = net;
        Rng rng(6);
        std::vector<Transition> data;
        for (int i = 0; i < 16; ++i) {
            const double a = uniform01(rng), b = uniform01(rng);
            data.push_back({{a, b}, 0, {2 * a - b, a + 0.5}, {a, b}, true});
        }
        std::vector<const Transition*> batch;
        for (const auto& t : data) batch.push_back(&t);
        AdamState adam(1e-2);
        const double first = train_step(net, target, batch, WeightVector::two(0.5), 0.97, adam);
        double last = first;
        for (int i = 0; i < 49; ++i) last = train_step(net, target, batch, WeightVector::two(0.5), 0.97, adam);
        CHECK(last < first);
    }

    TEST_CASE("training is deterministic for a fixed seed") {
        auto run = [] {
            QNetwork net(ArchitectureTemplate::mlp(2), 4, 2, 11);
            QNetwork target = net;
            Rng rng(12);
            std::vector<Transition> data;
            for (int i = 0; i < 32; ++i)
                data.push_back({random_features(2, rng), uniform_index(rng, 4), {uniform01(rng), -0.005},
                                random_features(2, rng), i % 3 == 0});
            std::vector<const Transition*> batch;
            for (const auto& t : data) batch.push_back(&t);
            AdamState adam;
            for (int i = 0; i < 20; ++i) train_step(net, target, batch, WeightVector::two(0.4), 0.97, adam);
            return net.flat_parameters();
        };
        CHECK(run() == run());
    }

    TEST_CASE("divergence is reported") {
        QNetwork net(ArchitectureTemplate::mlp(1), 1, 2, 0);
        QNetwork target = net;
        Transition t{{0.5}, 0, {std::nan(""), 0.0}, {0.5}, true};
        const Transition* batch[] = {&t};
        AdamState adam;
        CHECK_THROWS_AS(train_step(net, target, batch, WeightVector::two(0.5), 0.97, adam), DivergenceError);
    }

    TEST_CASE("copies are deep") {
        QNetwork net(ArchitectureTemplate::mlp(2), 4, 2, 1);
        QNetwork clone = net;
        const auto before = clone.flat_parameters();
        auto p = net.flat_parameters();
        for (auto& x : p) x += 1.0;
        net.set_flat_parameters(p);
        CHECK(clone.flat_parameters() == before);

        clone.copy_from(net);
        const std::vector<double> probe{0.4, 0.6};
        CHECK(clone.q_matrix(probe) == net.q_matrix(probe));

        QNetwork other(ArchitectureTemplate::mlp(3), 4, 2, 1);
        CHECK_THROWS_AS(clone.copy_from(other), DimensionError);
    }

    TEST_CASE("reinitialising the last layer leaves the body untouched") {
        QNetwork net(small_conv(), 4, 2, 1);
        QNetwork copy = net;
        Rng a(1), b(2);
        net.reinit_last_layer(a);
        copy.reinit_last_layer(b);
        const std::size_t last = net.layers().size() - 1;
        for (std::size_t i = 0; i < last; ++i) {
            const auto& x = std::get_if<Dense>(&net.layers()[i]);
            const auto& y = std::get_if<Dense>(&QNetwork(small_conv(), 4, 2, 1).layers()[i]);
            if (x && y) CHECK(x->weight == y->weight);
        }
        const QNetwork original(small_conv(), 4, 2, 1);
        const auto body = [&](const QNetwork& n) {
            auto p = n.flat_parameters();
            const auto& head = std::get<Dense>(n.layers().back());
            p.resize(p.size() - static_cast<std::size_t>(head.weight.size() + head.bias.size()));
            return p;
        };
        CHECK(body(net) == body(original));
        CHECK(body(copy) == body(original));
        CHECK(std::get<Dense>(net.layers().back()).weight != std::get<Dense>(copy.layers().back()).weight);
        CHECK(std::get<Dense>(net.layers().back()).bias.isZero(0.0));
        Rng rng(3);
        const auto probe = random_features(net.input_size(), rng);
        CHECK(net.q_matrix(probe) != original.q_matrix(probe));
    }

    TEST_CASE("serialisation round trip is bit exact") {
        for (const auto& arch : {ArchitectureTemplate::mlp(2), small_conv()}) {
            QNetwork net(arch, 4, 2, 42);
            std::stringstream buf;
            save_network(buf, net);
            const auto back = load_network(buf);
            CHECK(back.same_architecture(net));
            CHECK(back.seed() == 42);
            CHECK(back.flat_parameters() == net.flat_parameters());
        }
        std::stringstream bad("NOTANETWORK");
        CHECK_THROWS_AS(load_network(bad), ConfigError);
        QNetwork net(ArchitectureTemplate::mlp(2), 4, 2, 42);
        std::stringstream buf;
        save_network(buf, net);
        std::string text = buf.str();
        text.resize(text.size() - 8);
        std::stringstream truncated(text);
        CHECK_THROWS_AS(load_network(truncated), ConfigError);
    }

    TEST_CASE("Adam first step moves each parameter by about the learning rate") {
        QNetwork net(ArchitectureTemplate::mlp(1, {2}), 1, 1, 4);
        const auto before = net.flat_parameters();
        for (auto& block : net.parameters())
            for (auto& g : block.grad) g = 0.5;
        AdamState adam(1e-3);
        adam_update(net, adam);
        const auto after = net.flat_parameters();
        for (std::size_t i = 0; i < before.size(); ++i) CHECK(before[i] - after[i] == doctest::Approx(1e-3).epsilon(1e-6));
        CHECK(adam.step == 1);
    }
}
