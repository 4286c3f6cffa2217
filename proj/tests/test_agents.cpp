#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "citedtcr/agents.hpp"
#include "citedtcr/errors.hpp"

using namespace citedtcr;

namespace {

std::vector<NodeId> make_nodes(std::size_t count) {
    std::vector<NodeId> nodes(count);
    for (std::size_t i = 0; i < count; ++i) nodes[i] = static_cast<NodeId>(i);
    return nodes;
}

}  // namespace

TEST_CASE("strategy report tables") {
    Rng rng(1);
    CHECK(*produce_report({0, Strategy::truthful(), 1.0}, 0, rng) == 0);
    CHECK(*produce_report({0, Strategy::truthful(), 1.0}, 1, rng) == 1);
    CHECK(*produce_report({0, Strategy::opposite(), 1.0}, 0, rng) == 1);
    CHECK(*produce_report({0, Strategy::opposite(), 1.0}, 1, rng) == 0);
    CHECK(*produce_report({0, Strategy::always_zero(), 1.0}, 1, rng) == 0);
    CHECK(*produce_report({0, Strategy::always_one(), 1.0}, 0, rng) == 1);
}

TEST_CASE("mapping strategies are signal-deterministic") {
    Rng rng(99);
    for (int i = 0; i < 1000; ++i) {
        CHECK(*produce_report({0, Strategy::truthful(), 1.0}, 1, rng) == 1);
        CHECK(*produce_report({0, Strategy::opposite(), 1.0}, 1, rng) == 0);
    }
}

TEST_CASE("uninformative reports average their p_one") {
    Rng rng(2024);
    double sum = 0.0;
    const int trials = 100000;
    for (int i = 0; i < trials; ++i)
        sum += *produce_report({0, Strategy::uninformative(0.5), 1.0}, i % 2, rng);
    CHECK(std::abs(sum / trials - 0.5) < 0.005);
}

TEST_CASE("uninformative reports are independent of the signal") {
    Rng rng(31337);
    int count[2] = {0, 0}, ones[2] = {0, 0};
    for (int i = 0; i < 200000; ++i) {
        const std::uint8_t signal = rng.bernoulli(0.5) ? 1 : 0;
        const auto report = produce_report({0, Strategy::uninformative(0.5), 1.0}, signal, rng);
        ++count[signal];
        ones[signal] += *report;
    }
    const double p_given_0 = double(ones[0]) / count[0];
    const double p_given_1 = double(ones[1]) / count[1];
    CHECK(std::abs(p_given_0 - p_given_1) < 0.01);
}

TEST_CASE("non-response rate follows the agent's responsiveness") {
    Rng rng(5);
    int silent = 0;
    const int trials = 100000;
    for (int i = 0; i < trials; ++i)
        if (!produce_report({0, Strategy::truthful(), 0.3}, 1, rng)) ++silent;
    CHECK(std::abs(double(silent) / trials - 0.7) < 0.01);
}

TEST_CASE("strategy allocation boundaries") {
    Rng rng(77);
    const auto nodes = make_nodes(50);
    for (const auto& [id, s] : allocate_strategies(nodes, 0.0, rng))
        CHECK(s.kind == Strategy::Kind::Truthful);
    for (const auto& [id, s] : allocate_strategies(nodes, 1.0, rng)) {
        CHECK(s.kind == Strategy::Kind::Uninformative);
        CHECK(s.p_one == 0.5);
    }
    CHECK_THROWS_AS(allocate_strategies(nodes, 1.5, rng), Error);
}

TEST_CASE("strategy allocation concentrates at epsilon") {
    Rng rng(2718);
    const auto nodes = make_nodes(10000);
    const auto table = allocate_strategies(nodes, 0.3, rng);
    std::size_t uninformative = 0;
    for (const auto& [id, s] : table)
        if (s.kind == Strategy::Kind::Uninformative) ++uninformative;
    // binomial: mean 3000, sd ~45; 150 is a generous 3.3 sigma
    CHECK(uninformative > 2850);
    CHECK(uninformative < 3150);
}

TEST_CASE("signal allocation boundaries and concentration") {
    Rng rng(161803);
    const auto nodes = make_nodes(10000);
    for (const auto& [id, s] : allocate_signals(nodes, 1.0, rng).task_signal) CHECK(s == 0);
    for (const auto& [id, s] : allocate_signals(nodes, 0.0, rng).task_signal) CHECK(s == 1);

    const auto model = allocate_signals(nodes, 0.5, rng);
    std::size_t zeros = 0;
    for (const auto& [id, s] : model.task_signal) zeros += s == 0;
    CHECK(zeros > 4850);
    CHECK(zeros < 5150);
    CHECK_THROWS_AS(allocate_signals(nodes, -0.1, rng), Error);
}

TEST_CASE("allocation is deterministic under a fixed seed") {
    const auto nodes = make_nodes(500);
    Rng a(42), b(42);
    const auto sa = allocate_strategies(nodes, 0.4, a);
    const auto sb = allocate_strategies(nodes, 0.4, b);
    for (NodeId id : nodes) CHECK(sa.at(id).kind == sb.at(id).kind);
    const auto ga = allocate_signals(nodes, 0.3, a);
    const auto gb = allocate_signals(nodes, 0.3, b);
    for (NodeId id : nodes) CHECK(ga.task_signal.at(id) == gb.task_signal.at(id));
}

TEST_CASE("signal model lookup and iid mode") {
    Rng rng(13);
    SignalModel model;
    model.task_signal[7] = 1;
    CHECK(model.observe(7, rng) == 1);
    CHECK_THROWS_AS(model.observe(8, rng), Error);

    SignalModel iid;
    iid.mode = SignalModel::Mode::PerCuratorIid;
    iid.q_zero = 0.9;
    int zeros = 0;
    for (int i = 0; i < 100000; ++i) zeros += iid.observe(0, rng) == 0;
    CHECK(std::abs(zeros / 100000.0 - 0.9) < 0.01);
}

TEST_CASE("agent table lookups") {
    AgentTable table = AgentTable::uniform({1, 2, 3}, Strategy::truthful(), 0.8);
    CHECK(table.size() == 3);
    CHECK(table.at(2).response_prob == 0.8);
    CHECK_THROWS_AS(table.at(9), Error);
}
