#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "citedtcr/graph.hpp"
#include "citedtcr/rng.hpp"

namespace citedtcr {

/// Reporting strategy of a curator. Mapping strategies are deterministic
/// functions of the observed signal; the uninformative strategy ignores it.
struct Strategy {
    enum class Kind { Truthful, Opposite, AlwaysZero, AlwaysOne, Uninformative };

    Kind kind = Kind::Truthful;
    double p_one = 0.5;  // P(report = 1) for the uninformative kind

    static Strategy truthful() { return {Kind::Truthful}; }
    static Strategy opposite() { return {Kind::Opposite}; }
    static Strategy always_zero() { return {Kind::AlwaysZero}; }
    static Strategy always_one() { return {Kind::AlwaysOne}; }
    static Strategy uninformative(double p_one = 0.5) { return {Kind::Uninformative, p_one}; }

    /// P(report = 1 | signal); captures every strategy, stochastic or not.
    double prob_one(std::uint8_t signal) const;

    std::string name() const;
};

struct Agent {
    NodeId node = 0;
    Strategy strategy;
    double response_prob = 1.0;  // in (0, 1]
};

/// Per-node curator behavior for a run.
class AgentTable {
public:
    AgentTable() = default;

    /// Same strategy and responsiveness for every node.
    static AgentTable uniform(const std::vector<NodeId>& nodes, Strategy strategy,
                              double response_prob = 1.0);

    void set(Agent agent) { agents_[agent.node] = agent; }
    const Agent& at(NodeId node) const;
    std::size_t size() const { return agents_.size(); }

private:
    std::unordered_map<NodeId, Agent> agents_;
};

/// Quality signals observed by curators.
struct SignalModel {
    /// TaskSignal: one bit per proposal, seen identically by all of its
    /// curators. PerCuratorIid: each query draws a fresh bit from the q_zero
    /// marginal, so curators of one task need not agree.
    enum class Mode { TaskSignal, PerCuratorIid };

    Mode mode = Mode::TaskSignal;
    double q_zero = 0.5;  // P(signal = 0)
    std::unordered_map<NodeId, std::uint8_t> task_signal;

    std::uint8_t observe(NodeId task, Rng& rng) const;
};

/// Independently marks each node Uninformative(0.5) with probability epsilon,
/// Truthful otherwise.
std::unordered_map<NodeId, Strategy> allocate_strategies(const std::vector<NodeId>& nodes,
                                                         double epsilon, Rng& rng);

/// Attaches an i.i.d. Bernoulli signal bit to every node: 0 with probability
/// q_zero.
SignalModel allocate_signals(const std::vector<NodeId>& nodes, double q_zero, Rng& rng);

/// One curator query: no response with probability 1 - response_prob,
/// otherwise the strategy applied to the observed signal.
std::optional<std::uint8_t> produce_report(const Agent& agent, std::uint8_t observed_signal,
                                           Rng& rng);

}  // namespace citedtcr
