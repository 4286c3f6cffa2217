#include "citedtcr/agents.hpp"

#include "citedtcr/errors.hpp"

namespace citedtcr {

double Strategy::prob_one(std::uint8_t signal) const {
    switch (kind) {
        case Kind::Truthful: return signal ? 1.0 : 0.0;
        case Kind::Opposite: return signal ? 0.0 : 1.0;
        case Kind::AlwaysZero: return 0.0;
        case Kind::AlwaysOne: return 1.0;
        case Kind::Uninformative: return p_one;
    }
    return 0.0;
}

std::string Strategy::name() const {
    switch (kind) {
        case Kind::Truthful: return "truthful";
        case Kind::Opposite: return "opposite";
        case Kind::AlwaysZero: return "always_zero";
        case Kind::AlwaysOne: return "always_one";
        case Kind::Uninformative: return "uninformative(" + std::to_string(p_one) + ")";
    }
    return "?";
}

AgentTable AgentTable::uniform(const std::vector<NodeId>& nodes, Strategy strategy,
                               double response_prob) {
    AgentTable table;
    for (NodeId id : nodes) table.set({id, strategy, response_prob});
    return table;
}

const Agent& AgentTable::at(NodeId node) const {
    auto it = agents_.find(node);
    if (it == agents_.end()) throw Error("no agent registered for node " + std::to_string(node));
    return it->second;
}

std::uint8_t SignalModel::observe(NodeId task, Rng& rng) const {
    if (mode == Mode::PerCuratorIid) return rng.bernoulli(q_zero) ? 0 : 1;
    auto it = task_signal.find(task);
    if (it == task_signal.end())
        throw Error("no signal allocated for task " + std::to_string(task));
    return it->second;
}

std::unordered_map<NodeId, Strategy> allocate_strategies(const std::vector<NodeId>& nodes,
                                                         double epsilon, Rng& rng) {
    if (epsilon < 0.0 || epsilon > 1.0) throw Error("epsilon must lie in [0, 1]");
    std::unordered_map<NodeId, Strategy> out;
    out.reserve(nodes.size());
    for (NodeId id : nodes)
        out.emplace(id, rng.bernoulli(epsilon) ? Strategy::uninformative(0.5)
                                               : Strategy::truthful());
    return out;
}

SignalModel allocate_signals(const std::vector<NodeId>& nodes, double q_zero, Rng& rng) {
    if (q_zero < 0.0 || q_zero > 1.0) throw Error("q_zero must lie in [0, 1]");
    SignalModel model;
    model.q_zero = q_zero;
    model.task_signal.reserve(nodes.size());
    for (NodeId id : nodes) model.task_signal.emplace(id, rng.bernoulli(q_zero) ? 0 : 1);
    return model;
}

std::optional<std::uint8_t> produce_report(const Agent& agent, std::uint8_t observed_signal,
                                           Rng& rng) {
    if (agent.response_prob < 1.0 && !rng.bernoulli(agent.response_prob)) return std::nullopt;
    const double p1 = agent.strategy.prob_one(observed_signal);
    if (p1 <= 0.0) return std::uint8_t{0};
    if (p1 >= 1.0) return std::uint8_t{1};
    return static_cast<std::uint8_t>(rng.bernoulli(p1) ? 1 : 0);
}

}  // namespace citedtcr
