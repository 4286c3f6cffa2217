#include "citedtcr/protocol.hpp"

#include <algorithm>
#include <ostream>

#include <json.hpp>

#include "citedtcr/assignment.hpp"
#include "citedtcr/errors.hpp"

namespace citedtcr {

void SimConfig::validate() const {
    if (compute_rewards && n < 2) throw Error("reward computation needs n >= 2");
    if (n < 1) throw Error("n must be positive");
    if (m > n) throw Error("acceptance threshold m must not exceed n");
    if (alpha < 0.0 || alpha > 1.0) throw Error("alpha must lie in [0, 1]");
    if (tol <= 0.0) throw Error("tol must be positive");
    if (max_iter == 0) throw Error("max_iter must be positive");
    if (reference_cap == 0) throw Error("reference cap must be positive");
}

Engine::Engine(CitationGraph initial, SimConfig cfg, AgentTable agents, SignalModel signals,
               ScoreProvider provider)
    : graph_(std::move(initial)),
      cfg_(cfg),
      agents_(std::move(agents)),
      signals_(std::move(signals)),
      provider_(std::move(provider)),
      rng_(cfg.seed),
      ledger_(cfg.offset) {
    cfg_.validate();
    if (graph_.empty()) throw Error("initial graph must not be empty");
}

PeriodSummary Engine::step(const Proposal& proposal) {
    validate_proposal(graph_, proposal, cfg_.reference_cap);
    auto candidates = candidate_indices(graph_, proposal);
    if (candidates.size() < cfg_.n)
        throw Error("period " + std::to_string(period_) + ": candidate pool " +
                    std::to_string(candidates.size()) + " below n = " + std::to_string(cfg_.n));

    std::vector<std::uint32_t> base;
    base.reserve(proposal.references.size());
    for (NodeId ref : proposal.references) base.push_back(graph_.index_of(ref));

    const std::vector<double> weights =
        provider_ ? provider_(period_, graph_, base)
                  : power_iterate(graph_.undirected(), TeleportSpec::over_base(base),
                                  cfg_.solver());
    if (weights.size() != graph_.node_count())
        throw Error("score provider returned a vector of the wrong size");

    const auto outcome = curation(
        weights, std::move(candidates), cfg_.n,
        [&](std::uint32_t index) {
            const Agent& agent = agents_.at(graph_.id_at(index));
            const std::uint8_t signal = signals_.observe(proposal.node, rng_);
            return produce_report(agent, signal, rng_);
        },
        rng_);

    PeriodSummary summary;
    summary.period = period_;
    summary.task = proposal.node;
    summary.rounds = outcome.rounds;
    summary.queried = outcome.queried.size();
    for (std::uint32_t index : outcome.queried) ++selections_[graph_.id_at(index)];
    for (const auto& [index, report] : outcome.reports) {
        summary.curators.push_back(graph_.id_at(index));
        summary.reports.push_back(report);
    }

    if (cfg_.compute_rewards) {
        const auto pairs = pair_curators(summary.curators, rng_);
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            const auto& [c, peer] = pairs[i];
            const auto peer_pos =
                std::find(summary.curators.begin(), summary.curators.end(), peer) -
                summary.curators.begin();
            pending_.enqueue({c, peer, proposal.node, period_, summary.reports[i],
                              summary.reports[static_cast<std::size_t>(peer_pos)]});
        }
        summary.settlements = settle_pending(stock_, pending_, rng_);
        ledger_.append(summary.settlements);
    }

    const auto accepts = static_cast<std::uint32_t>(
        std::count(summary.reports.begin(), summary.reports.end(), std::uint8_t{1}));
    summary.accepted = cfg_.strict_acceptance ? accepts > cfg_.m : accepts >= cfg_.m;
    if (summary.accepted) graph_.apply(proposal, cfg_.reference_cap);

    for (std::size_t i = 0; i < summary.curators.size(); ++i)
        stock_.append({summary.curators[i], proposal.node, summary.reports[i], period_});

    ++period_;
    return summary;
}

PeriodSummary Engine::skip_period(NodeId task) {
    PeriodSummary summary;
    summary.period = period_;
    summary.task = task;
    summary.curated = false;
    ++period_;
    return summary;
}

std::vector<std::pair<NodeId, std::uint64_t>> Engine::selection_counts() const {
    std::vector<std::pair<NodeId, std::uint64_t>> out(selections_.begin(), selections_.end());
    std::sort(out.begin(), out.end());
    return out;
}

RunResult run(const SimConfig& cfg, const ReplayPlan& plan, const AgentTable& agents,
              const SignalModel& signals, RefPolicy policy, ScoreProvider provider) {
    Engine engine(plan.initial_graph, cfg, agents, signals, std::move(provider));
    RunResult result{{}, {}, {}, RewardLedger(cfg.offset), 0};
    result.trace.periods.reserve(plan.proposals.size());

    for (const Proposal& proposal : plan.proposals) {
        Proposal effective = proposal;
        if (policy == RefPolicy::DropMissing) {
            std::erase_if(effective.references,
                          [&](NodeId ref) { return !engine.graph().has_node(ref); });
            if (effective.references.empty()) {
                result.trace.periods.push_back(engine.skip_period(proposal.node));
                ++result.trace.skipped;
                continue;
            }
        }
        result.trace.periods.push_back(engine.step(effective));
    }

    result.final_graph = engine.graph();
    result.selection_counts = engine.selection_counts();
    result.ledger = engine.ledger();
    result.pending_unsettled = engine.pending().size();
    return result;
}

void write_trace_jsonl(const Trace& trace, std::ostream& out) {
    for (const PeriodSummary& p : trace.periods) {
        nlohmann::ordered_json line;
        line["period"] = p.period;
        line["task"] = p.task;
        if (!p.curated) {
            line["skipped"] = true;
            out << line.dump() << '\n';
            continue;
        }
        line["curators"] = p.curators;
        line["reports"] = p.reports;
        line["accepted"] = p.accepted;
        auto settlements = nlohmann::ordered_json::array();
        for (const LedgerEntry& e : p.settlements)
            settlements.push_back({{"curator", e.curator}, {"theta", e.theta}});
        line["settlements"] = std::move(settlements);
        out << line.dump() << '\n';
    }
}

void write_ledger_csv(const RewardLedger& ledger, std::ostream& out) {
    out << "period,curator,peer,task,theta\n";
    for (const LedgerEntry& e : ledger.entries())
        out << e.period << ',' << e.curator << ',' << e.peer << ',' << e.task << ','
            << ledger.payout(e) << '\n';
}

}  // namespace citedtcr
