#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "citedtcr/agents.hpp"
#include "citedtcr/dataset.hpp"
#include "citedtcr/graph.hpp"
#include "citedtcr/pagerank.hpp"
#include "citedtcr/peer_prediction.hpp"
#include "citedtcr/rng.hpp"

namespace citedtcr {

struct SimConfig {
    std::uint32_t n = 10;        // curators per period
    std::uint32_t m = 0;         // acceptance threshold
    double alpha = 0.15;
    double tol = 1e-10;
    std::uint32_t max_iter = 10000;
    std::uint64_t seed = 0;
    bool offset = false;             // report theta + 1 instead of net theta
    bool strict_acceptance = false;  // accept only when accepts exceed m
    bool compute_rewards = true;     // off for assignment-only runs (allows n = 1)
    std::size_t reference_cap = 50;

    void validate() const;  // throws Error
    SolverOptions solver() const { return {alpha, tol, max_iter}; }
};

/// One period of the state transition.
struct PeriodSummary {
    std::uint32_t period = 0;
    NodeId task = 0;
    bool curated = true;  // false when the runner skipped the proposal
    std::vector<NodeId> curators;        // collection order
    std::vector<std::uint8_t> reports;   // aligned with curators
    bool accepted = false;
    std::vector<LedgerEntry> settlements;  // settled during this period
    std::size_t rounds = 0;
    std::size_t queried = 0;
};

struct Trace {
    std::vector<PeriodSummary> periods;
    std::size_t skipped = 0;
};

/// Supplies per-period curator weights; lets experiments inject precomputed
/// scores. The default computes PPR on the pre-proposal graph with the
/// proposal's references as base.
using ScoreProvider = std::function<std::vector<double>(
    std::uint32_t period, const CitationGraph& graph, const std::vector<std::uint32_t>& base)>;

/// Single-threaded period-by-period engine. Owns all mutable protocol state;
/// a failed step throws and leaves the state unchanged.
class Engine {
public:
    Engine(CitationGraph initial, SimConfig cfg, AgentTable agents, SignalModel signals,
           ScoreProvider provider = {});

    /// Runs one period: PPR-weighted curation, peer pairing and deferred
    /// settlement, the acceptance decision, and the stock update.
    PeriodSummary step(const Proposal& proposal);

    /// Advances the period counter for a proposal that could not be curated.
    PeriodSummary skip_period(NodeId task);

    const CitationGraph& graph() const { return graph_; }
    const ReportStock& stock() const { return stock_; }
    const RewardLedger& ledger() const { return ledger_; }
    const PendingSettlement& pending() const { return pending_; }
    std::uint32_t period() const { return period_; }

    /// How often each node has been selected (queried) as a curator,
    /// sorted by node id.
    std::vector<std::pair<NodeId, std::uint64_t>> selection_counts() const;

private:
    CitationGraph graph_;
    SimConfig cfg_;
    AgentTable agents_;
    SignalModel signals_;
    ScoreProvider provider_;
    Rng rng_;
    ReportStock stock_;
    RewardLedger ledger_;
    PendingSettlement pending_;
    std::uint32_t period_ = 0;
    std::unordered_map<NodeId, std::uint64_t> selections_;
};

/// What to do when a replayed proposal references nodes that earlier
/// rejections kept out of the registry.
enum class RefPolicy {
    Strict,       // abort the run
    DropMissing,  // restrict references to registered nodes; skip if none left
};

struct RunResult {
    Trace trace;
    CitationGraph final_graph;
    std::vector<std::pair<NodeId, std::uint64_t>> selection_counts;
    RewardLedger ledger;
    std::size_t pending_unsettled = 0;
};

/// Folds Engine::step over the plan's proposals.
RunResult run(const SimConfig& cfg, const ReplayPlan& plan, const AgentTable& agents,
              const SignalModel& signals, RefPolicy policy = RefPolicy::DropMissing,
              ScoreProvider provider = {});

/// One JSON object per period:
/// {"period":t,"task":id,"curators":[...],"reports":[...],"accepted":bool,
///  "settlements":[{"curator":id,"theta":v},...]}
void write_trace_jsonl(const Trace& trace, std::ostream& out);

/// CSV export `period,curator,peer,task,theta`, one row per settled entry.
void write_ledger_csv(const RewardLedger& ledger, std::ostream& out);

}  // namespace citedtcr
