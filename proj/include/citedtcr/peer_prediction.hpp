#pragma once

#include <array>
#include <cstdint>
#include <deque>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "citedtcr/agents.hpp"
#include "citedtcr/graph.hpp"
#include "citedtcr/rng.hpp"

namespace citedtcr {

struct ReportRecord {
    NodeId curator = 0;
    NodeId task = 0;  // the proposal's new node
    std::uint8_t report = 0;
    std::uint32_t period = 0;
};

/// Append-only intertemporal record of reports, indexed by curator. At most
/// one record exists per (curator, task).
class ReportStock {
public:
    void append(const ReportRecord& record);

    const std::vector<ReportRecord>& records() const { return records_; }
    std::size_t size() const { return records_.size(); }

    /// Record positions for one curator, oldest first; empty when unknown.
    std::span<const std::uint32_t> of(NodeId curator) const;
    std::size_t count_of(NodeId curator) const { return of(curator).size(); }
    bool has_record(NodeId curator, NodeId task) const;

private:
    std::vector<ReportRecord> records_;
    std::unordered_map<NodeId, std::vector<std::uint32_t>> by_curator_;
    std::unordered_set<std::uint64_t> curator_task_;  // membership index
    static const std::vector<std::uint32_t> kEmpty;
};

/// DG13 score: agreement on the shared task minus agreement of two randomly
/// drawn past reports.
int dg13_theta(std::uint8_t current_c, std::uint8_t current_peer, std::uint8_t past_c,
               std::uint8_t past_peer);

/// Assigns each curator a uniformly random peer from the same task
/// (peer != self; the pairing need not be symmetric). Throws below 2 curators.
std::vector<std::pair<NodeId, NodeId>> pair_curators(std::span<const NodeId> curators, Rng& rng);

struct PenaltyDraw {
    std::uint8_t past_c = 0;
    std::uint8_t past_peer = 0;
    bool shared_fallback = false;  // no mutually non-shared tasks existed
};

/// Draws one past report per party, uniformly over records on tasks other
/// than `current_task`. When both parties have records on tasks the other
/// never reported on, the draw is restricted to those. Throws Ineligible when
/// either party has no qualifying record.
PenaltyDraw sample_penalty_reports(const ReportStock& stock, NodeId c, NodeId peer,
                                   NodeId current_task, Rng& rng);

struct PendingTriple {
    NodeId curator = 0;
    NodeId peer = 0;
    NodeId task = 0;
    std::uint32_t period = 0;
    // the two reports on the shared task, captured at enqueue time; the
    // stock may not contain them yet when the triple settles in-period
    std::uint8_t report_c = 0;
    std::uint8_t report_peer = 0;
};

/// Settlements deferred until both parties hold enough stocked reports.
class PendingSettlement {
public:
    void enqueue(PendingTriple triple) { queue_.push_back(triple); }
    std::size_t size() const { return queue_.size(); }
    bool empty() const { return queue_.empty(); }
    const std::deque<PendingTriple>& queue() const { return queue_; }

    friend std::vector<struct LedgerEntry> settle_pending(const ReportStock&, PendingSettlement&,
                                                          Rng&, std::uint32_t);

private:
    std::deque<PendingTriple> queue_;
};

struct LedgerEntry {
    std::uint32_t period = 0;  // the period the reward is for (the task's period)
    NodeId curator = 0;
    NodeId peer = 0;
    NodeId task = 0;
    int theta = 0;  // in {-1, 0, 1}
    bool shared_fallback = false;
};

/// Net and offset payouts of settled rewards.
class RewardLedger {
public:
    explicit RewardLedger(bool offset = false) : offset_(offset) {}

    void append(const LedgerEntry& e) { entries_.push_back(e); }
    void append(const std::vector<LedgerEntry>& es) {
        entries_.insert(entries_.end(), es.begin(), es.end());
    }
    const std::vector<LedgerEntry>& entries() const { return entries_; }
    bool offset_applied() const { return offset_; }

    /// theta + 1 when the offset flag is set, theta otherwise.
    int payout(const LedgerEntry& e) const { return offset_ ? e.theta + 1 : e.theta; }

private:
    std::vector<LedgerEntry> entries_;
    bool offset_ = false;
};

/// Settles every queued triple whose two parties both hold at least
/// `min_reports` stocked reports; the rest stay queued.
std::vector<LedgerEntry> settle_pending(const ReportStock& stock, PendingSettlement& pending,
                                        Rng& rng, std::uint32_t min_reports = 3);

/// Joint distribution of the signals two curators observe on one task.
struct JointDistribution {
    std::array<std::array<double, 2>, 2> p{};  // p[s_c][s_peer]

    double marginal_c(std::uint8_t s) const { return p[s][0] + p[s][1]; }
    double marginal_peer(std::uint8_t s) const { return p[0][s] + p[1][s]; }
    void validate() const;  // entries >= 0, sum to 1
    bool positively_correlated() const;

    /// Perfectly correlated diagonal joint diag(q, 1-q): both curators see
    /// the same bit, which is 0 with probability q.
    static JointDistribution task_signal(double q_zero);
};

/// Exact expected DG13 score for a strategy pair: the signal-correlation
/// bracket summed against the expected report agreement of each signal pair.
double expected_theta_analytic(const JointDistribution& joint, const Strategy& strategy_c,
                               const Strategy& strategy_peer);

struct StrategyPairValue {
    Strategy c;
    Strategy peer;
    double expected_theta = 0.0;
};

struct TruthfulnessReport {
    std::vector<StrategyPairValue> table;  // all 25 ordered pairs
    double truthful_value = 0.0;
    bool holds = false;  // (T,T) strictly maximal except the (O,O) tie
};

/// Enumerates all ordered pairs from {Truthful, Opposite, AlwaysZero,
/// AlwaysOne, Uninformative(0.5)} under a positively correlated joint.
/// Throws Error when the joint is not positively correlated.
TruthfulnessReport verify_strong_truthfulness(const JointDistribution& joint);

}  // namespace citedtcr
