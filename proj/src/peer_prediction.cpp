#include "citedtcr/peer_prediction.hpp"

#include <algorithm>
#include <cmath>

#include "citedtcr/errors.hpp"

namespace citedtcr {

const std::vector<std::uint32_t> ReportStock::kEmpty;

namespace {
std::uint64_t curator_task_key(NodeId curator, NodeId task) {
    return (static_cast<std::uint64_t>(curator) << 32) | task;
}
}  // namespace

void ReportStock::append(const ReportRecord& record) {
    if (!curator_task_.insert(curator_task_key(record.curator, record.task)).second)
        throw Error("duplicate report: curator " + std::to_string(record.curator) + ", task " +
                    std::to_string(record.task));
    by_curator_[record.curator].push_back(static_cast<std::uint32_t>(records_.size()));
    records_.push_back(record);
}

std::span<const std::uint32_t> ReportStock::of(NodeId curator) const {
    auto it = by_curator_.find(curator);
    if (it == by_curator_.end()) return kEmpty;
    return it->second;
}

bool ReportStock::has_record(NodeId curator, NodeId task) const {
    return curator_task_.count(curator_task_key(curator, task)) > 0;
}

int dg13_theta(std::uint8_t current_c, std::uint8_t current_peer, std::uint8_t past_c,
               std::uint8_t past_peer) {
    return int(current_c == current_peer) - int(past_c == past_peer);
}

std::vector<std::pair<NodeId, NodeId>> pair_curators(std::span<const NodeId> curators, Rng& rng) {
    if (curators.size() < 2) throw Error("peer pairing needs at least 2 curators");
    std::vector<std::pair<NodeId, NodeId>> pairs;
    pairs.reserve(curators.size());
    for (std::size_t i = 0; i < curators.size(); ++i) {
        std::size_t j = static_cast<std::size_t>(rng.below(curators.size() - 1));
        if (j >= i) ++j;
        pairs.emplace_back(curators[i], curators[j]);
    }
    return pairs;
}

namespace {

// record positions of `who` on tasks other than current_task, optionally
// restricted to tasks `other` never reported on
std::vector<std::uint32_t> qualifying(const ReportStock& stock, NodeId who, NodeId other,
                                      NodeId current_task, bool exclude_shared) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t i : stock.of(who)) {
        const auto& rec = stock.records()[i];
        if (rec.task == current_task) continue;
        if (exclude_shared && stock.has_record(other, rec.task)) continue;
        out.push_back(i);
    }
    return out;
}

}  // namespace

PenaltyDraw sample_penalty_reports(const ReportStock& stock, NodeId c, NodeId peer,
                                   NodeId current_task, Rng& rng) {
    auto pool_c = qualifying(stock, c, peer, current_task, /*exclude_shared=*/true);
    auto pool_p = qualifying(stock, peer, c, current_task, /*exclude_shared=*/true);

    PenaltyDraw draw;
    if (pool_c.empty() || pool_p.empty()) {
        // no mutually non-shared tasks: fall back to any non-current records
        draw.shared_fallback = true;
        pool_c = qualifying(stock, c, peer, current_task, /*exclude_shared=*/false);
        pool_p = qualifying(stock, peer, c, current_task, /*exclude_shared=*/false);
        if (pool_c.empty())
            throw Ineligible("curator " + std::to_string(c) + " has no past report to sample");
        if (pool_p.empty())
            throw Ineligible("curator " + std::to_string(peer) + " has no past report to sample");
    }
    draw.past_c = stock.records()[pool_c[rng.below(pool_c.size())]].report;
    draw.past_peer = stock.records()[pool_p[rng.below(pool_p.size())]].report;
    return draw;
}

std::vector<LedgerEntry> settle_pending(const ReportStock& stock, PendingSettlement& pending,
                                        Rng& rng, std::uint32_t min_reports) {
    std::vector<LedgerEntry> settled;
    std::deque<PendingTriple> still_waiting;
    for (const PendingTriple& triple : pending.queue_) {
        if (stock.count_of(triple.curator) < min_reports ||
            stock.count_of(triple.peer) < min_reports) {
            still_waiting.push_back(triple);
            continue;
        }
        // the gate guarantees both parties have records off the current task
        const auto draw = sample_penalty_reports(stock, triple.curator, triple.peer, triple.task,
                                                 rng);
        settled.push_back({triple.period, triple.curator, triple.peer, triple.task,
                           dg13_theta(triple.report_c, triple.report_peer, draw.past_c,
                                      draw.past_peer),
                           draw.shared_fallback});
    }
    pending.queue_.swap(still_waiting);
    return settled;
}

void JointDistribution::validate() const {
    double sum = 0.0;
    for (const auto& row : p)
        for (double x : row) {
            if (x < 0.0) throw Error("joint distribution entry below 0");
            sum += x;
        }
    if (std::abs(sum - 1.0) > 1e-9) throw Error("joint distribution does not sum to 1");
}

bool JointDistribution::positively_correlated() const {
    return p[0][0] > marginal_c(0) * marginal_peer(0) && p[1][1] > marginal_c(1) * marginal_peer(1);
}

JointDistribution JointDistribution::task_signal(double q_zero) {
    JointDistribution j;
    j.p[0][0] = q_zero;
    j.p[1][1] = 1.0 - q_zero;
    return j;
}

double expected_theta_analytic(const JointDistribution& joint, const Strategy& strategy_c,
                               const Strategy& strategy_peer) {
    joint.validate();
    double expected = 0.0;
    for (std::uint8_t sc = 0; sc <= 1; ++sc) {
        for (std::uint8_t sp = 0; sp <= 1; ++sp) {
            const double bracket =
                joint.p[sc][sp] - joint.marginal_c(sc) * joint.marginal_peer(sp);
            const double pc = strategy_c.prob_one(sc);
            const double pp = strategy_peer.prob_one(sp);
            const double agree = pc * pp + (1.0 - pc) * (1.0 - pp);
            expected += bracket * agree;
        }
    }
    return expected;
}

TruthfulnessReport verify_strong_truthfulness(const JointDistribution& joint) {
    joint.validate();
    if (!joint.positively_correlated())
        throw Error("joint distribution is not positively correlated");

    const std::array<Strategy, 5> pool = {Strategy::truthful(), Strategy::opposite(),
                                          Strategy::always_zero(), Strategy::always_one(),
                                          Strategy::uninformative(0.5)};
    TruthfulnessReport report;
    for (const Strategy& a : pool)
        for (const Strategy& b : pool)
            report.table.push_back({a, b, expected_theta_analytic(joint, a, b)});

    report.truthful_value = expected_theta_analytic(joint, Strategy::truthful(),
                                                    Strategy::truthful());
    report.holds = true;
    for (const auto& entry : report.table) {
        const bool both_truthful = entry.c.kind == Strategy::Kind::Truthful &&
                                   entry.peer.kind == Strategy::Kind::Truthful;
        const bool both_opposite = entry.c.kind == Strategy::Kind::Opposite &&
                                   entry.peer.kind == Strategy::Kind::Opposite;
        if (both_truthful) continue;
        if (both_opposite) {
            if (std::abs(entry.expected_theta - report.truthful_value) > 1e-12)
                report.holds = false;
        } else if (entry.expected_theta >= report.truthful_value - 1e-12) {
            report.holds = false;
        }
    }
    return report;
}

}  // namespace citedtcr
