#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <vector>

#include "citedtcr/dataset.hpp"
#include "citedtcr/pagerank.hpp"
#include "citedtcr/protocol.hpp"

namespace citedtcr {

/// Spearman rank correlation: Pearson correlation of average-ranked values,
/// ties receiving the mean of their rank range. Throws Error on sequences
/// shorter than 2, mismatched lengths, or an all-constant side.
double spearman(std::span<const double> x, std::span<const double> y);

/// Box-plot summary: median, quartiles by linear interpolation, whiskers at
/// the most extreme points within 1.5 IQR of the box, outliers beyond.
struct BoxSummary {
    double median = 0.0;
    double q1 = 0.0;
    double q3 = 0.0;
    double whisker_low = 0.0;
    double whisker_high = 0.0;
    std::vector<double> outliers;
};

BoxSummary box_summary(std::span<const double> values);

/// Per-period curator weights and base sets for an m = 0 replay, where the
/// graph sequence does not depend on reports and the solves can be shared
/// across runs and grid cells.
class ScoreTable {
public:
    static ScoreTable precompute(const ReplayPlan& plan, const SolverOptions& opts = {});

    std::size_t periods() const { return weights_.size(); }
    const std::vector<double>& weights(std::uint32_t period) const;
    const std::vector<std::uint32_t>& base(std::uint32_t period) const;

    /// Pool the selection draws for `period` run over: all nodes registered
    /// before the proposal, minus its references.
    std::vector<std::uint32_t> candidates(std::uint32_t period) const;

    /// Adapter for Engine; valid only for replays of the same plan at m = 0.
    ScoreProvider provider() const;

private:
    std::vector<std::vector<double>> weights_;
    std::vector<std::vector<std::uint32_t>> base_;
};

struct Exp1Config {
    std::uint32_t n_min = 1;
    std::uint32_t n_max = 20;
    std::uint32_t reps = 10;
    std::uint64_t master_seed = 0;
    SolverOptions solver = {};
    std::size_t jobs = 1;
};

struct Exp1Row {
    std::uint32_t n = 0;
    std::uint32_t rep = 0;
    std::uint64_t seed = 0;
    double rho = 0.0;
};

struct Exp1Result {
    std::vector<Exp1Row> rows;                    // reps per n, n ascending
    std::map<std::uint32_t, BoxSummary> summaries;  // per n
};

/// Correlation between curator-selection frequency over the replay and the
/// full-graph PageRank score, across curator counts and seeds. Runs at m = 0
/// with reports ignored; the PPR table may be shared via `table`.
Exp1Result experiment1(const ReplayPlan& plan, const Exp1Config& cfg,
                       const ScoreTable* table = nullptr);

struct Exp2Config {
    std::uint32_t n = 10;
    std::uint32_t grid_steps = 11;  // epsilon and q_zero in {0, 0.1, ..., 1}
    std::uint64_t master_seed = 0;
    SolverOptions solver = {};
    std::size_t jobs = 1;
    SignalModel::Mode signal_mode = SignalModel::Mode::TaskSignal;
};

struct Exp2Cell {
    double epsilon = 0.0;
    double q_zero = 0.0;
    double mean_theta = 0.0;  // net theta averaged over settled rewards
    double stderr_theta = 0.0;
    std::size_t settlements = 0;
    std::size_t unsettled = 0;
};

struct Exp2Result {
    std::vector<Exp2Cell> cells;  // epsilon-major, q ascending within
};

/// Mean settled DG13 reward per (epsilon, q_zero) cell over the full replay,
/// n = 10 and m = 0 fixed.
Exp2Result experiment2(const ReplayPlan& plan, const Exp2Config& cfg,
                       const ScoreTable* table = nullptr);

void write_exp1_rows_csv(const Exp1Result& result, std::ostream& out);
void write_exp1_summary_csv(const Exp1Result& result, std::ostream& out);
void write_exp2_csv(const Exp2Result& result, std::ostream& out);
void write_scores_csv(const ScoreVector& scores, std::ostream& out);  // node_id,score by id

}  // namespace citedtcr
