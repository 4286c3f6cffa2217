#include "citedtcr/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <mutex>
#include <numeric>
#include <ostream>
#include <thread>

#include "citedtcr/assignment.hpp"
#include "citedtcr/errors.hpp"

namespace citedtcr {
namespace {

std::string fmt_g(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

std::vector<double> average_ranks(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        const double shared = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = shared;
        i = j + 1;
    }
    return ranks;
}

// spread work items over `jobs` threads; items must be independent
void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& fn) {
    jobs = std::max<std::size_t>(1, std::min(jobs, count));
    if (jobs == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> cursor{0};
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    std::atomic<bool> failed{false};
    std::string first_error;
    std::mutex error_mutex;
    for (std::size_t t = 0; t < jobs; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = cursor.fetch_add(1);
                if (i >= count || failed.load()) return;
                try {
                    fn(i);
                } catch (const std::exception& e) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!failed.exchange(true)) first_error = e.what();
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failed.load()) throw Error("experiment worker failed: " + first_error);
}

}  // namespace

double spearman(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw Error("spearman: length mismatch");
    if (x.size() < 2) throw Error("spearman: need at least 2 observations");

    const auto rx = average_ranks(x);
    const auto ry = average_ranks(y);
    const double n = static_cast<double>(x.size());
    const double mean = (n + 1.0) / 2.0;

    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = rx[i] - mean;
        const double dy = ry[i] - mean;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) throw Error("spearman: degenerate constant input");
    return sxy / std::sqrt(sxx * syy);
}

BoxSummary box_summary(std::span<const double> values) {
    if (values.empty()) throw Error("box_summary: empty input");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());

    const auto interpolate = [&](double fraction) {
        const double pos = fraction * static_cast<double>(sorted.size() - 1);
        const auto lo = static_cast<std::size_t>(pos);
        const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
        const double frac = pos - static_cast<double>(lo);
        return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
    };

    BoxSummary box;
    box.median = interpolate(0.5);
    box.q1 = interpolate(0.25);
    box.q3 = interpolate(0.75);
    const double iqr = box.q3 - box.q1;
    const double lo_fence = box.q1 - 1.5 * iqr;
    const double hi_fence = box.q3 + 1.5 * iqr;
    box.whisker_low = box.q3;
    box.whisker_high = box.q1;
    for (double v : sorted) {
        if (v >= lo_fence && v <= hi_fence) {
            box.whisker_low = std::min(box.whisker_low, v);
            box.whisker_high = std::max(box.whisker_high, v);
        } else {
            box.outliers.push_back(v);
        }
    }
    return box;
}

ScoreTable ScoreTable::precompute(const ReplayPlan& plan, const SolverOptions& opts) {
    ScoreTable table;
    table.weights_.reserve(plan.proposals.size());
    table.base_.reserve(plan.proposals.size());
    CitationGraph g = plan.initial_graph;
    for (const Proposal& p : plan.proposals) {
        std::vector<std::uint32_t> base;
        base.reserve(p.references.size());
        for (NodeId ref : p.references) base.push_back(g.index_of(ref));
        table.weights_.push_back(
            power_iterate(g.undirected(), TeleportSpec::over_base(base), opts));
        table.base_.push_back(std::move(base));
        g.apply(p, SIZE_MAX);
    }
    return table;
}

const std::vector<double>& ScoreTable::weights(std::uint32_t period) const {
    if (period >= weights_.size()) throw Error("score table has no period " + std::to_string(period));
    return weights_[period];
}

const std::vector<std::uint32_t>& ScoreTable::base(std::uint32_t period) const {
    if (period >= base_.size()) throw Error("score table has no period " + std::to_string(period));
    return base_[period];
}

std::vector<std::uint32_t> ScoreTable::candidates(std::uint32_t period) const {
    const auto& w = weights(period);
    const auto& b = base(period);
    std::vector<bool> excluded(w.size(), false);
    for (std::uint32_t idx : b) excluded[idx] = true;
    std::vector<std::uint32_t> out;
    out.reserve(w.size() - b.size());
    for (std::uint32_t i = 0; i < w.size(); ++i)
        if (!excluded[i]) out.push_back(i);
    return out;
}

ScoreProvider ScoreTable::provider() const {
    return [this](std::uint32_t period, const CitationGraph& graph,
                  const std::vector<std::uint32_t>& base) {
        const auto& w = weights(period);
        if (w.size() != graph.node_count())
            throw Error("score table does not match the replayed graph at period " +
                        std::to_string(period));
        if (base != this->base(period))
            throw Error("score table base set mismatch at period " + std::to_string(period));
        return w;
    };
}

Exp1Result experiment1(const ReplayPlan& plan, const Exp1Config& cfg, const ScoreTable* table) {
    if (cfg.n_min == 0 || cfg.n_min > cfg.n_max) throw Error("experiment1: bad n range");
    ScoreTable local;
    if (!table) {
        local = ScoreTable::precompute(plan, cfg.solver);
        table = &local;
    }

    const CitationGraph full = plan.replay();
    const ScoreVector pr = pagerank(full, cfg.solver);
    const std::size_t total_nodes = full.node_count();
    const std::size_t periods = table->periods();

    // candidate pools are identical across runs; build them once
    std::vector<std::vector<std::uint32_t>> pools(periods);
    for (std::uint32_t t = 0; t < periods; ++t) pools[t] = table->candidates(t);

    const std::uint32_t n_count = cfg.n_max - cfg.n_min + 1;
    Exp1Result result;
    result.rows.resize(static_cast<std::size_t>(n_count) * cfg.reps);

    parallel_for(result.rows.size(), cfg.jobs, [&](std::size_t slot) {
        const std::uint32_t n = cfg.n_min + static_cast<std::uint32_t>(slot) / cfg.reps;
        const std::uint32_t rep = static_cast<std::uint32_t>(slot) % cfg.reps;
        const std::uint64_t seed = derive_seed(cfg.master_seed, slot);
        Rng rng(seed);

        std::vector<double> frequency(total_nodes, 0.0);
        for (std::uint32_t t = 0; t < periods; ++t) {
            const auto picked = select_curators(table->weights(t), pools[t], n, rng);
            for (std::uint32_t idx : picked) frequency[idx] += 1.0;
        }
        result.rows[slot] = {n, rep, seed, spearman(frequency, pr.values)};
    });

    for (std::uint32_t n = cfg.n_min; n <= cfg.n_max; ++n) {
        std::vector<double> coefficients;
        coefficients.reserve(cfg.reps);
        for (const auto& row : result.rows)
            if (row.n == n) coefficients.push_back(row.rho);
        result.summaries.emplace(n, box_summary(coefficients));
    }
    return result;
}

Exp2Result experiment2(const ReplayPlan& plan, const Exp2Config& cfg, const ScoreTable* table) {
    if (cfg.grid_steps < 2) throw Error("experiment2: grid needs at least 2 steps");
    ScoreTable local;
    if (!table) {
        local = ScoreTable::precompute(plan, cfg.solver);
        table = &local;
    }

    const std::vector<NodeId> everyone = plan.all_nodes();
    const std::size_t cells = static_cast<std::size_t>(cfg.grid_steps) * cfg.grid_steps;
    Exp2Result result;
    result.cells.resize(cells);

    parallel_for(cells, cfg.jobs, [&](std::size_t cell) {
        const std::uint32_t ei = static_cast<std::uint32_t>(cell) / cfg.grid_steps;
        const std::uint32_t qi = static_cast<std::uint32_t>(cell) % cfg.grid_steps;
        const double epsilon = static_cast<double>(ei) / (cfg.grid_steps - 1);
        const double q_zero = static_cast<double>(qi) / (cfg.grid_steps - 1);

        const std::uint64_t cell_master = derive_seed(cfg.master_seed, cell);
        Rng alloc_rng(derive_seed(cell_master, 0));
        const auto strategies = allocate_strategies(everyone, epsilon, alloc_rng);
        SignalModel signals = allocate_signals(everyone, q_zero, alloc_rng);
        signals.mode = cfg.signal_mode;

        AgentTable agents;
        for (NodeId id : everyone) agents.set({id, strategies.at(id), 1.0});

        SimConfig sim;
        sim.n = cfg.n;
        sim.m = 0;
        sim.alpha = cfg.solver.alpha;
        sim.tol = cfg.solver.tol;
        sim.max_iter = cfg.solver.max_iter;
        sim.seed = derive_seed(cell_master, 1);

        const RunResult run_result =
            run(sim, plan, agents, signals, RefPolicy::Strict, table->provider());

        double sum = 0.0, sum_sq = 0.0;
        const auto& entries = run_result.ledger.entries();
        for (const LedgerEntry& e : entries) {
            sum += e.theta;
            sum_sq += static_cast<double>(e.theta) * e.theta;
        }
        Exp2Cell& out = result.cells[cell];
        out.epsilon = epsilon;
        out.q_zero = q_zero;
        out.settlements = entries.size();
        out.unsettled = run_result.pending_unsettled;
        if (!entries.empty()) {
            const double count = static_cast<double>(entries.size());
            out.mean_theta = sum / count;
            const double variance =
                entries.size() > 1 ? std::max(0.0, (sum_sq - sum * sum / count) / (count - 1.0))
                                   : 0.0;
            out.stderr_theta = std::sqrt(variance / count);
        }
    });
    return result;
}

void write_exp1_rows_csv(const Exp1Result& result, std::ostream& out) {
    out << "n,rep,seed,spearman\n";
    for (const auto& row : result.rows)
        out << row.n << ',' << row.rep << ',' << row.seed << ',' << fmt_g(row.rho) << '\n';
}

void write_exp1_summary_csv(const Exp1Result& result, std::ostream& out) {
    out << "n,median,q1,q3,wlo,whi,outliers\n";
    for (const auto& [n, box] : result.summaries) {
        out << n << ',' << fmt_g(box.median) << ',' << fmt_g(box.q1) << ',' << fmt_g(box.q3)
            << ',' << fmt_g(box.whisker_low) << ',' << fmt_g(box.whisker_high) << ',';
        for (std::size_t i = 0; i < box.outliers.size(); ++i) {
            if (i) out << ';';
            out << fmt_g(box.outliers[i]);
        }
        out << '\n';
    }
}

void write_exp2_csv(const Exp2Result& result, std::ostream& out) {
    out << "epsilon,q_zero,mean_theta,stderr,settlements\n";
    char eps[16], q[16];
    for (const Exp2Cell& cell : result.cells) {
        std::snprintf(eps, sizeof(eps), "%.1f", cell.epsilon);
        std::snprintf(q, sizeof(q), "%.1f", cell.q_zero);
        out << eps << ',' << q << ',' << fmt_g(cell.mean_theta) << ','
            << fmt_g(cell.stderr_theta) << ',' << cell.settlements << '\n';
    }
}

void write_scores_csv(const ScoreVector& scores, std::ostream& out) {
    out << "node_id,score\n";
    std::vector<std::size_t> order(scores.ids.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores.ids[a] < scores.ids[b]; });
    for (std::size_t i : order)
        out << scores.ids[i] << ',' << fmt_g(scores.values[i]) << '\n';
}

}  // namespace citedtcr
