#include "citedtcr/pagerank.hpp"

#include <algorithm>
#include <cmath>

#include "citedtcr/errors.hpp"

namespace citedtcr {

std::vector<double> power_iterate(const AdjacencyList& adjacency, const TeleportSpec& teleport,
                                  const SolverOptions& opts) {
    const std::size_t n = adjacency.size();
    if (n == 0) throw Error("power iteration over an empty graph");
    if (opts.alpha < 0.0 || opts.alpha > 1.0) throw Error("alpha must lie in [0, 1]");
    if (opts.tol <= 0.0) throw Error("tol must be positive");
    if (teleport.mode == TeleportSpec::Mode::UniformBase) {
        if (teleport.base.empty()) throw Error("base mode requires a non-empty base set");
        for (std::uint32_t b : teleport.base)
            if (b >= n) throw Error("base index out of range");
    }

    // teleport distribution
    std::vector<double> tele(n, 0.0);
    if (teleport.mode == TeleportSpec::Mode::UniformAll) {
        std::fill(tele.begin(), tele.end(), 1.0 / static_cast<double>(n));
    } else {
        const double w = 1.0 / static_cast<double>(teleport.base.size());
        for (std::uint32_t b : teleport.base) tele[b] += w;
    }

    std::vector<double> inv_degree(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        if (!adjacency[i].empty()) inv_degree[i] = 1.0 / static_cast<double>(adjacency[i].size());

    std::vector<double> v(n, 1.0 / static_cast<double>(n));
    std::vector<double> next(n, 0.0);

    const double alpha = opts.alpha;
    for (std::uint32_t iter = 0; iter < opts.max_iter; ++iter) {
        // mass sitting on isolated nodes follows the teleport distribution
        double dangling = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            if (adjacency[i].empty()) dangling += v[i];

        const double jump = alpha + (1.0 - alpha) * dangling;
        for (std::size_t i = 0; i < n; ++i) next[i] = jump * tele[i];
        for (std::size_t i = 0; i < n; ++i) {
            const double share = (1.0 - alpha) * v[i] * inv_degree[i];
            if (share == 0.0) continue;
            for (std::uint32_t j : adjacency[i]) next[j] += share;
        }

        double residual = 0.0;
        for (std::size_t i = 0; i < n; ++i) residual += std::abs(next[i] - v[i]);
        v.swap(next);
        if (residual < opts.tol) {
            // the map is l1-nonexpansive, so the new iterate meets the bound too
            double sum = 0.0;
            for (double x : v) sum += x;
            for (double& x : v) x /= sum;
            return v;
        }
    }

    double residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) residual += std::abs(v[i] - next[i]);
    throw NoConvergence(residual, opts.max_iter);
}

double ScoreVector::at(NodeId id) const {
    for (std::size_t i = 0; i < ids.size(); ++i)
        if (ids[i] == id) return values[i];
    throw Error("score vector has no entry for node " + std::to_string(id));
}

ScoreVector pagerank(const CitationGraph& graph, const SolverOptions& opts) {
    ScoreVector out;
    out.ids = graph.nodes();
    out.values = power_iterate(graph.undirected(), TeleportSpec::uniform(), opts);
    return out;
}

ScoreVector ppr(const CitationGraph& graph, const std::vector<NodeId>& base,
                const SolverOptions& opts) {
    if (base.empty()) throw Error("ppr requires a non-empty base set");
    std::vector<std::uint32_t> base_indices;
    base_indices.reserve(base.size());
    for (NodeId id : base) base_indices.push_back(graph.index_of(id));
    ScoreVector out;
    out.ids = graph.nodes();
    out.values = power_iterate(graph.undirected(), TeleportSpec::over_base(std::move(base_indices)),
                               opts);
    return out;
}

}  // namespace citedtcr
