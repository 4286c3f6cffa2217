#pragma once

#include <cstdint>
#include <vector>

#include "citedtcr/graph.hpp"

namespace citedtcr {

/// Where the damped walk jumps with probability alpha.
struct TeleportSpec {
    enum class Mode { UniformAll, UniformBase };

    Mode mode = Mode::UniformAll;
    std::vector<std::uint32_t> base;  // node indices; required in base mode

    static TeleportSpec uniform() { return {}; }
    static TeleportSpec over_base(std::vector<std::uint32_t> base_indices) {
        return {Mode::UniformBase, std::move(base_indices)};
    }
};

struct SolverOptions {
    double alpha = 0.15;
    double tol = 1e-10;  // l1 residual
    std::uint32_t max_iter = 10000;
};

/// Stationary distribution of the damped walk over `adjacency`:
///
///   P_mode = (1 - alpha) * P + alpha * T
///
/// where P is the row-stochastic walk matrix of the symmetric adjacency and
/// T teleports to the mode's distribution. Rows of isolated nodes are
/// replaced by T. The returned vector v satisfies |v - v*P_mode|_1 < tol.
/// Throws NoConvergence when max_iter is exhausted, Error on bad inputs.
std::vector<double> power_iterate(const AdjacencyList& adjacency, const TeleportSpec& teleport,
                                  const SolverOptions& opts);

/// Probability distribution over a graph's nodes, aligned with insertion
/// order. Entries are >= 0 and sum to 1 within 1e-9.
struct ScoreVector {
    std::vector<NodeId> ids;
    std::vector<double> values;

    double at(NodeId id) const;  // linear in |ids|; convenience only
};

/// Full PageRank over the undirected view (uniform teleport).
ScoreVector pagerank(const CitationGraph& graph, const SolverOptions& opts = {});

/// Personalized PageRank over the undirected view, teleporting uniformly to
/// the non-empty base set.
ScoreVector ppr(const CitationGraph& graph, const std::vector<NodeId>& base,
                const SolverOptions& opts = {});

}  // namespace citedtcr
