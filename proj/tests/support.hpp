#pragma once

// Shared helpers for the test suites: random graph builders and the dense
// stationary-distribution oracle kept independent of the sparse solver.

#include <algorithm>
#include <vector>

#include <Eigen/Dense>

#include "citedtcr/dataset.hpp"
#include "citedtcr/graph.hpp"
#include "citedtcr/pagerank.hpp"
#include "citedtcr/rng.hpp"

namespace testsupport {

using citedtcr::AdjacencyList;
using citedtcr::CitationGraph;
using citedtcr::NodeId;
using citedtcr::Rng;

/// Random DAG grown the way the protocol grows one: a seed pair plus
/// proposals citing earlier nodes.
inline citedtcr::ReplayPlan random_replay(Rng& rng, std::size_t total_nodes,
                                          std::size_t initial_count, std::size_t max_refs) {
    std::vector<NodeId> ids(total_nodes);
    for (std::size_t i = 0; i < total_nodes; ++i) ids[i] = static_cast<NodeId>(100 + i);

    std::vector<std::pair<NodeId, NodeId>> initial_edges;
    for (std::size_t i = 1; i < initial_count; ++i) {
        const std::size_t cites = 1 + rng.below(std::min(i, max_refs));
        std::vector<std::size_t> targets;
        while (targets.size() < cites) {
            const std::size_t t = rng.below(i);
            if (std::find(targets.begin(), targets.end(), t) == targets.end())
                targets.push_back(t);
        }
        for (std::size_t t : targets) initial_edges.emplace_back(ids[i], ids[t]);
    }

    citedtcr::ReplayPlan plan;
    plan.initial_graph = CitationGraph::from_edges(
        std::vector<NodeId>(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(initial_count)),
        initial_edges);
    for (std::size_t i = initial_count; i < total_nodes; ++i) {
        const std::size_t cites = 1 + rng.below(std::min(i, max_refs));
        std::vector<NodeId> refs;
        while (refs.size() < cites) {
            const NodeId r = ids[rng.below(i)];
            if (std::find(refs.begin(), refs.end(), r) == refs.end()) refs.push_back(r);
        }
        std::sort(refs.begin(), refs.end());
        plan.proposals.push_back({ids[i], std::move(refs)});
    }
    return plan;
}

/// Arbitrary directed graph (not necessarily acyclic), optionally with
/// isolated nodes; node ids are 0..n-1.
inline CitationGraph random_directed_graph(Rng& rng, std::size_t n, double edge_prob) {
    std::vector<NodeId> ids(n);
    for (std::size_t i = 0; i < n; ++i) ids[i] = static_cast<NodeId>(i);
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && rng.uniform() < edge_prob) edges.emplace_back(ids[i], ids[j]);
    return CitationGraph::from_edges(ids, edges);
}

/// Dense stationary distribution of the damped walk, built from the explicit
/// row-stochastic matrix and solved as a linear system (one balance row
/// replaced by the normalization constraint).
inline std::vector<double> dense_stationary(const AdjacencyList& adjacency,
                                            const citedtcr::TeleportSpec& teleport, double alpha) {
    const std::size_t n = adjacency.size();
    Eigen::VectorXd tele = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    if (teleport.mode == citedtcr::TeleportSpec::Mode::UniformAll) {
        tele.setConstant(1.0 / static_cast<double>(n));
    } else {
        for (std::uint32_t b : teleport.base)
            tele[static_cast<Eigen::Index>(b)] += 1.0 / static_cast<double>(teleport.base.size());
    }

    Eigen::MatrixXd walk = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                                 static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        if (adjacency[i].empty()) {
            walk.row(static_cast<Eigen::Index>(i)) = tele.transpose();
        } else {
            const double w = 1.0 / static_cast<double>(adjacency[i].size());
            for (std::uint32_t j : adjacency[i]) walk(static_cast<Eigen::Index>(i),
                                                      static_cast<Eigen::Index>(j)) += w;
        }
    }
    const Eigen::MatrixXd damped =
        (1.0 - alpha) * walk + alpha * Eigen::VectorXd::Ones(static_cast<Eigen::Index>(n)) *
                                   tele.transpose();

    // (I - P^T) v = 0 with sum(v) = 1 replacing the last balance equation
    Eigen::MatrixXd system = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n),
                                                       static_cast<Eigen::Index>(n)) -
                             damped.transpose();
    system.row(static_cast<Eigen::Index>(n - 1)).setOnes();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    rhs[static_cast<Eigen::Index>(n - 1)] = 1.0;
    const Eigen::VectorXd v = system.fullPivLu().solve(rhs);
    return std::vector<double>(v.data(), v.data() + n);
}

inline double l1_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double out = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) out += std::abs(a[i] - b[i]);
    return out;
}

}  // namespace testsupport
