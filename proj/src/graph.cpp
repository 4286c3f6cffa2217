#include "citedtcr/graph.hpp"

#include <algorithm>
#include <unordered_set>

#include "citedtcr/errors.hpp"

namespace citedtcr {

void CitationGraph::push_node(NodeId id) {
    if (has_node(id)) throw Error("duplicate node id " + std::to_string(id));
    index_.emplace(id, static_cast<std::uint32_t>(nodes_.size()));
    nodes_.push_back(id);
    out_.emplace_back();
    und_.emplace_back();
}

std::uint32_t CitationGraph::index_of(NodeId id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw Error("unknown node id " + std::to_string(id));
    return it->second;
}

CitationGraph CitationGraph::from_edges(std::vector<NodeId> nodes,
                                        const std::vector<std::pair<NodeId, NodeId>>& edges) {
    CitationGraph g;
    g.nodes_.reserve(nodes.size());
    g.out_.reserve(nodes.size());
    g.und_.reserve(nodes.size());
    for (NodeId id : nodes) g.push_node(id);
    for (const auto& [from, to] : edges) {
        const std::uint32_t f = g.index_of(from);
        const std::uint32_t t = g.index_of(to);
        g.out_[f].push_back(t);
        ++g.edge_count_;
        if (f != t) {
            g.und_[f].push_back(t);
            g.und_[t].push_back(f);
        }
    }
    // collapse reciprocal pairs and duplicates in the undirected view
    for (auto& row : g.und_) {
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
    }
    return g;
}

void validate_proposal(const CitationGraph& graph, const Proposal& p, std::size_t ref_cap) {
    if (graph.has_node(p.node))
        throw Error("invalid proposal: node " + std::to_string(p.node) + " already registered");
    if (p.references.empty()) throw Error("invalid proposal: empty reference set");
    if (p.references.size() > ref_cap)
        throw Error("invalid proposal: " + std::to_string(p.references.size()) +
                    " references exceed cap " + std::to_string(ref_cap));
    std::unordered_set<NodeId> seen;
    for (NodeId ref : p.references) {
        if (!graph.has_node(ref))
            throw Error("invalid proposal: reference " + std::to_string(ref) + " not registered");
        if (!seen.insert(ref).second)
            throw Error("invalid proposal: duplicate reference " + std::to_string(ref));
    }
}

void CitationGraph::apply(const Proposal& p, std::size_t ref_cap) {
    validate_proposal(*this, p, ref_cap);
    push_node(p.node);
    const std::uint32_t x = static_cast<std::uint32_t>(nodes_.size() - 1);
    for (NodeId ref : p.references) {
        const std::uint32_t t = index_of(ref);
        out_[x].push_back(t);
        und_[x].push_back(t);
        und_[t].push_back(x);  // x is newest, so the row stays sorted
        ++edge_count_;
    }
}

CitationGraph apply_proposal(const CitationGraph& graph, const Proposal& p, std::size_t ref_cap) {
    CitationGraph next = graph;
    next.apply(p, ref_cap);
    return next;
}

DagReport validate_dag(const CitationGraph& graph) {
    const auto& out = graph.out_edges();
    const std::size_t n = graph.node_count();

    for (std::size_t i = 0; i < n; ++i) {
        std::unordered_set<std::uint32_t> seen;
        for (std::uint32_t t : out[i]) {
            if (t == i)
                return {false, "self-loop at node " + std::to_string(graph.id_at(i))};
            if (!seen.insert(t).second)
                return {false, "duplicate edge " + std::to_string(graph.id_at(i)) + "->" +
                                   std::to_string(graph.id_at(t))};
        }
    }

    // Kahn's algorithm; leftover nodes lie on a cycle
    std::vector<std::uint32_t> indegree(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::uint32_t t : out[i]) ++indegree[t];
    std::vector<std::uint32_t> frontier;
    for (std::size_t i = 0; i < n; ++i)
        if (indegree[i] == 0) frontier.push_back(static_cast<std::uint32_t>(i));
    std::size_t visited = 0;
    while (!frontier.empty()) {
        const std::uint32_t u = frontier.back();
        frontier.pop_back();
        ++visited;
        for (std::uint32_t t : out[u])
            if (--indegree[t] == 0) frontier.push_back(t);
    }
    if (visited != n) {
        for (std::size_t i = 0; i < n; ++i)
            if (indegree[i] > 0)
                return {false, "cycle involving node " + std::to_string(graph.id_at(i))};
    }
    return {};
}

std::vector<NodeId> candidate_set(const CitationGraph& graph, const Proposal& p) {
    std::vector<NodeId> out;
    out.reserve(graph.node_count());
    for (std::uint32_t idx : candidate_indices(graph, p)) out.push_back(graph.id_at(idx));
    return out;
}

std::vector<std::uint32_t> candidate_indices(const CitationGraph& graph, const Proposal& p) {
    std::vector<bool> excluded(graph.node_count(), false);
    for (NodeId ref : p.references)
        if (graph.has_node(ref)) excluded[graph.index_of(ref)] = true;
    std::vector<std::uint32_t> out;
    out.reserve(graph.node_count() - p.references.size());
    for (std::uint32_t i = 0; i < graph.node_count(); ++i)
        if (!excluded[i]) out.push_back(i);
    return out;
}

}  // namespace citedtcr
