#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace citedtcr {

/// Stable content identifier. Insertion order into a graph is the time order.
using NodeId = std::uint32_t;

/// Dense per-graph adjacency, indexed by insertion position.
using AdjacencyList = std::vector<std::vector<std::uint32_t>>;

/// A new node plus its reference set; implied edges run from `node` to each
/// reference.
struct Proposal {
    NodeId node = 0;
    std::vector<NodeId> references;  // non-empty, within the target graph

    bool operator==(const Proposal&) const = default;
};

/// Evolving DAG-structured list. Nodes are kept in insertion order; edges are
/// stored per node as directed out-lists plus a deduplicated undirected view
/// that is maintained incrementally.
class CitationGraph {
public:
    CitationGraph() = default;

    /// Builds a graph from an explicit node order and directed edge list.
    /// Unknown endpoints throw; self-loops and duplicates are kept so that
    /// validate_dag can report them.
    static CitationGraph from_edges(std::vector<NodeId> nodes,
                                    const std::vector<std::pair<NodeId, NodeId>>& edges);

    std::size_t node_count() const { return nodes_.size(); }
    std::size_t edge_count() const { return edge_count_; }
    bool empty() const { return nodes_.empty(); }

    bool has_node(NodeId id) const { return index_.find(id) != index_.end(); }
    std::uint32_t index_of(NodeId id) const;  // throws Error if absent
    NodeId id_at(std::uint32_t index) const { return nodes_.at(index); }

    /// Node ids in insertion order.
    const std::vector<NodeId>& nodes() const { return nodes_; }

    /// Directed citation lists by node index.
    const AdjacencyList& out_edges() const { return out_; }

    /// Symmetric neighbor lists by node index: j appears in row i iff an edge
    /// exists in either direction. Reciprocal pairs collapse to one entry.
    const AdjacencyList& undirected() const { return und_; }

    std::size_t undirected_degree(std::uint32_t index) const { return und_.at(index).size(); }

    /// In-place state transition used by the engine. Validates the proposal
    /// (node new, references present, non-empty, unique, within `ref_cap`).
    void apply(const Proposal& p, std::size_t ref_cap);

private:
    void push_node(NodeId id);

    std::vector<NodeId> nodes_;
    std::unordered_map<NodeId, std::uint32_t> index_;
    AdjacencyList out_;
    AdjacencyList und_;
    std::size_t edge_count_ = 0;
};

/// Outcome of a structural check; `violation` names the first offence.
struct DagReport {
    bool ok = true;
    std::string violation;
};

/// Checks acyclicity, absence of self-loops and duplicate edges. Violations
/// are returned, never thrown. Endpoint membership is enforced structurally
/// at construction.
DagReport validate_dag(const CitationGraph& graph);

/// Throws Error when the proposal cannot be applied to `graph`.
void validate_proposal(const CitationGraph& graph, const Proposal& p, std::size_t ref_cap);

/// Pure state transition: returns a copy of `graph` extended by the proposal.
CitationGraph apply_proposal(const CitationGraph& graph, const Proposal& p,
                             std::size_t ref_cap = 50);

/// Curator candidate pool: every member node except the proposal's
/// references, in insertion order.
std::vector<NodeId> candidate_set(const CitationGraph& graph, const Proposal& p);

/// Same pool as node indices; used on the engine's hot path.
std::vector<std::uint32_t> candidate_indices(const CitationGraph& graph, const Proposal& p);

}  // namespace citedtcr
