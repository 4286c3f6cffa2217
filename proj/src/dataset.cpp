#include "citedtcr/dataset.hpp"

#include <algorithm>
#include <deque>
#include <istream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "citedtcr/errors.hpp"

namespace citedtcr {
namespace {

std::uint64_t edge_key(NodeId from, NodeId to) {
    return (static_cast<std::uint64_t>(from) << 32) | to;
}

}  // namespace

EdgeList parse_snap_edge_list(std::istream& in) {
    EdgeList out;
    std::unordered_set<std::uint64_t> seen;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;

        std::istringstream fields(line);
        long long from = 0, to = 0;
        if (!(fields >> from >> to) || from < 0 || to < 0)
            throw ParseError("expected two non-negative integers, got '" + line + "'", line_no);
        std::string trailing;
        if (fields >> trailing)
            throw ParseError("trailing content '" + trailing + "'", line_no);

        const NodeId f = static_cast<NodeId>(from);
        const NodeId t = static_cast<NodeId>(to);
        if (f == t) {
            ++out.dropped_self_loops;
            continue;
        }
        if (!seen.insert(edge_key(f, t)).second) {
            ++out.dropped_duplicates;
            continue;
        }
        out.edges.emplace_back(f, t);
    }
    return out;
}

EdgeList parse_snap_edge_list(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_snap_edge_list(in);
}

EdgeList extract_component(const EdgeList& edges, NodeId seed) {
    std::unordered_map<NodeId, std::vector<NodeId>> neighbors;
    for (const auto& [f, t] : edges.edges) {
        neighbors[f].push_back(t);
        neighbors[t].push_back(f);
    }
    if (neighbors.find(seed) == neighbors.end())
        throw Error("unknown node " + std::to_string(seed) + " for component extraction");

    std::unordered_set<NodeId> member = {seed};
    std::deque<NodeId> frontier = {seed};
    while (!frontier.empty()) {
        const NodeId u = frontier.front();
        frontier.pop_front();
        for (NodeId v : neighbors[u])
            if (member.insert(v).second) frontier.push_back(v);
    }

    EdgeList out;
    for (const auto& e : edges.edges)
        if (member.count(e.first)) out.edges.push_back(e);
    return out;
}

ReplayPlan build_replay(const EdgeList& edges, NodeOrder order, std::size_t initial_count) {
    // assemble the node ordering
    std::vector<NodeId> nodes;
    {
        std::unordered_set<NodeId> known;
        for (const auto& [f, t] : edges.edges) {
            if (known.insert(f).second) nodes.push_back(f);
            if (known.insert(t).second) nodes.push_back(t);
        }
    }
    if (order == NodeOrder::AscendingId) std::sort(nodes.begin(), nodes.end());

    if (initial_count == 0) throw Error("initial_count must be positive");
    if (initial_count >= nodes.size())
        throw Error("initial_count " + std::to_string(initial_count) +
                    " must be below the node count " + std::to_string(nodes.size()));

    std::unordered_map<NodeId, std::size_t> rank;
    for (std::size_t i = 0; i < nodes.size(); ++i) rank.emplace(nodes[i], i);

    // out-edges by source rank, keeping only strictly backward citations
    ReplayPlan plan;
    std::vector<std::vector<NodeId>> backward(nodes.size());
    for (const auto& [f, t] : edges.edges) {
        if (rank[f] > rank[t])
            backward[rank[f]].push_back(t);
        else
            ++plan.dropped_forward_edges;
    }

    std::vector<std::pair<NodeId, NodeId>> initial_edges;
    for (std::size_t i = 0; i < initial_count; ++i)
        for (NodeId t : backward[i]) initial_edges.emplace_back(nodes[i], t);
    // a single seed node cannot have internal edges; anything larger must
    if (initial_edges.empty() && initial_count > 1)
        throw Error("initial graph has no edges");

    plan.initial_graph = CitationGraph::from_edges(
        std::vector<NodeId>(nodes.begin(), nodes.begin() + initial_count), initial_edges);

    // later nodes become proposals; references must land on retained nodes
    std::vector<bool> retained(nodes.size(), false);
    for (std::size_t i = 0; i < initial_count; ++i) retained[i] = true;
    for (std::size_t i = initial_count; i < nodes.size(); ++i) {
        std::vector<NodeId> refs;
        for (NodeId t : backward[i]) {
            if (retained[rank[t]])
                refs.push_back(t);
            else
                ++plan.dropped_forward_edges;  // casualty of an earlier skip
        }
        if (refs.empty()) {
            ++plan.skipped_empty_proposals;
            continue;
        }
        std::sort(refs.begin(), refs.end());
        retained[i] = true;
        plan.proposals.push_back({nodes[i], std::move(refs)});
    }
    return plan;
}

std::vector<NodeId> ReplayPlan::all_nodes() const {
    std::vector<NodeId> out = initial_graph.nodes();
    out.reserve(out.size() + proposals.size());
    for (const auto& p : proposals) out.push_back(p.node);
    return out;
}

CitationGraph ReplayPlan::replay(std::size_t ref_cap) const {
    CitationGraph g = initial_graph;
    for (const auto& p : proposals) g.apply(p, ref_cap);
    return g;
}

std::string ReplayPlan::to_json() const {
    nlohmann::ordered_json doc;
    doc["initial_nodes"] = initial_graph.nodes();
    auto edges = nlohmann::ordered_json::array();
    const auto& out = initial_graph.out_edges();
    for (std::uint32_t i = 0; i < initial_graph.node_count(); ++i)
        for (std::uint32_t t : out[i])
            edges.push_back({initial_graph.id_at(i), initial_graph.id_at(t)});
    doc["initial_edges"] = std::move(edges);
    auto props = nlohmann::ordered_json::array();
    for (const auto& p : proposals)
        props.push_back({{"node", p.node}, {"refs", p.references}});
    doc["proposals"] = std::move(props);
    return doc.dump();
}

ReplayPlan ReplayPlan::from_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("invalid replay plan JSON: ") + e.what());
    }
    if (!doc.contains("initial_nodes") || !doc.contains("initial_edges") ||
        !doc.contains("proposals"))
        throw Error("replay plan JSON missing initial_nodes/initial_edges/proposals");

    ReplayPlan plan;
    std::vector<NodeId> nodes = doc["initial_nodes"].get<std::vector<NodeId>>();
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (const auto& e : doc["initial_edges"])
        edges.emplace_back(e.at(0).get<NodeId>(), e.at(1).get<NodeId>());
    plan.initial_graph = CitationGraph::from_edges(std::move(nodes), edges);
    for (const auto& p : doc["proposals"])
        plan.proposals.push_back(
            {p.at("node").get<NodeId>(), p.at("refs").get<std::vector<NodeId>>()});
    return plan;
}

}  // namespace citedtcr
