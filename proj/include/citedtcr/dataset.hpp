#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "citedtcr/graph.hpp"

namespace citedtcr {

/// Parsed citation edges plus ingest drop counters.
struct EdgeList {
    std::vector<std::pair<NodeId, NodeId>> edges;
    std::size_t dropped_self_loops = 0;
    std::size_t dropped_duplicates = 0;
};

/// Reads SNAP edge-list text: one `<from>\t<to>` pair per line, `#` comments
/// skipped, self-loops and duplicate edges dropped with counts. Malformed
/// lines raise ParseError with the line number.
EdgeList parse_snap_edge_list(std::istream& in);
EdgeList parse_snap_edge_list(std::string_view text);

/// Restricts the edge list to the weakly connected component containing
/// `seed`. Throws Error when the seed does not appear in the list.
EdgeList extract_component(const EdgeList& edges, NodeId seed);

/// Time proxy used to order nodes for the replay.
enum class NodeOrder {
    AscendingId,  // SNAP HEP-TH ids embed the submission date
    FileOrder,    // first appearance in the edge list
};

/// An initial graph plus the time-ordered proposal stream that rebuilds the
/// full dataset graph when replayed.
struct ReplayPlan {
    CitationGraph initial_graph;
    std::vector<Proposal> proposals;

    // ingest statistics, not serialized
    std::size_t dropped_forward_edges = 0;
    std::size_t skipped_empty_proposals = 0;

    /// Every node the plan can ever register, in time order.
    std::vector<NodeId> all_nodes() const;

    /// Applies every proposal in order; throws on any invalid step. This is
    /// the structural replay: the protocol engine enforces its own
    /// reference cap.
    CitationGraph replay(std::size_t ref_cap = SIZE_MAX) const;

    std::string to_json() const;
    static ReplayPlan from_json(std::string_view text);
};

/// Splits an edge list into G_0 (the first `initial_count` nodes and the
/// edges among them) and one proposal per later node. Only edges pointing
/// strictly backward in `order` survive; forward edges are dropped and
/// counted. Nodes whose references all vanish are excluded and counted.
ReplayPlan build_replay(const EdgeList& edges, NodeOrder order, std::size_t initial_count);

}  // namespace citedtcr
