#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "citedtcr/errors.hpp"
#include "citedtcr/graph.hpp"
#include "support.hpp"

using namespace citedtcr;

TEST_CASE("empty graph is a valid DAG") {
    CHECK(validate_dag(CitationGraph{}).ok);
}

TEST_CASE("two-cycle is rejected") {
    const auto g = CitationGraph::from_edges({1, 2}, {{1, 2}, {2, 1}});
    const auto report = validate_dag(g);
    CHECK_FALSE(report.ok);
    CHECK(report.violation.find("cycle") != std::string::npos);
}

TEST_CASE("self-loop and duplicate edges are named") {
    const auto loop = CitationGraph::from_edges({5}, {{5, 5}});
    CHECK(validate_dag(loop).violation.find("self-loop") != std::string::npos);

    const auto dup = CitationGraph::from_edges({3, 7}, {{3, 7}, {3, 7}});
    CHECK(validate_dag(dup).violation.find("duplicate") != std::string::npos);
}

TEST_CASE("unknown endpoints cannot be constructed") {
    CHECK_THROWS_AS(CitationGraph::from_edges({1}, {{1, 2}}), Error);
}

TEST_CASE("apply_proposal adds the node and its edges without touching the input") {
    const auto g = CitationGraph::from_edges({10}, {});
    const Proposal p{11, {10}};
    const auto next = apply_proposal(g, p);

    CHECK(next.node_count() == 2);
    CHECK(next.edge_count() == 1);
    CHECK(next.has_node(11));
    CHECK(next.out_edges()[next.index_of(11)] ==
          std::vector<std::uint32_t>{next.index_of(10)});
    CHECK(g.node_count() == 1);
    CHECK_FALSE(g.has_node(11));
    CHECK(validate_dag(next).ok);
}

TEST_CASE("proposal validation catches every malformed case") {
    const auto g = CitationGraph::from_edges({1, 2}, {{2, 1}});
    CHECK_THROWS_AS(validate_proposal(g, {1, {2}}, 50), Error);      // node taken
    CHECK_THROWS_AS(validate_proposal(g, {9, {}}, 50), Error);       // empty refs
    CHECK_THROWS_AS(validate_proposal(g, {9, {42}}, 50), Error);     // unknown ref
    CHECK_THROWS_AS(validate_proposal(g, {9, {1, 1}}, 50), Error);   // duplicate ref
    CHECK_THROWS_AS(validate_proposal(g, {9, {1, 2}}, 1), Error);    // over the cap
    CHECK_NOTHROW(validate_proposal(g, {9, {1, 2}}, 2));
}

TEST_CASE("candidate set excludes the references and the proposer") {
    const auto g = CitationGraph::from_edges({1, 2, 3}, {{2, 1}, {3, 2}});
    const Proposal p{9, {1}};
    CHECK(candidate_set(g, p) == std::vector<NodeId>{2, 3});

    const Proposal all{9, {1, 2, 3}};
    CHECK(candidate_set(g, all).empty());
}

TEST_CASE("candidate set on the seven-node list") {
    // proposal referencing {A, B} out of {A..G} leaves the other five
    const std::vector<NodeId> ids = {1, 2, 3, 4, 5, 6, 7};
    const auto g = CitationGraph::from_edges(
        ids, {{2, 1}, {3, 1}, {4, 2}, {5, 3}, {6, 4}, {7, 5}});
    const Proposal p{8, {1, 2}};
    CHECK(candidate_set(g, p) == std::vector<NodeId>{3, 4, 5, 6, 7});
}

TEST_CASE("undirected view is symmetric and deduplicated") {
    const auto g = CitationGraph::from_edges({1, 2, 3}, {{2, 1}, {1, 2}, {3, 1}});
    const auto& und = g.undirected();
    const auto i1 = g.index_of(1), i2 = g.index_of(2), i3 = g.index_of(3);
    CHECK(und[i1] == std::vector<std::uint32_t>{i2, i3});  // reciprocal pair collapsed
    CHECK(und[i2] == std::vector<std::uint32_t>{i1});
    CHECK(und[i3] == std::vector<std::uint32_t>{i1});
}

TEST_CASE("isolated node has no undirected neighbors") {
    const auto g = CitationGraph::from_edges({1, 2, 3}, {{2, 1}});
    CHECK(g.undirected_degree(g.index_of(3)) == 0);
}

TEST_CASE("property: random growth keeps every invariant") {
    Rng rng(20240917);
    for (int round = 0; round < 25; ++round) {
        const auto plan = testsupport::random_replay(rng, 30, 5, 4);
        CitationGraph g = plan.initial_graph;
        REQUIRE(validate_dag(g).ok);
        for (const auto& p : plan.proposals) {
            const auto before_nodes = g.node_count();
            const auto before_edges = g.edge_count();
            const auto candidates = candidate_set(g, p);
            for (NodeId ref : p.references) {
                CHECK(std::find(candidates.begin(), candidates.end(), ref) == candidates.end());
            }
            CHECK(std::find(candidates.begin(), candidates.end(), p.node) == candidates.end());

            g.apply(p, 50);
            CHECK(g.node_count() == before_nodes + 1);
            CHECK(g.edge_count() == before_edges + p.references.size());
            CHECK(validate_dag(g).ok);
        }

        // undirected symmetry over the final graph
        const auto& und = g.undirected();
        std::size_t degree_sum = 0;
        for (std::uint32_t i = 0; i < g.node_count(); ++i) {
            degree_sum += und[i].size();
            for (std::uint32_t j : und[i]) {
                CHECK(std::find(und[j].begin(), und[j].end(), i) != und[j].end());
            }
        }
        // no reciprocal directed pairs can form in a replay, so the sum is 2|E|
        CHECK(degree_sum == 2 * g.edge_count());
    }
}
