#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "citedtcr/errors.hpp"
#include "citedtcr/pagerank.hpp"
#include "support.hpp"

using namespace citedtcr;
using testsupport::dense_stationary;
using testsupport::l1_distance;

namespace {

void check_is_distribution(const std::vector<double>& v) {
    double sum = 0.0;
    for (double x : v) {
        CHECK(x >= 0.0);
        sum += x;
    }
    CHECK(std::abs(sum - 1.0) < 1e-9);
}

}  // namespace

TEST_CASE("single node concentrates all mass") {
    const auto g = CitationGraph::from_edges({42}, {});
    CHECK(pagerank(g).values == std::vector<double>{1.0});
    CHECK(ppr(g, {42}).values == std::vector<double>{1.0});
}

TEST_CASE("one undirected edge splits mass evenly") {
    const auto g = CitationGraph::from_edges({1, 2}, {{2, 1}});
    const auto scores = pagerank(g);
    CHECK(scores.values[0] == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(scores.values[1] == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("three-node path with one base node matches the dense solve") {
    const auto g = CitationGraph::from_edges({1, 2, 3}, {{2, 1}, {3, 2}});
    const auto scores = ppr(g, {1});
    const auto oracle = dense_stationary(g.undirected(),
                                         TeleportSpec::over_base({g.index_of(1)}), 0.15);
    CHECK(l1_distance(scores.values, oracle) < 1e-8);
}

TEST_CASE("star graph ranks the hub above the leaves") {
    const auto g = CitationGraph::from_edges({0, 1, 2, 3}, {{1, 0}, {2, 0}, {3, 0}});
    const auto scores = pagerank(g);
    const double hub = scores.at(0);
    for (NodeId leaf : {1u, 2u, 3u}) {
        CHECK(hub > scores.at(leaf));
        CHECK(scores.at(leaf) == doctest::Approx(scores.at(1)).epsilon(1e-12));
    }
}

TEST_CASE("ring graph is uniform by vertex-transitivity") {
    const std::size_t n = 6;
    std::vector<NodeId> ids(n);
    std::iota(ids.begin(), ids.end(), 0u);
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (std::size_t i = 0; i < n; ++i)
        edges.emplace_back(static_cast<NodeId>((i + 1) % n), static_cast<NodeId>(i));
    const auto scores = pagerank(CitationGraph::from_edges(ids, edges));
    for (double v : scores.values) CHECK(v == doctest::Approx(1.0 / n).epsilon(1e-9));
}

TEST_CASE("six-node fixture agrees with the dense oracle") {
    const auto g = CitationGraph::from_edges(
        {0, 1, 2, 3, 4, 5}, {{1, 0}, {2, 0}, {3, 1}, {4, 2}, {5, 3}, {5, 4}, {4, 1}});
    CHECK(l1_distance(pagerank(g).values,
                      dense_stationary(g.undirected(), TeleportSpec::uniform(), 0.15)) < 1e-8);
}

TEST_CASE("base covering every node degenerates to pagerank") {
    const auto g = CitationGraph::from_edges(
        {0, 1, 2, 3, 4}, {{1, 0}, {2, 1}, {3, 1}, {4, 3}, {4, 0}});
    const auto full = pagerank(g).values;
    const auto base_all = ppr(g, {0, 1, 2, 3, 4}).values;
    CHECK(l1_distance(full, base_all) < 1e-9);
}

TEST_CASE("node cut off from the base keeps only teleport-floor mass") {
    // 0-1-2 connected; 3 isolated
    const auto g = CitationGraph::from_edges({0, 1, 2, 3}, {{1, 0}, {2, 1}});
    const auto scores = ppr(g, {0});
    const auto oracle = dense_stationary(g.undirected(),
                                         TeleportSpec::over_base({g.index_of(0)}), 0.15);
    CHECK(l1_distance(scores.values, oracle) < 1e-8);
    CHECK(scores.at(3) < 1e-9);

    // under uniform teleport the isolated node retains its alpha-driven floor
    const auto uniform_scores = pagerank(g);
    CHECK(uniform_scores.at(3) > 0.15 / 4.0 * 0.9);
    CHECK(l1_distance(uniform_scores.values,
                      dense_stationary(g.undirected(), TeleportSpec::uniform(), 0.15)) < 1e-8);
}

TEST_CASE("base neighbors outrank equally-degreed distant nodes") {
    // eight nodes: 0,1 form the base; 2,3 touch it; 6,7 sit three hops away
    // with the same degrees as 2,3
    const auto g = CitationGraph::from_edges({0, 1, 2, 3, 4, 5, 6, 7},
                                             {{2, 0}, {3, 1}, {4, 2}, {5, 3}, {6, 4}, {7, 5},
                                              {7, 6}, {3, 0}, {2, 1}});
    const auto scores = ppr(g, {0, 1});
    const auto oracle = dense_stationary(
        g.undirected(), TeleportSpec::over_base({g.index_of(0), g.index_of(1)}), 0.15);
    CHECK(l1_distance(scores.values, oracle) < 1e-8);
    CHECK(scores.at(2) > scores.at(6));
    CHECK(scores.at(3) > scores.at(7));
}

TEST_CASE("property: output is a distribution and matches the dense oracle") {
    Rng rng(777001);
    int checked = 0;
    while (checked < 220) {
        const std::size_t n = 1 + rng.below(12);
        const auto g = testsupport::random_directed_graph(rng, n, 0.1 + 0.4 * rng.uniform());
        const double alpha = 0.05 + 0.9 * rng.uniform();

        TeleportSpec teleport;
        if (n > 1 && rng.bernoulli(0.6)) {
            const std::size_t base_size = 1 + rng.below(n);
            std::vector<std::uint32_t> base;
            for (std::uint32_t i = 0; i < n && base.size() < base_size; ++i)
                if (rng.bernoulli(0.5)) base.push_back(i);
            if (base.empty()) base.push_back(static_cast<std::uint32_t>(rng.below(n)));
            teleport = TeleportSpec::over_base(base);
        }

        const auto scores = power_iterate(g.undirected(), teleport, {alpha, 1e-12, 200000});
        check_is_distribution(scores);
        CHECK(l1_distance(scores, dense_stationary(g.undirected(), teleport, alpha)) < 1e-8);
        ++checked;
    }
}

TEST_CASE("property: relabeling nodes permutes the scores") {
    Rng rng(555);
    for (int round = 0; round < 20; ++round) {
        const std::size_t n = 3 + rng.below(9);
        const auto g = testsupport::random_directed_graph(rng, n, 0.3);

        // relabel by reversing the insertion order
        std::vector<NodeId> reversed_ids(g.nodes().rbegin(), g.nodes().rend());
        std::vector<std::pair<NodeId, NodeId>> edges;
        const auto& out = g.out_edges();
        for (std::uint32_t i = 0; i < n; ++i)
            for (std::uint32_t t : out[i]) edges.emplace_back(g.id_at(i), g.id_at(t));
        const auto h = CitationGraph::from_edges(reversed_ids, edges);

        const auto sg = pagerank(g, {0.15, 1e-12, 100000});
        const auto sh = pagerank(h, {0.15, 1e-12, 100000});
        for (NodeId id : g.nodes()) CHECK(sg.at(id) == doctest::Approx(sh.at(id)).epsilon(1e-7));
    }
}

TEST_CASE("alpha zero gives the degree-proportional walk distribution") {
    // connected and non-bipartite (triangle present)
    const auto g = CitationGraph::from_edges({0, 1, 2, 3}, {{1, 0}, {2, 1}, {2, 0}, {3, 2}});
    const auto scores = pagerank(g, {0.0, 1e-12, 100000});
    const auto ppr_scores = ppr(g, {0}, {0.0, 1e-12, 100000});
    double total_degree = 0.0;
    for (std::uint32_t i = 0; i < g.node_count(); ++i) total_degree += g.undirected_degree(i);
    for (std::uint32_t i = 0; i < g.node_count(); ++i) {
        const double expected = g.undirected_degree(i) / total_degree;
        CHECK(scores.values[i] == doctest::Approx(expected).epsilon(1e-8));
        CHECK(ppr_scores.values[i] == doctest::Approx(expected).epsilon(1e-8));
    }
}

TEST_CASE("error paths") {
    const auto g = CitationGraph::from_edges({0, 1}, {{1, 0}});
    CHECK_THROWS_AS(power_iterate({}, TeleportSpec::uniform(), {}), Error);
    CHECK_THROWS_AS(power_iterate(g.undirected(), TeleportSpec::over_base({}), {}), Error);
    CHECK_THROWS_AS(ppr(g, {}), Error);
    CHECK_THROWS_AS(ppr(g, {99}), Error);
    const auto path = CitationGraph::from_edges({0, 1, 2}, {{1, 0}, {2, 1}});
    CHECK_THROWS_AS(power_iterate(path.undirected(), TeleportSpec::uniform(), {0.15, 1e-30, 2}),
                    NoConvergence);
}
