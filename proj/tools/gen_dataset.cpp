// Generates the synthetic citation slice shipped under data/. The layout
// mirrors the arXiv HEP-TH excerpt used by the simulations: time-ordered
// node ids, every node citing strictly earlier nodes, one weakly connected
// component, and a preferential-attachment citation pattern with a recency
// bias so that in-degrees follow a heavy tail.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "citedtcr/assignment.hpp"
#include "citedtcr/rng.hpp"

namespace {

std::size_t sample_poisson(citedtcr::Rng& rng, double lambda) {
    const double limit = std::exp(-lambda);
    std::size_t k = 0;
    double p = 1.0;
    do {
        ++k;
        p *= rng.uniform();
    } while (p > limit);
    return k - 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"synthetic time-ordered citation slice generator"};

    std::size_t nodes = 1421;
    std::uint64_t seed = 7;
    double mean_extra_refs = 4.6;  // references per node = 1 + Poisson(mean)
    double attachment_offset = 1.0;
    double recency_tau = 420.0;  // 0 disables the recency decay
    std::size_t max_refs = 26;
    std::string out_path = "data/hepth_slice.tsv";

    app.add_option("--nodes", nodes, "total node count")->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "generator seed");
    app.add_option("--mean-refs", mean_extra_refs, "Poisson mean of extra references");
    app.add_option("--attachment", attachment_offset, "additive smoothing of in-degree weights");
    app.add_option("--recency", recency_tau, "recency decay scale in nodes (0 = off)");
    app.add_option("--max-refs", max_refs, "cap on references per node");
    app.add_option("--out", out_path, "output path");
    CLI11_PARSE(app, argc, argv);

    citedtcr::Rng rng(seed);
    const auto id_of = [](std::size_t k) { return static_cast<std::uint32_t>(200000 + 7 * k); };

    std::vector<std::size_t> in_degree(nodes, 0);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    std::vector<double> weights(nodes, 0.0);
    std::vector<std::uint32_t> pool(nodes);
    std::iota(pool.begin(), pool.end(), 0u);

    for (std::size_t k = 1; k < nodes; ++k) {
        const std::size_t refs = std::min({k, max_refs, 1 + sample_poisson(rng, mean_extra_refs)});
        for (std::size_t j = 0; j < k; ++j) {
            const double age = static_cast<double>(k - 1 - j);
            const double decay = recency_tau > 0.0 ? std::exp(-age / recency_tau) : 1.0;
            weights[j] = (static_cast<double>(in_degree[j]) + attachment_offset) * decay;
        }
        const auto targets = citedtcr::select_curators(
            std::span<const double>(weights.data(), k),
            std::vector<std::uint32_t>(pool.begin(), pool.begin() + static_cast<long>(k)), refs,
            rng);
        for (std::uint32_t j : targets) {
            edges.emplace_back(id_of(k), id_of(j));
            ++in_degree[j];
        }
    }

    std::ofstream out(out_path);
    if (!out) {
        std::cerr << "cannot open " << out_path << " for writing\n";
        return 1;
    }
    out << "# Synthetic directed citation slice (" << nodes << " nodes, " << edges.size()
        << " edges)\n";
    out << "# Generated by citedtcr-gen-dataset --nodes " << nodes << " --seed " << seed
        << " --mean-refs " << mean_extra_refs << " --attachment " << attachment_offset
        << " --recency " << recency_tau << " --max-refs " << max_refs << "\n";
    out << "# FromNodeId\tToNodeId\n";
    for (const auto& [f, t] : edges) out << f << '\t' << t << '\n';

    std::cout << "wrote " << edges.size() << " edges over " << nodes << " nodes to " << out_path
              << "\n";
    return 0;
}
