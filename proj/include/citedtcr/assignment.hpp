#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "citedtcr/rng.hpp"

namespace citedtcr {

/// Draws n distinct entries from `candidates`, each draw weighted by
/// `weights[candidate]` with renormalization over the remainder. Zero-weight
/// candidates become drawable (uniformly) only once every positive-weight
/// candidate is taken. Throws Error when |candidates| < n.
std::vector<std::uint32_t> select_curators(std::span<const double> weights,
                                           std::vector<std::uint32_t> candidates, std::size_t n,
                                           Rng& rng);

/// Answers one curator query with a report bit, or nothing when the curator
/// does not respond in time.
using QueryFn = std::function<std::optional<std::uint8_t>(std::uint32_t node_index)>;

struct CurationOutcome {
    /// (node index, report) in collection order; exactly n entries.
    std::vector<std::pair<std::uint32_t, std::uint8_t>> reports;
    /// every node selected across all rounds, responsive or not
    std::vector<std::uint32_t> queried;
    std::size_t rounds = 0;
};

/// Report collection with reselection: selects curators by weight, queries
/// them, removes every queried node from the pool, and repeats on the
/// shrunken pool until n reports are in hand. No node is queried twice.
/// Throws Error when the pool runs out first.
CurationOutcome curation(std::span<const double> weights, std::vector<std::uint32_t> candidates,
                         std::size_t n, const QueryFn& query, Rng& rng);

}  // namespace citedtcr
