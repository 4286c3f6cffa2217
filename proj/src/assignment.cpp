#include "citedtcr/assignment.hpp"

#include <algorithm>

#include "citedtcr/errors.hpp"

namespace citedtcr {

std::vector<std::uint32_t> select_curators(std::span<const double> weights,
                                           std::vector<std::uint32_t> candidates, std::size_t n,
                                           Rng& rng) {
    if (candidates.size() < n)
        throw Error("insufficient candidates: " + std::to_string(candidates.size()) + " < " +
                    std::to_string(n));
    for (std::uint32_t c : candidates)
        if (c >= weights.size()) throw Error("candidate index out of score range");

    std::vector<std::uint32_t> picked;
    picked.reserve(n);
    double total = 0.0;
    for (std::uint32_t c : candidates) total += weights[c];

    while (picked.size() < n) {
        std::size_t chosen;
        if (total > 0.0) {
            double u = rng.uniform() * total;
            chosen = candidates.size() - 1;  // guard against rounding past the end
            for (std::size_t i = 0; i < candidates.size(); ++i) {
                const double w = weights[candidates[i]];
                if (u < w) {
                    chosen = i;
                    break;
                }
                u -= w;
            }
            // rounding may land on a zero-weight tail entry; walk back to mass
            while (weights[candidates[chosen]] == 0.0 && chosen > 0) --chosen;
        } else {
            chosen = static_cast<std::size_t>(rng.below(candidates.size()));
        }
        picked.push_back(candidates[chosen]);
        total -= weights[candidates[chosen]];
        candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(chosen));
        if (total < 0.0) total = 0.0;
    }
    return picked;
}

CurationOutcome curation(std::span<const double> weights, std::vector<std::uint32_t> candidates,
                         std::size_t n, const QueryFn& query, Rng& rng) {
    CurationOutcome out;
    std::size_t need = n;
    while (need > 0) {
        if (candidates.size() < need)
            throw Error("candidate pool exhausted: " + std::to_string(candidates.size()) +
                        " left, " + std::to_string(need) + " reports missing");
        ++out.rounds;
        const auto selected = select_curators(weights, candidates, need, rng);
        for (std::uint32_t node : selected) {
            out.queried.push_back(node);
            if (auto report = query(node)) {
                out.reports.emplace_back(node, *report);
                --need;
            }
            candidates.erase(std::find(candidates.begin(), candidates.end(), node));
        }
    }
    return out;
}

}  // namespace citedtcr
