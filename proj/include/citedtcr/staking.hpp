#pragma once

#include <cstdint>

namespace citedtcr {

/// Token-staking round: n curators each stake `stake` tokens on one side,
/// n_star of them land on the consensus, and the loser pool is redistributed.
struct StakingScenario {
    double p = 0.5;          // subjective probability of siding with consensus
    double stake = 1.0;      // tokens staked per curator
    std::uint32_t n = 2;     // total curators
    std::uint32_t n_star = 1;  // curators on the consensus side
    double cost = 0.0;       // per-curation cost

    void validate() const;  // throws Error on an invalid scenario
};

/// Net winner payout: the redistributed loser stakes per consensus curator,
/// (n - n_star) / n_star * stake.
double staking_net_reward(const StakingScenario& s);

/// Expected reward E(k) = p (k - cost) - (1 - p) (stake + cost).
double staking_expected_reward(const StakingScenario& s);

enum class RewardSign { Negative, Zero, Positive };

/// Sign of E(k) at zero cost, decided by comparing the odds ratio
/// [p / (1-p)] / [n_star / (n - n_star)] to 1. Undefined at p in {0, 1} or
/// n_star = n.
RewardSign odds_ratio_sign(const StakingScenario& s);

}  // namespace citedtcr
