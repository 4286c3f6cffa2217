#include "citedtcr/staking.hpp"

#include "citedtcr/errors.hpp"

namespace citedtcr {

void StakingScenario::validate() const {
    if (p < 0.0 || p > 1.0) throw Error("invalid scenario: p must lie in [0, 1]");
    if (stake <= 0.0) throw Error("invalid scenario: stake must be positive");
    if (n_star == 0 || n_star > n) throw Error("invalid scenario: need 0 < n_star <= n");
    if (cost < 0.0) throw Error("invalid scenario: cost must be non-negative");
}

double staking_net_reward(const StakingScenario& s) {
    s.validate();
    return static_cast<double>(s.n - s.n_star) / static_cast<double>(s.n_star) * s.stake;
}

double staking_expected_reward(const StakingScenario& s) {
    s.validate();
    const double k = staking_net_reward(s);
    return s.p * (k - s.cost) - (1.0 - s.p) * (s.stake + s.cost);
}

RewardSign odds_ratio_sign(const StakingScenario& s) {
    s.validate();
    if (s.p <= 0.0 || s.p >= 1.0) throw Error("odds undefined at p in {0, 1}");
    if (s.n_star == s.n) throw Error("odds undefined when every curator sides with consensus");
    const double subjective = s.p / (1.0 - s.p);
    const double actual = static_cast<double>(s.n_star) / static_cast<double>(s.n - s.n_star);
    const double ratio = subjective / actual;
    if (ratio > 1.0) return RewardSign::Positive;
    if (ratio < 1.0) return RewardSign::Negative;
    return RewardSign::Zero;
}

}  // namespace citedtcr
