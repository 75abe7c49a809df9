#pragma once

#include <cstdint>
#include <map>

#include "leadersel/error_metric.hpp"
#include "leadersel/graph.hpp"

namespace leadersel {

/// Monte Carlo estimate of the round-trip time u -> leader set -> u.
struct WalkEstimate {
    double mean = 0.0;
    double stderr_ = 0.0;
    long long walks = 0;
    int u = -1;
    LeaderSet leaders;
};

/// Probabilities of reaching the target node before the absorbing leader
/// set, for every start node.
struct HittingProbabilities {
    std::map<int, double> v_star;
    int target = -1;
    LeaderSet absorbing;
};

/// Row-stochastic transition matrix P(i,j) = nu_ij^{-1} / D_i.
Eigen::MatrixXd transition_matrix(const NoisyGraph& g);

/// Probability that a walk from each node reaches u before the set s.
/// Boundary conditions: 1 at u, 0 on s; harmonic elsewhere.
HittingProbabilities hitting_probabilities(const NoisyGraph& g,
                                           const LeaderSet& s, int u);

/// Closed-form expected round-trip time u -> s -> u:
/// (2 * sum of inverse variances) * (L_ff^{-1})_uu.
double commute_time_exact(const NoisyGraph& g, const LeaderSet& s, int u);

/// Per-walk step cap; exceeded only on numerical pathologies since the
/// graph is connected by construction.
inline constexpr long long kWalkStepCap = 100'000'000;

/// Simulated round-trip times. Each walk uses its own substream of `seed`,
/// so the estimate is reproducible regardless of scheduling. `threads`
/// caps worker threads (1 = sequential).
WalkEstimate commute_time_sampled(const NoisyGraph& g, const LeaderSet& s,
                                  int u, long long walks, std::uint64_t seed,
                                  int threads = 1);

} // namespace leadersel
