#pragma once

#include <utility>
#include <vector>

#include "leadersel/graph.hpp"

namespace leadersel {

/// Steady-state mean-square error of the follower states, total and per
/// follower node.
struct ErrorReport {
    double total = 0.0;
    /// (follower id, error) pairs in ascending node id order.
    std::vector<std::pair<int, double>> per_node;
    LeaderSet leaders;
};

/// Relative tolerance below which a greedy gain counts as zero; scaled by
/// the largest single-leader error of the instance at hand.
inline constexpr double kGainTolerance = 1e-12;

/// Total and per-node error for leader set s: half the diagonal of the
/// inverse grounded Laplacian.
ErrorReport system_error(const NoisyGraph& g, const LeaderSet& s);

/// Total error only; the cheap path used inside selection loops.
double total_error(const NoisyGraph& g, const LeaderSet& s);
double total_error(const GroundedSystem& sys);

/// Error decrease from promoting v to leader: R(S) - R(S + v), always >= 0.
double marginal_gain(const NoisyGraph& g, const LeaderSet& s, int v);

/// Worst-case trace bound under independent link failures with probability
/// p. `trace_bound` follows the trace convention (no 1/2 factor);
/// `error_bound` is the same value halved for direct comparison with the
/// error metric.
struct GradientBound {
    double trace_bound = 0.0;
    double error_bound = 0.0;
};

GradientBound gradient_bound(const NoisyGraph& g, const LeaderSet& s, double p);

/// Largest error over all single-leader sets.
double max_singleton_error(const NoisyGraph& g);

} // namespace leadersel
