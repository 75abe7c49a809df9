#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "leadersel/graph.hpp"

namespace leadersel {

enum class GreedyMode { lazy, naive };

namespace detail {

struct GreedyOptions {
    int max_picks = 0;
    /// Stop once the objective is <= this value (checked after each pick).
    std::optional<double> stop_value;
    /// Extra stop predicate over (set, objective value), e.g. a worst-case
    /// check that avoids rounding at the truncation boundary.
    std::function<bool(const LeaderSet&, double)> stop_predicate;
    /// Gains <= this count as zero and terminate the loop.
    double gain_floor = 0.0;
    GreedyMode mode = GreedyMode::lazy;
};

struct GreedyOutcome {
    LeaderSet picks;
    std::vector<double> objective_trace;
    bool terminated_early = false;
    bool target_met = false;
};

/// Greedy minimization of a set objective over nodes 0..n-1. The first pick
/// minimizes the objective over singletons; later picks maximize the
/// marginal decrease. Ties break toward the lowest node id. Lazy mode uses
/// stale-gain upper bounds (valid for supermodular objectives) and selects
/// exactly the same nodes as naive mode.
GreedyOutcome greedy_minimize(int n,
                              const std::function<double(const LeaderSet&)>& f,
                              const GreedyOptions& options);

} // namespace detail
} // namespace leadersel
