#pragma once

#include <optional>
#include <vector>

#include "leadersel/greedy.hpp"

namespace leadersel {

/// Outcome of a greedy selection run. `error_trace[i]` is the objective
/// after the (i+1)-th pick, so it has one entry per selected leader.
struct SelectionResult {
    LeaderSet leaders;
    std::vector<double> error_trace;
    /// Guarantee value when the instance's optimum is known (small cases).
    std::optional<double> bound;
    bool terminated_early = false;
    /// Accepted error level, set by the switching bisection.
    std::optional<double> final_alpha;
    /// Set when the switching bisection never met its size budget.
    bool infeasible_budget = false;
};

/// Greedy selection of up to k leaders minimizing the system error.
SelectionResult select_static_k(const NoisyGraph& g, int k,
                                GreedyMode mode = GreedyMode::lazy);

/// Greedy selection of the smallest set with error <= alpha. Negative
/// alpha is clamped to zero.
SelectionResult select_static_alpha(const NoisyGraph& g, double alpha,
                                    GreedyMode mode = GreedyMode::lazy);

/// The two terms of the greedy size-k guarantee: the selected error is at
/// most `optimum_coefficient * optimum + constant_term`.
struct GreedyBoundK {
    double optimum_coefficient = 0.0; // 1 - ((k-1)/k)^k
    double constant_term = 0.0;       // R_max / e

    double evaluate(double optimum) const {
        return optimum_coefficient * optimum + constant_term;
    }
};

GreedyBoundK greedy_bound_k(const NoisyGraph& g, int k);

} // namespace leadersel
