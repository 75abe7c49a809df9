#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "leadersel/graph.hpp"

namespace leadersel {

/// Exhaustive-search utilities for small instances. Used as independent
/// optima in guarantee checks and for hindsight-optimal fixed sets; none of
/// the greedy selectors call into this module.

/// Number of size-k subsets of an n-element set (saturating).
std::size_t subset_count(int n, int k);

/// Invokes fn for every size-k subset of {0..n-1} in lexicographic order.
void for_each_subset(int n, int k,
                     const std::function<void(const std::vector<int>&)>& fn);

struct ExhaustiveOptimum {
    LeaderSet set;
    double value = 0.0;
};

/// Minimum of f over all size-k leader sets.
ExhaustiveOptimum exhaustive_min(
    int n, int k, const std::function<double(const LeaderSet&)>& f);

/// Minimum system error over all size-k leader sets.
ExhaustiveOptimum brute_force_best_k(const NoisyGraph& g, int k);

/// Smallest k such that some size-k set has error <= alpha, with a witness.
ExhaustiveOptimum brute_force_min_leaders(const NoisyGraph& g, double alpha);

} // namespace leadersel
