#include "leadersel/exhaustive.hpp"

#include <limits>
#include <numeric>

#include "leadersel/error_metric.hpp"

namespace leadersel {

std::size_t subset_count(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::size_t c = 1;
    for (int i = 1; i <= k; ++i) {
        const std::size_t next = c * static_cast<std::size_t>(n - k + i) /
                                 static_cast<std::size_t>(i);
        if (next < c) return std::numeric_limits<std::size_t>::max();
        c = next;
    }
    return c;
}

void for_each_subset(int n, int k,
                     const std::function<void(const std::vector<int>&)>& fn) {
    if (k < 0 || k > n) return;
    std::vector<int> subset(k);
    std::iota(subset.begin(), subset.end(), 0);
    if (k == 0) {
        fn(subset);
        return;
    }
    while (true) {
        fn(subset);
        int i = k - 1;
        while (i >= 0 && subset[i] == n - k + i) --i;
        if (i < 0) break;
        ++subset[i];
        for (int j = i + 1; j < k; ++j) subset[j] = subset[j - 1] + 1;
    }
}

ExhaustiveOptimum exhaustive_min(
    int n, int k, const std::function<double(const LeaderSet&)>& f) {
    ExhaustiveOptimum best;
    best.value = std::numeric_limits<double>::infinity();
    for_each_subset(n, k, [&](const std::vector<int>& subset) {
        LeaderSet candidate(subset);
        const double value = f(candidate);
        if (value < best.value) {
            best.value = value;
            best.set = std::move(candidate);
        }
    });
    return best;
}

ExhaustiveOptimum brute_force_best_k(const NoisyGraph& g, int k) {
    return exhaustive_min(g.node_count(), k,
                          [&](const LeaderSet& s) { return total_error(g, s); });
}

ExhaustiveOptimum brute_force_min_leaders(const NoisyGraph& g, double alpha) {
    for (int k = 1; k <= g.node_count(); ++k) {
        ExhaustiveOptimum best = brute_force_best_k(g, k);
        if (best.value <= alpha) return best;
    }
    ExhaustiveOptimum all;
    all.set = LeaderSet(
        [&] {
            std::vector<int> ids(g.node_count());
            std::iota(ids.begin(), ids.end(), 0);
            return ids;
        }());
    all.value = 0.0;
    return all;
}

} // namespace leadersel
