#include "leadersel/static_select.hpp"

#include <cmath>
#include <string>

#include "leadersel/error_metric.hpp"

namespace leadersel {

namespace {

SelectionResult from_outcome(detail::GreedyOutcome&& outcome) {
    SelectionResult result;
    result.leaders = std::move(outcome.picks);
    result.error_trace = std::move(outcome.objective_trace);
    result.terminated_early = outcome.terminated_early;
    return result;
}

} // namespace

SelectionResult select_static_k(const NoisyGraph& g, int k, GreedyMode mode) {
    if (k < 1 || k > g.node_count())
        throw InvalidK("k must lie in [1, " + std::to_string(g.node_count()) +
                       "], got " + std::to_string(k));

    detail::GreedyOptions options;
    options.max_picks = k;
    options.gain_floor = kGainTolerance * max_singleton_error(g);
    options.mode = mode;
    return from_outcome(detail::greedy_minimize(
        g.node_count(), [&](const LeaderSet& s) { return total_error(g, s); },
        options));
}

SelectionResult select_static_alpha(const NoisyGraph& g, double alpha,
                                    GreedyMode mode) {
    alpha = std::max(alpha, 0.0);

    detail::GreedyOptions options;
    options.max_picks = g.node_count();
    options.stop_value = alpha;
    options.gain_floor = kGainTolerance * max_singleton_error(g);
    options.mode = mode;
    return from_outcome(detail::greedy_minimize(
        g.node_count(), [&](const LeaderSet& s) { return total_error(g, s); },
        options));
}

GreedyBoundK greedy_bound_k(const NoisyGraph& g, int k) {
    if (k < 1) throw InvalidK("k must be >= 1");
    GreedyBoundK bound;
    const double ratio = static_cast<double>(k - 1) / static_cast<double>(k);
    bound.optimum_coefficient = 1.0 - std::pow(ratio, k);
    bound.constant_term = max_singleton_error(g) / std::exp(1.0);
    return bound;
}

} // namespace leadersel
