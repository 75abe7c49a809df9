#include "leadersel/online_select.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "leadersel/error_metric.hpp"
#include "leadersel/exhaustive.hpp"
#include "leadersel/greedy.hpp"

namespace leadersel {

Eigen::VectorXd OnlineState::distribution(int i) const {
    return weights[i] / weights[i].sum();
}

namespace {

// Sample one node from `weights` with already-picked nodes masked out.
int sample_position(const Eigen::VectorXd& weights, const LeaderSet& picked,
                    RngStream& rng) {
    double mass = 0.0;
    for (int j = 0; j < weights.size(); ++j)
        if (!picked.contains(j)) mass += weights(j);
    const double target = rng.uniform() * mass;
    double acc = 0.0;
    int last = -1;
    for (int j = 0; j < weights.size(); ++j) {
        if (picked.contains(j)) continue;
        last = j;
        acc += weights(j);
        if (target < acc) return j;
    }
    return last;
}

} // namespace

OnlineState init_online(int n, int k, double beta, std::uint64_t seed) {
    if (n < 1) throw InvalidArgument("node count must be >= 1");
    if (k < 1 || k > n)
        throw InvalidK("k must lie in [1, " + std::to_string(n) + "]");
    if (beta <= 0.0 || beta > 1.0)
        throw InvalidArgument("beta must lie in (0, 1]");

    OnlineState state;
    state.n = n;
    state.k = k;
    state.beta = beta;
    state.t = 0;
    state.rng = RngStream(seed);
    state.weights.assign(k, Eigen::VectorXd::Ones(n));
    for (int i = 0; i < k; ++i)
        state.current.add(sample_position(state.weights[i], state.current,
                                          state.rng));
    return state;
}

StepOutcome online_step(OnlineState& state, const NoisyGraph& g_t) {
    if (g_t.node_count() != state.n)
        throw DimensionMismatch("topology has " +
                                std::to_string(g_t.node_count()) +
                                " nodes, state expects " +
                                std::to_string(state.n));

    StepOutcome outcome;
    outcome.selected = state.current;
    outcome.realized_error = total_error(g_t, state.current);
    outcome.losses = Eigen::MatrixXd::Zero(state.k, state.n);
    outcome.position_optima.resize(state.k);

    const double gain_floor = kGainTolerance * max_singleton_error(g_t);

    // Per-position losses against prefixes of the set that was active while
    // g_t was the topology.
    LeaderSet prefix;
    for (int i = 0; i < state.k; ++i) {
        Eigen::VectorXd gains(state.n);
        if (prefix.empty()) {
            // Position 0 ranks singletons; gains are measured against the
            // worst singleton so the loss scale stays in [0, 1].
            double worst = 0.0;
            Eigen::VectorXd singles(state.n);
            for (int j = 0; j < state.n; ++j) {
                singles(j) = total_error(g_t, LeaderSet({j}));
                worst = std::max(worst, singles(j));
            }
            for (int j = 0; j < state.n; ++j) gains(j) = worst - singles(j);
        } else {
            const double base = total_error(g_t, prefix);
            for (int j = 0; j < state.n; ++j)
                gains(j) = prefix.contains(j)
                               ? 0.0
                               : base - total_error(g_t, prefix.with(j));
        }

        int opt = 0;
        for (int j = 1; j < state.n; ++j)
            if (gains(j) > gains(opt)) opt = j;
        outcome.position_optima[i] = opt;

        const double opt_gain = gains(opt);
        if (opt_gain > gain_floor) {
            for (int j = 0; j < state.n; ++j) {
                const double loss =
                    std::clamp(1.0 - gains(j) / opt_gain, 0.0, 1.0);
                outcome.losses(i, j) = loss;
                state.weights[i](j) *= std::pow(state.beta, loss);
            }
            // rescale to keep weights away from underflow; distributions
            // are unaffected
            state.weights[i] /= state.weights[i].maxCoeff();
        }
        // opt_gain == 0: no information this round, weights untouched

        prefix.add(state.current.members()[i]);
    }

    LeaderSet next;
    for (int i = 0; i < state.k; ++i)
        next.add(sample_position(state.weights[i], next, state.rng));
    state.current = std::move(next);
    ++state.t;
    return outcome;
}

RegretReport regret_report(const std::vector<StepOutcome>& history,
                           const std::vector<NoisyGraph>& topologies, int k,
                           std::size_t brute_force_cap) {
    if (history.size() != topologies.size())
        throw DimensionMismatch("history and topology trace differ in length");
    if (history.empty()) throw InvalidArgument("history must be nonempty");
    const int n = topologies.front().node_count();
    if (k < 1 || k > n) throw InvalidK("k must lie in [1, n]");

    const std::size_t T = history.size();
    RegretReport report;

    // Cumulative totals per candidate fixed set.
    std::vector<std::vector<double>> cumulative; // candidate -> per-step
    std::vector<LeaderSet> candidates;
    report.brute_forced = subset_count(n, k) <= brute_force_cap;
    if (report.brute_forced) {
        for_each_subset(n, k, [&](const std::vector<int>& subset) {
            candidates.emplace_back(subset);
        });
    } else {
        // hindsight approximation: greedy on the summed objective
        detail::GreedyOptions options;
        options.max_picks = k;
        options.mode = GreedyMode::lazy;
        auto summed = [&](const LeaderSet& s) {
            double sum = 0.0;
            for (const NoisyGraph& g : topologies) sum += total_error(g, s);
            return sum;
        };
        candidates.push_back(
            detail::greedy_minimize(n, summed, options).picks);
    }

    cumulative.assign(candidates.size(), std::vector<double>(T, 0.0));
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        double acc = 0.0;
        for (std::size_t t = 0; t < T; ++t) {
            acc += total_error(topologies[t], candidates[c]);
            cumulative[c][t] = acc;
        }
    }

    double overall_max_singleton = 0.0;
    for (const NoisyGraph& g : topologies)
        overall_max_singleton =
            std::max(overall_max_singleton, max_singleton_error(g));

    constexpr double kScale = 1.0 - 1.0 / 2.718281828459045235360287471353;
    report.regret_curve.resize(T);
    report.reference_curve.resize(T);
    double realized = 0.0;
    std::size_t best_index = 0;
    for (std::size_t t = 0; t < T; ++t) {
        realized += history[t].realized_error;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < candidates.size(); ++c) {
            if (cumulative[c][t] < best) {
                best = cumulative[c][t];
                if (t + 1 == T) best_index = c;
            }
        }
        report.regret_curve[t] = kScale * realized - best;
        report.reference_curve[t] =
            std::sqrt(overall_max_singleton * static_cast<double>(k) *
                      static_cast<double>(t + 1) *
                      std::log(std::max(2, n)));
    }
    report.final_regret = report.regret_curve.back();
    report.hindsight_best = candidates[best_index];
    report.hindsight_total = cumulative[best_index][T - 1];
    return report;
}

} // namespace leadersel
