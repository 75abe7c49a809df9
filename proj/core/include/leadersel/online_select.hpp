#pragma once

#include <cstdint>
#include <vector>

#include "leadersel/graph.hpp"
#include "leadersel/rng.hpp"

namespace leadersel {

/// Multiplicative-weights learner state for time-varying topologies. One
/// positive weight vector per leader position; sampling distributions are
/// the normalized weights. Single-owner mutable; steps are sequential.
struct OnlineState {
    int n = 0;
    int k = 0;
    double beta = 1.0;
    long long t = 0;
    std::vector<Eigen::VectorXd> weights; // k vectors of length n, > 0
    /// Leader set in effect for the upcoming step (sampled at the end of
    /// the previous one).
    LeaderSet current;
    RngStream rng{0};

    /// Normalized copy of position i's weights.
    Eigen::VectorXd distribution(int i) const;
};

/// What one revealed topology produced: the set that was active, its
/// realized error, and the per-position losses in [0, 1] used to update the
/// weights.
struct StepOutcome {
    LeaderSet selected;
    double realized_error = 0.0;
    Eigen::MatrixXd losses; // k x n
    std::vector<int> position_optima;
};

/// Uniform weights, step counter zero, initial set sampled uniformly
/// without replacement.
OnlineState init_online(int n, int k, double beta, std::uint64_t seed);

/// Consumes the topology revealed for the current step: scores the active
/// set, updates weights from the per-position losses, and samples the set
/// for the next step (duplicates resampled without replacement).
StepOutcome online_step(OnlineState& state, const NoisyGraph& g_t);

struct RegretReport {
    /// Cumulative scaled error minus the best fixed hindsight set, per step.
    std::vector<double> regret_curve;
    /// sqrt(R_max * k * t * log n) reference shape for plotting.
    std::vector<double> reference_curve;
    double final_regret = 0.0;
    LeaderSet hindsight_best;
    double hindsight_total = 0.0;
    /// False when the size-k search space exceeded the cap and the
    /// hindsight set was approximated greedily on the summed objective.
    bool brute_forced = true;
};

/// Regret of a played history against the best fixed size-k set on the same
/// topology sequence.
RegretReport regret_report(const std::vector<StepOutcome>& history,
                           const std::vector<NoisyGraph>& topologies, int k,
                           std::size_t brute_force_cap = 200000);

} // namespace leadersel
