#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "leadersel/error_metric.hpp"
#include "leadersel/graph.hpp"

namespace leadersel {

/// How link noise enters the integrator. `aggregated` draws one process per
/// follower with the intensity the per-link noises aggregate to; `per_link`
/// draws each directed measurement's noise explicitly (diagnostic; must
/// agree statistically); `none` disables noise to expose the deterministic
/// contraction to the desired state.
enum class NoiseMode { aggregated, per_link, none };

/// Configuration of one leader-follower trajectory.
struct DynamicsConfig {
    NoisyGraph graph;
    LeaderSet leaders;
    /// Per-edge target differences, aligned with graph.edges(): entry e is
    /// the desired x_i - x_j for canonical edge (i < j). Empty means all
    /// zero (plain consensus).
    std::vector<double> offsets;
    /// Fixed leader states aligned with leaders' order. Empty means all 0.
    std::vector<double> leader_states;
    double dt = 1e-3;
    double horizon = 2000.0;
    double burn_in = 0.5; // fraction of the horizon discarded
    std::uint64_t seed = 0;
    NoiseMode noise = NoiseMode::aggregated;
};

/// Steady-state statistics of one integrated trajectory next to the
/// closed-form prediction.
struct SimulationSummary {
    double empirical_mse = 0.0;
    std::vector<std::pair<int, double>> per_node_variance;
    ErrorReport analytic;
    double relative_gap = 0.0;
    long long samples = 0;
    /// Post-burn-in mean deviation from the desired state per follower,
    /// with a batch-means standard error (samples are autocorrelated).
    std::vector<std::pair<int, double>> mean_deviation;
    std::vector<std::pair<int, double>> mean_deviation_stderr;
};

/// Equilibrium follower states for the configured offsets and leader
/// states. Throws InconsistentOffsets when no state vector realizes the
/// per-edge targets.
Eigen::VectorXd desired_state(const DynamicsConfig& cfg);

/// Euler-Maruyama integration of the follower dynamics; the step size is
/// checked against the explicit-Euler stability limit.
/// `trajectory` (optional) receives every `decimate`-th sample.
SimulationSummary integrate(const DynamicsConfig& cfg);
SimulationSummary integrate(
    const DynamicsConfig& cfg,
    std::vector<std::pair<double, Eigen::VectorXd>>* trajectory, int decimate);

/// Max-norm residual of the steady-state covariance identity; near zero for
/// every connected graph and nonempty leader set.
double lyapunov_residual(const NoisyGraph& g, const LeaderSet& s);

} // namespace leadersel
