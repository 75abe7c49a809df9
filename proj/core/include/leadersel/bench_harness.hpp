#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "leadersel/graph.hpp"

namespace leadersel {

/// Random geometric deployment: uniform placements in a rectangle, links
/// within communication range, link variance proportional to distance.
struct DeploymentSpec {
    int n = 100;
    double width = 1000.0;  // meters
    double height = 1000.0; // meters
    double range = 300.0;   // meters
    /// Variance rule nu = c * distance.
    double variance_per_meter = 1.0 / 300.0;
    std::uint64_t seed = 0;
    int max_retries = 100;
};

/// Group mobility: nodes track a reference point moving as a reflected
/// random walk, with per-node jitter; one graph per reselect interval.
struct MobilitySpec {
    double speed = 30.0;            // m/s
    double step_interval = 1.0;     // s between reference updates
    double reselect_interval = 10.0; // s between emitted graphs
    double jitter_radius = 30.0;    // m, uniform in a disc
    int horizon_steps = 100;        // number of emitted graphs
};

NoisyGraph gen_geometric(const DeploymentSpec& spec);

/// Deployment with the node positions kept; used by the mobility model.
struct GeometricDeployment {
    NoisyGraph graph;
    std::vector<std::array<double, 2>> positions;
    int retries = 0;
};
GeometricDeployment gen_geometric_deployment(const DeploymentSpec& spec);

enum class BaselineMode { random, max_degree, avg_degree };

/// Heuristic leader sets: seeded random subset, highest degree, or degree
/// closest to the mean degree. Ties break toward the lowest node id.
LeaderSet baseline_select(const NoisyGraph& g, int k, BaselineMode mode,
                          std::uint64_t seed);

std::vector<NoisyGraph> mobility_trace(const MobilitySpec& mspec,
                                       const DeploymentSpec& dspec);

/// Long-format sweep output: one row per (method, grid point, trial).
struct ExperimentRow {
    std::string method;
    double x = 0.0;
    int trial = 0;
    /// Empty for placeholder methods kept in the grid for external merging.
    std::optional<double> value;
};

struct ExperimentTable {
    std::string name;
    std::string x_name;
    std::string value_name;
    std::vector<ExperimentRow> rows;
};

struct ExperimentOverrides {
    std::optional<int> n;
    std::optional<int> trials;
    std::optional<int> mc_samples;
    /// Error targets as a fraction of the instance's single-leader worst
    /// case (used by the leaders-needed sweeps).
    std::optional<double> alpha_frac;
    std::optional<int> leaders; // k for the error sweeps
    std::optional<int> steps;   // mobility steps
};

/// Known experiments: fig1a, fig1b, fig2a, fig2b, fig3a, fig3b, fig4.
ExperimentTable run_experiment(const std::string& name,
                               const ExperimentOverrides& overrides,
                               std::uint64_t seed);

} // namespace leadersel
