#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "leadersel/static_select.hpp"

namespace leadersel {

/// Distribution over topologies: either independent link failures on a base
/// graph, or an explicit weighted scenario list over the same node set.
struct FailureModel {
    struct IndependentLinks {
        double p = 0.0;
    };
    struct ScenarioList {
        std::vector<NoisyGraph> topologies;
        std::vector<double> weights;
    };

    std::variant<IndependentLinks, ScenarioList> mode =
        std::variant<IndependentLinks, ScenarioList>(IndependentLinks{0.0});
    int samples = 1000; // M
    std::uint64_t seed = 0;

    static FailureModel independent(double p, int samples, std::uint64_t seed);
    static FailureModel scenarios(std::vector<NoisyGraph> topologies,
                                  std::vector<double> weights, int samples,
                                  std::uint64_t seed);
    void validate() const;
};

/// One sampled topology: a scenario index, or an edge-survival mask over the
/// base graph's canonical edge order.
struct FailureSample {
    int scenario = -1;
    std::vector<std::uint8_t> edge_alive;
};

/// Fixed set of sampled topologies, reused across every candidate set in a
/// greedy run (common random numbers).
struct SampledFailures {
    std::vector<FailureSample> samples;
};

SampledFailures sample_failures(const FailureModel& fm, const NoisyGraph& base);

/// Error of leader set s on the base graph restricted to surviving edges.
/// Empty when some follower has no surviving path to a leader.
std::optional<double> masked_error(const NoisyGraph& base,
                                   const std::vector<std::uint8_t>& edge_alive,
                                   const LeaderSet& s);

struct McError {
    double mean = 0.0;
    double stderr_ = 0.0;
    double disconnected_fraction = 0.0;
    int included = 0;
};

/// Monte Carlo expected error over fm's distribution. Samples where some
/// follower cannot reach any leader are excluded from the mean and counted
/// in disconnected_fraction; throws AllSamplesDisconnected when nothing
/// remains.
McError expected_error_mc(const FailureModel& fm, const NoisyGraph& g,
                          const LeaderSet& s);

/// Same statistic on a pre-drawn sample set.
McError expected_error_on(const SampledFailures& samples, const FailureModel& fm,
                          const NoisyGraph& g, const LeaderSet& s);

struct ExactExpectedError {
    double mean = 0.0; // conditional on every follower reaching a leader
    double disconnected_probability = 0.0;
};

/// Exact expectation by enumerating all 2^|E| independent-failure patterns
/// (or the weighted scenario sum). Edge count is capped at 20 for the
/// enumeration.
ExactExpectedError exact_expected_error(const FailureModel& fm,
                                        const NoisyGraph& g, const LeaderSet& s);

enum class FailureObjective { monte_carlo, exact_enumeration };

/// Greedy size-k selection minimizing the expected error under failures.
/// All candidates within a run share one sampled topology set.
SelectionResult select_k_random_failures(
    const FailureModel& fm, const NoisyGraph& g, int k,
    FailureObjective objective = FailureObjective::monte_carlo);

/// Greedy smallest set with expected error <= alpha under failures.
SelectionResult select_alpha_random_failures(
    const FailureModel& fm, const NoisyGraph& g, double alpha,
    FailureObjective objective = FailureObjective::monte_carlo);

/// Predefined topologies over one node set; each must be connected.
struct TopologyEnsemble {
    std::vector<NoisyGraph> topologies;

    explicit TopologyEnsemble(std::vector<NoisyGraph> graphs);
    int node_count() const { return topologies.front().node_count(); }
    int size() const { return static_cast<int>(topologies.size()); }
};

/// Mean error across the ensemble.
double avg_error(const TopologyEnsemble& ens, const LeaderSet& s);

struct WorstError {
    double value = 0.0;
    int index = 0; // 0-based topology index, lowest on ties
};

/// Largest per-topology error and where it occurs.
WorstError worst_error(const TopologyEnsemble& ens, const LeaderSet& s);

/// Truncated mean (1/M) * sum_i max(R(S|L_i), c); supermodular surrogate
/// for the worst case.
double truncated_objective(const TopologyEnsemble& ens, double c,
                           const LeaderSet& s);

/// Largest single-leader error over all topologies; upper end of the
/// bisection range.
double ensemble_max_singleton_error(const TopologyEnsemble& ens);

/// Size-inflation default: 1 + log(max_v sum_i R({v}|L_i)).
double theorem_beta(const TopologyEnsemble& ens);

/// Bisection on the error level: up to beta*k leaders minimizing the worst
/// error across topologies. delta is the bisection resolution (default
/// 1/M). On success `final_alpha` holds the accepted level; when no level
/// in range fits the size budget the result carries infeasible_budget.
SelectionResult select_switching_k(const TopologyEnsemble& ens, int k,
                                   double beta, double delta);
SelectionResult select_switching_k(const TopologyEnsemble& ens, int k);

/// Smallest greedy set with error <= alpha on every topology.
SelectionResult select_alpha_switching(const TopologyEnsemble& ens, double alpha);

/// Independent selection per topology (leaders refreshed on each switch).
std::vector<SelectionResult> select_per_topology_k(const TopologyEnsemble& ens,
                                                   int k);

enum class FailureAggregation { average, worst };

/// Selection when topologies both switch and fail. `average` minimizes the
/// mean over topologies of the per-topology expected error; `worst`
/// minimizes the largest per-topology expected error via its truncated
/// surrogate.
SelectionResult select_switching_failures_k(
    const TopologyEnsemble& ens, const std::vector<FailureModel>& fms,
    FailureAggregation aggregation, int k, double beta, double delta,
    FailureObjective objective = FailureObjective::monte_carlo);

SelectionResult select_switching_failures_alpha(
    const TopologyEnsemble& ens, const std::vector<FailureModel>& fms,
    FailureAggregation aggregation, double alpha,
    FailureObjective objective = FailureObjective::monte_carlo);

} // namespace leadersel
