#include "leadersel/dynamic_select.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "leadersel/error_metric.hpp"
#include "leadersel/rng.hpp"

namespace leadersel {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

} // namespace

FailureModel FailureModel::independent(double p, int samples,
                                       std::uint64_t seed) {
    FailureModel fm;
    fm.mode = IndependentLinks{p};
    fm.samples = samples;
    fm.seed = seed;
    fm.validate();
    return fm;
}

FailureModel FailureModel::scenarios(std::vector<NoisyGraph> topologies,
                                     std::vector<double> weights, int samples,
                                     std::uint64_t seed) {
    FailureModel fm;
    fm.mode = ScenarioList{std::move(topologies), std::move(weights)};
    fm.samples = samples;
    fm.seed = seed;
    fm.validate();
    return fm;
}

void FailureModel::validate() const {
    if (samples < 1) throw InvalidArgument("sample count must be >= 1");
    if (const auto* ind = std::get_if<IndependentLinks>(&mode)) {
        if (ind->p < 0.0 || ind->p > 1.0)
            throw InvalidArgument("failure probability must lie in [0, 1]");
        return;
    }
    const auto& list = std::get<ScenarioList>(mode);
    if (list.topologies.empty())
        throw InvalidArgument("scenario list must be nonempty");
    if (list.weights.size() != list.topologies.size())
        throw DimensionMismatch("scenario weights must match topologies");
    double sum = 0.0;
    for (double w : list.weights) {
        if (w < 0.0) throw InvalidArgument("scenario weights must be nonnegative");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw InvalidArgument("scenario weights must sum to 1");
    const int n = list.topologies.front().node_count();
    for (const NoisyGraph& g : list.topologies)
        if (g.node_count() != n)
            throw DimensionMismatch("scenario topologies must share a node set");
}

SampledFailures sample_failures(const FailureModel& fm, const NoisyGraph& base) {
    fm.validate();
    SampledFailures out;
    out.samples.reserve(fm.samples);
    RngStream master(fm.seed);

    if (const auto* ind = std::get_if<FailureModel::IndependentLinks>(&fm.mode)) {
        const int edges = base.edge_count();
        for (int m = 0; m < fm.samples; ++m) {
            RngStream stream = master.substream(static_cast<std::uint64_t>(m));
            FailureSample sample;
            sample.edge_alive.resize(edges);
            for (int e = 0; e < edges; ++e)
                sample.edge_alive[e] = stream.uniform() >= ind->p ? 1 : 0;
            out.samples.push_back(std::move(sample));
        }
        return out;
    }

    const auto& list = std::get<FailureModel::ScenarioList>(fm.mode);
    for (int m = 0; m < fm.samples; ++m) {
        RngStream stream = master.substream(static_cast<std::uint64_t>(m));
        const double target = stream.uniform();
        double acc = 0.0;
        int pick = static_cast<int>(list.topologies.size()) - 1;
        for (std::size_t i = 0; i < list.weights.size(); ++i) {
            acc += list.weights[i];
            if (target < acc) {
                pick = static_cast<int>(i);
                break;
            }
        }
        FailureSample sample;
        sample.scenario = pick;
        out.samples.push_back(std::move(sample));
    }
    return out;
}

std::optional<double> masked_error(const NoisyGraph& base,
                                   const std::vector<std::uint8_t>& edge_alive,
                                   const LeaderSet& s) {
    const int n = base.node_count();
    if (static_cast<int>(edge_alive.size()) != base.edge_count())
        throw DimensionMismatch("edge mask does not match the graph");
    if (s.empty()) throw EmptyLeaderSet("leader set is empty");

    std::vector<int> row(n, -1);
    std::vector<int> followers;
    std::vector<char> reached(n, 0);
    std::vector<int> frontier;
    for (int v : s) {
        reached[v] = 1;
        frontier.push_back(v);
    }
    while (!frontier.empty()) {
        const int u = frontier.back();
        frontier.pop_back();
        for (const auto& [v, idx] : base.neighbors(u)) {
            if (edge_alive[idx] && !reached[v]) {
                reached[v] = 1;
                frontier.push_back(v);
            }
        }
    }
    for (int u = 0; u < n; ++u) {
        if (!s.contains(u)) {
            if (!reached[u]) return std::nullopt;
            row[u] = static_cast<int>(followers.size());
            followers.push_back(u);
        }
    }

    const int m = static_cast<int>(followers.size());
    if (m == 0) return 0.0;

    Eigen::MatrixXd L_ff = Eigen::MatrixXd::Zero(m, m);
    for (int r = 0; r < m; ++r) {
        const int u = followers[r];
        for (const auto& [v, idx] : base.neighbors(u)) {
            if (!edge_alive[idx]) continue;
            const double w = 1.0 / base.edges()[idx].nu;
            L_ff(r, r) += w;
            if (row[v] >= 0) L_ff(r, row[v]) -= w;
        }
    }
    Eigen::LLT<Eigen::MatrixXd> llt(L_ff);
    if (llt.info() != Eigen::Success) return std::nullopt;
    const Eigen::MatrixXd inv_chol =
        llt.matrixL().solve(Eigen::MatrixXd::Identity(m, m));
    return 0.5 * inv_chol.squaredNorm();
}

namespace {

double sample_error_or_inf(const FailureSample& sample, const FailureModel& fm,
                           const NoisyGraph& g, const LeaderSet& s,
                           bool& connected) {
    if (sample.scenario >= 0) {
        const auto& list = std::get<FailureModel::ScenarioList>(fm.mode);
        connected = true;
        return total_error(list.topologies[sample.scenario], s);
    }
    const std::optional<double> err = masked_error(g, sample.edge_alive, s);
    connected = err.has_value();
    return connected ? *err : kInf;
}

} // namespace

McError expected_error_on(const SampledFailures& samples, const FailureModel& fm,
                          const NoisyGraph& g, const LeaderSet& s) {
    if (s.empty()) throw EmptyLeaderSet("leader set is empty");
    std::vector<double> values;
    values.reserve(samples.samples.size());
    int excluded = 0;
    for (const FailureSample& sample : samples.samples) {
        bool connected = false;
        const double err = sample_error_or_inf(sample, fm, g, s, connected);
        if (connected)
            values.push_back(err);
        else
            ++excluded;
    }

    const int total = static_cast<int>(samples.samples.size());
    McError result;
    result.included = static_cast<int>(values.size());
    result.disconnected_fraction =
        static_cast<double>(excluded) / static_cast<double>(total);
    if (values.empty())
        throw AllSamplesDisconnected(
            "every sampled topology left some follower without a leader");

    result.mean = pairwise_sum(values) / static_cast<double>(values.size());
    if (values.size() > 1) {
        std::vector<double> sq(values.size());
        for (std::size_t i = 0; i < values.size(); ++i) {
            const double d = values[i] - result.mean;
            sq[i] = d * d;
        }
        const double var =
            pairwise_sum(sq) / static_cast<double>(values.size() - 1);
        result.stderr_ = std::sqrt(var / static_cast<double>(values.size()));
    }
    return result;
}

McError expected_error_mc(const FailureModel& fm, const NoisyGraph& g,
                          const LeaderSet& s) {
    return expected_error_on(sample_failures(fm, g), fm, g, s);
}

ExactExpectedError exact_expected_error(const FailureModel& fm,
                                        const NoisyGraph& g, const LeaderSet& s) {
    fm.validate();
    if (s.empty()) throw EmptyLeaderSet("leader set is empty");
    ExactExpectedError result;

    if (const auto* list = std::get_if<FailureModel::ScenarioList>(&fm.mode)) {
        for (std::size_t i = 0; i < list->topologies.size(); ++i)
            result.mean += list->weights[i] * total_error(list->topologies[i], s);
        return result;
    }

    const double p = std::get<FailureModel::IndependentLinks>(fm.mode).p;
    const int edges = g.edge_count();
    if (edges > 20)
        throw InvalidArgument("exact enumeration is limited to 20 edges, got " +
                              std::to_string(edges));

    double weighted_sum = 0.0;
    double connected_mass = 0.0;
    std::vector<std::uint8_t> mask(edges);
    for (std::uint64_t bits = 0; bits < (1ull << edges); ++bits) {
        double weight = 1.0;
        for (int e = 0; e < edges; ++e) {
            mask[e] = (bits >> e) & 1;
            weight *= mask[e] ? (1.0 - p) : p;
        }
        if (weight == 0.0) continue;
        const std::optional<double> err = masked_error(g, mask, s);
        if (err) {
            weighted_sum += weight * *err;
            connected_mass += weight;
        }
    }
    result.disconnected_probability = 1.0 - connected_mass;
    if (connected_mass <= 0.0)
        throw AllSamplesDisconnected(
            "every failure pattern leaves some follower without a leader");
    result.mean = weighted_sum / connected_mass;
    return result;
}

namespace {

// Greedy objective under failures: conditional mean over the common sample
// set, +inf when a candidate covers no sample. Naive mode is used because
// the exclusion rule can perturb strict supermodularity.
class FailureObjectiveFn {
public:
    FailureObjectiveFn(const FailureModel& fm, const NoisyGraph& g,
                       FailureObjective objective)
        : fm_(fm), g_(g), exact_(objective == FailureObjective::exact_enumeration) {
        if (!exact_) samples_ = sample_failures(fm, g);
    }

    double operator()(const LeaderSet& s) const {
        if (exact_) {
            try {
                return exact_expected_error(fm_, g_, s).mean;
            } catch (const AllSamplesDisconnected&) {
                return kInf;
            }
        }
        try {
            return expected_error_on(samples_, fm_, g_, s).mean;
        } catch (const AllSamplesDisconnected&) {
            return kInf;
        }
    }

private:
    const FailureModel& fm_;
    const NoisyGraph& g_;
    bool exact_;
    SampledFailures samples_;
};

SelectionResult selection_from(detail::GreedyOutcome&& outcome) {
    SelectionResult result;
    result.leaders = std::move(outcome.picks);
    result.error_trace = std::move(outcome.objective_trace);
    result.terminated_early = outcome.terminated_early;
    return result;
}

void require_first_pick_finite(const SelectionResult& result) {
    if (!result.error_trace.empty() && std::isinf(result.error_trace.front()))
        throw AllSamplesDisconnected(
            "no singleton leader set covers any sampled topology");
}

} // namespace

SelectionResult select_k_random_failures(const FailureModel& fm,
                                         const NoisyGraph& g, int k,
                                         FailureObjective objective) {
    if (k < 1 || k > g.node_count())
        throw InvalidK("k must lie in [1, " + std::to_string(g.node_count()) +
                       "], got " + std::to_string(k));
    FailureObjectiveFn f(fm, g, objective);
    detail::GreedyOptions options;
    options.max_picks = k;
    options.gain_floor = kGainTolerance * max_singleton_error(g);
    options.mode = GreedyMode::naive;
    SelectionResult result = selection_from(detail::greedy_minimize(
        g.node_count(), [&](const LeaderSet& s) { return f(s); }, options));
    require_first_pick_finite(result);
    return result;
}

SelectionResult select_alpha_random_failures(const FailureModel& fm,
                                             const NoisyGraph& g, double alpha,
                                             FailureObjective objective) {
    alpha = std::max(alpha, 0.0);
    FailureObjectiveFn f(fm, g, objective);
    detail::GreedyOptions options;
    options.max_picks = g.node_count();
    options.stop_value = alpha;
    options.gain_floor = kGainTolerance * max_singleton_error(g);
    options.mode = GreedyMode::naive;
    SelectionResult result = selection_from(detail::greedy_minimize(
        g.node_count(), [&](const LeaderSet& s) { return f(s); }, options));
    require_first_pick_finite(result);
    return result;
}

TopologyEnsemble::TopologyEnsemble(std::vector<NoisyGraph> graphs)
    : topologies(std::move(graphs)) {
    if (topologies.empty())
        throw InvalidArgument("topology ensemble must be nonempty");
    const int n = topologies.front().node_count();
    for (const NoisyGraph& g : topologies)
        if (g.node_count() != n)
            throw DimensionMismatch("ensemble topologies must share a node set");
}

double avg_error(const TopologyEnsemble& ens, const LeaderSet& s) {
    if (s.empty()) throw EmptyLeaderSet("leader set is empty");
    double sum = 0.0;
    for (const NoisyGraph& g : ens.topologies) sum += total_error(g, s);
    return sum / static_cast<double>(ens.size());
}

WorstError worst_error(const TopologyEnsemble& ens, const LeaderSet& s) {
    if (s.empty()) throw EmptyLeaderSet("leader set is empty");
    WorstError worst;
    worst.value = -kInf;
    for (int i = 0; i < ens.size(); ++i) {
        const double err = total_error(ens.topologies[i], s);
        if (err > worst.value) {
            worst.value = err;
            worst.index = i;
        }
    }
    return worst;
}

double truncated_objective(const TopologyEnsemble& ens, double c,
                           const LeaderSet& s) {
    if (c < 0.0) throw InvalidArgument("truncation level must be >= 0");
    if (s.empty()) throw EmptyLeaderSet("leader set is empty");
    double sum = 0.0;
    for (const NoisyGraph& g : ens.topologies)
        sum += std::max(total_error(g, s), c);
    return sum / static_cast<double>(ens.size());
}

double ensemble_max_singleton_error(const TopologyEnsemble& ens) {
    double worst = 0.0;
    for (const NoisyGraph& g : ens.topologies)
        worst = std::max(worst, max_singleton_error(g));
    return worst;
}

double theorem_beta(const TopologyEnsemble& ens) {
    double max_sum = 0.0;
    for (int v = 0; v < ens.node_count(); ++v) {
        double sum = 0.0;
        for (const NoisyGraph& g : ens.topologies)
            sum += total_error(g, LeaderSet({v}));
        max_sum = std::max(max_sum, sum);
    }
    return std::max(1.0, 1.0 + std::log(max_sum));
}

namespace {

// One inner pass of the bisection: grow greedily on the truncated objective
// until every topology's error is within alpha.
detail::GreedyOutcome switching_inner_greedy(
    const std::function<double(double, const LeaderSet&)>& truncated,
    const std::function<double(const LeaderSet&)>& worst, int n, double alpha,
    double gain_floor, GreedyMode mode) {
    detail::GreedyOptions options;
    options.max_picks = n;
    options.stop_predicate = [&](const LeaderSet& s, double) {
        return worst(s) <= alpha;
    };
    options.gain_floor = gain_floor;
    options.mode = mode;
    return detail::greedy_minimize(
        n, [&](const LeaderSet& s) { return truncated(alpha, s); }, options);
}

SelectionResult switching_bisection(
    const std::function<double(double, const LeaderSet&)>& truncated,
    const std::function<double(const LeaderSet&)>& worst, int n, int k,
    double beta, double delta, double alpha_max, double gain_floor,
    GreedyMode mode) {
    if (k < 1) throw InvalidK("k must be >= 1");
    if (beta < 1.0) throw InvalidArgument("beta must be >= 1");
    if (delta <= 0.0) throw InvalidArgument("delta must be > 0");

    const double budget = beta * static_cast<double>(k) + 1e-12;
    std::optional<SelectionResult> accepted;

    double lo = 0.0;
    double hi = alpha_max;
    int iterations = 0;
    while (hi - lo >= delta && iterations++ < 200) {
        const double alpha = 0.5 * (hi + lo);
        detail::GreedyOutcome outcome =
            switching_inner_greedy(truncated, worst, n, alpha, gain_floor, mode);
        const bool feasible =
            outcome.target_met && static_cast<double>(outcome.picks.size()) <= budget;
        if (feasible) {
            SelectionResult result = selection_from(std::move(outcome));
            result.final_alpha = alpha;
            accepted = std::move(result);
            hi = alpha;
        } else {
            lo = alpha;
        }
    }

    if (!accepted) {
        // The top of the range admits any singleton; try it before flagging.
        detail::GreedyOutcome outcome = switching_inner_greedy(
            truncated, worst, n, alpha_max, gain_floor, mode);
        if (outcome.target_met &&
            static_cast<double>(outcome.picks.size()) <= budget) {
            SelectionResult result = selection_from(std::move(outcome));
            result.final_alpha = alpha_max;
            return result;
        }
        SelectionResult result = selection_from(std::move(outcome));
        result.infeasible_budget = true;
        return result;
    }
    return *accepted;
}

} // namespace

SelectionResult select_switching_k(const TopologyEnsemble& ens, int k,
                                   double beta, double delta) {
    const double alpha_max = ensemble_max_singleton_error(ens);
    return switching_bisection(
        [&](double c, const LeaderSet& s) { return truncated_objective(ens, c, s); },
        [&](const LeaderSet& s) { return worst_error(ens, s).value; },
        ens.node_count(), k, beta, delta, alpha_max,
        kGainTolerance * alpha_max, GreedyMode::lazy);
}

SelectionResult select_switching_k(const TopologyEnsemble& ens, int k) {
    return select_switching_k(ens, k, theorem_beta(ens),
                              1.0 / static_cast<double>(ens.size()));
}

SelectionResult select_alpha_switching(const TopologyEnsemble& ens,
                                       double alpha) {
    alpha = std::max(alpha, 0.0);
    const double gain_floor =
        kGainTolerance * ensemble_max_singleton_error(ens);
    detail::GreedyOutcome outcome = switching_inner_greedy(
        [&](double c, const LeaderSet& s) { return truncated_objective(ens, c, s); },
        [&](const LeaderSet& s) { return worst_error(ens, s).value; },
        ens.node_count(), alpha, gain_floor, GreedyMode::lazy);
    SelectionResult result = selection_from(std::move(outcome));
    result.final_alpha = alpha;
    return result;
}

std::vector<SelectionResult> select_per_topology_k(const TopologyEnsemble& ens,
                                                   int k) {
    std::vector<SelectionResult> results;
    results.reserve(ens.size());
    for (const NoisyGraph& g : ens.topologies)
        results.push_back(select_static_k(g, k));
    return results;
}

namespace {

// Per-topology expected errors under failures, sampled once and shared by
// every candidate evaluation (+inf when a candidate covers no sample).
class EnsembleFailureErrors {
public:
    EnsembleFailureErrors(const TopologyEnsemble& ens,
                          const std::vector<FailureModel>& fms,
                          FailureObjective objective)
        : ens_(ens), fms_(fms),
          exact_(objective == FailureObjective::exact_enumeration) {
        if (static_cast<int>(fms.size()) != ens.size())
            throw DimensionMismatch(
                "one failure model per ensemble topology is required");
        for (const FailureModel& fm : fms) fm.validate();
        if (!exact_) {
            samples_.reserve(fms.size());
            for (int i = 0; i < ens.size(); ++i)
                samples_.push_back(sample_failures(fms[i], ens.topologies[i]));
        }
    }

    double per_topology(int i, const LeaderSet& s) const {
        try {
            if (exact_)
                return exact_expected_error(fms_[i], ens_.topologies[i], s).mean;
            return expected_error_on(samples_[i], fms_[i], ens_.topologies[i], s)
                .mean;
        } catch (const AllSamplesDisconnected&) {
            return kInf;
        }
    }

    double average(const LeaderSet& s) const {
        double sum = 0.0;
        for (int i = 0; i < ens_.size(); ++i) sum += per_topology(i, s);
        return sum / static_cast<double>(ens_.size());
    }

    double worst(const LeaderSet& s) const {
        double w = -kInf;
        for (int i = 0; i < ens_.size(); ++i)
            w = std::max(w, per_topology(i, s));
        return w;
    }

    double truncated(double c, const LeaderSet& s) const {
        double sum = 0.0;
        for (int i = 0; i < ens_.size(); ++i)
            sum += std::max(per_topology(i, s), c);
        return sum / static_cast<double>(ens_.size());
    }

    /// Largest finite single-leader expected error across topologies.
    double max_singleton() const {
        double worst_finite = 0.0;
        for (int i = 0; i < ens_.size(); ++i) {
            double best_for_topology = kInf;
            double worst_for_topology = 0.0;
            for (int v = 0; v < ens_.node_count(); ++v) {
                const double e = per_topology(i, LeaderSet({v}));
                best_for_topology = std::min(best_for_topology, e);
                if (std::isfinite(e))
                    worst_for_topology = std::max(worst_for_topology, e);
            }
            if (std::isinf(best_for_topology))
                throw AllSamplesDisconnected(
                    "no singleton covers any sample of topology " +
                    std::to_string(i));
            worst_finite = std::max(worst_finite, worst_for_topology);
        }
        return worst_finite;
    }

private:
    const TopologyEnsemble& ens_;
    const std::vector<FailureModel>& fms_;
    bool exact_;
    std::vector<SampledFailures> samples_;
};

} // namespace

SelectionResult select_switching_failures_k(
    const TopologyEnsemble& ens, const std::vector<FailureModel>& fms,
    FailureAggregation aggregation, int k, double beta, double delta,
    FailureObjective objective) {
    EnsembleFailureErrors errors(ens, fms, objective);

    if (aggregation == FailureAggregation::average) {
        if (k < 1 || k > ens.node_count())
            throw InvalidK("k must lie in [1, " +
                           std::to_string(ens.node_count()) + "]");
        detail::GreedyOptions options;
        options.max_picks = k;
        options.gain_floor = kGainTolerance * ensemble_max_singleton_error(ens);
        options.mode = GreedyMode::naive;
        SelectionResult result = selection_from(detail::greedy_minimize(
            ens.node_count(),
            [&](const LeaderSet& s) { return errors.average(s); }, options));
        require_first_pick_finite(result);
        return result;
    }

    const double alpha_max = errors.max_singleton();
    return switching_bisection(
        [&](double c, const LeaderSet& s) { return errors.truncated(c, s); },
        [&](const LeaderSet& s) { return errors.worst(s); }, ens.node_count(),
        k, beta, delta, alpha_max, kGainTolerance * alpha_max,
        GreedyMode::naive);
}

SelectionResult select_switching_failures_alpha(
    const TopologyEnsemble& ens, const std::vector<FailureModel>& fms,
    FailureAggregation aggregation, double alpha, FailureObjective objective) {
    EnsembleFailureErrors errors(ens, fms, objective);
    alpha = std::max(alpha, 0.0);
    const double gain_floor =
        kGainTolerance * ensemble_max_singleton_error(ens);

    if (aggregation == FailureAggregation::average) {
        detail::GreedyOptions options;
        options.max_picks = ens.node_count();
        options.stop_value = alpha;
        options.gain_floor = gain_floor;
        options.mode = GreedyMode::naive;
        SelectionResult result = selection_from(detail::greedy_minimize(
            ens.node_count(),
            [&](const LeaderSet& s) { return errors.average(s); }, options));
        require_first_pick_finite(result);
        return result;
    }

    detail::GreedyOutcome outcome = switching_inner_greedy(
        [&](double c, const LeaderSet& s) { return errors.truncated(c, s); },
        [&](const LeaderSet& s) { return errors.worst(s); }, ens.node_count(),
        alpha, gain_floor, GreedyMode::naive);
    SelectionResult result = selection_from(std::move(outcome));
    result.final_alpha = alpha;
    require_first_pick_finite(result);
    return result;
}

} // namespace leadersel
