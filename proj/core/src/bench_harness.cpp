#include "leadersel/bench_harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "leadersel/dynamic_select.hpp"
#include "leadersel/error_metric.hpp"
#include "leadersel/online_select.hpp"
#include "leadersel/rng.hpp"
#include "leadersel/static_select.hpp"

namespace leadersel {

namespace {

struct Dsu {
    std::vector<int> parent;
    explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Edge list for positions within range; nullopt when disconnected.
std::optional<std::vector<Edge>> edges_for_positions(
    const std::vector<std::array<double, 2>>& pos, double range, double c) {
    const int n = static_cast<int>(pos.size());
    std::vector<Edge> edges;
    Dsu dsu(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double dx = pos[i][0] - pos[j][0];
            const double dy = pos[i][1] - pos[j][1];
            const double dist = std::hypot(dx, dy);
            if (dist <= range && dist > 0.0) {
                edges.push_back({i, j, c * dist});
                dsu.unite(i, j);
            }
        }
    }
    for (int i = 1; i < n; ++i)
        if (dsu.find(i) != dsu.find(0)) return std::nullopt;
    return edges;
}

} // namespace

GeometricDeployment gen_geometric_deployment(const DeploymentSpec& spec) {
    if (spec.n < 1) throw InvalidArgument("node count must be >= 1");
    if (spec.range <= 0.0) throw CannotConnect("communication range must be positive");
    if (spec.variance_per_meter <= 0.0)
        throw InvalidArgument("variance constant must be positive");

    RngStream master(spec.seed);
    for (int attempt = 0; attempt <= spec.max_retries; ++attempt) {
        RngStream rng = master.substream(static_cast<std::uint64_t>(attempt));
        std::vector<std::array<double, 2>> pos(spec.n);
        for (auto& p : pos) {
            p[0] = rng.uniform(0.0, spec.width);
            p[1] = rng.uniform(0.0, spec.height);
        }
        auto edges = edges_for_positions(pos, spec.range, spec.variance_per_meter);
        if (edges) {
            return GeometricDeployment{
                NoisyGraph(spec.n, std::move(*edges)), std::move(pos), attempt};
        }
    }
    throw CannotConnect("no connected deployment after " +
                        std::to_string(spec.max_retries) + " retries");
}

NoisyGraph gen_geometric(const DeploymentSpec& spec) {
    return gen_geometric_deployment(spec).graph;
}

LeaderSet baseline_select(const NoisyGraph& g, int k, BaselineMode mode,
                          std::uint64_t seed) {
    const int n = g.node_count();
    if (k < 1 || k > n)
        throw InvalidK("k must lie in [1, " + std::to_string(n) + "]");

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);

    switch (mode) {
    case BaselineMode::random: {
        RngStream rng(seed);
        for (int i = 0; i < n - 1; ++i) {
            const int j =
                i + static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(n - i)));
            std::swap(order[i], order[j]);
        }
        break;
    }
    case BaselineMode::max_degree:
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return g.degree(a) > g.degree(b);
        });
        break;
    case BaselineMode::avg_degree: {
        const double mean =
            2.0 * g.edge_count() / static_cast<double>(n);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return std::abs(g.degree(a) - mean) < std::abs(g.degree(b) - mean);
        });
        break;
    }
    }
    return LeaderSet(std::vector<int>(order.begin(), order.begin() + k));
}

std::vector<NoisyGraph> mobility_trace(const MobilitySpec& mspec,
                                       const DeploymentSpec& dspec) {
    if (mspec.speed < 0.0 || mspec.step_interval <= 0.0 ||
        mspec.reselect_interval <= 0.0)
        throw InvalidArgument("mobility speeds and intervals must be positive");
    if (mspec.horizon_steps < 1)
        throw InvalidArgument("horizon must be >= 1 frame");

    GeometricDeployment deployment = gen_geometric_deployment(dspec);
    RngStream master(dspec.seed);
    RngStream walk_rng = master.substream(0x6d6f62ull); // mobility stream

    std::array<double, 2> reference{dspec.width / 2.0, dspec.height / 2.0};
    std::vector<std::array<double, 2>> offsets(deployment.positions.size());
    for (std::size_t i = 0; i < offsets.size(); ++i) {
        offsets[i][0] = deployment.positions[i][0] - reference[0];
        offsets[i][1] = deployment.positions[i][1] - reference[1];
    }

    const int steps_per_frame = std::max(
        1, static_cast<int>(std::lround(mspec.reselect_interval /
                                        mspec.step_interval)));
    const double step_len = mspec.speed * mspec.step_interval;

    auto reflect = [](double v, double lo, double hi) {
        while (v < lo || v > hi) {
            if (v < lo) v = 2.0 * lo - v;
            if (v > hi) v = 2.0 * hi - v;
        }
        return v;
    };

    std::vector<NoisyGraph> trace;
    trace.reserve(mspec.horizon_steps);
    std::vector<std::array<double, 2>> pos(offsets.size());

    for (int frame = 0; frame < mspec.horizon_steps; ++frame) {
        if (frame > 0) {
            for (int s = 0; s < steps_per_frame; ++s) {
                const double heading = walk_rng.uniform(0.0, 6.283185307179586);
                reference[0] = reflect(reference[0] + step_len * std::cos(heading),
                                       0.0, dspec.width);
                reference[1] = reflect(reference[1] + step_len * std::sin(heading),
                                       0.0, dspec.height);
            }
        }

        bool built = false;
        for (int attempt = 0; attempt <= dspec.max_retries && !built; ++attempt) {
            RngStream jitter = master.substream(
                0x10000ull + static_cast<std::uint64_t>(frame) * 1024ull +
                static_cast<std::uint64_t>(attempt));
            for (std::size_t i = 0; i < offsets.size(); ++i) {
                // uniform in a disc of the jitter radius
                const double angle = jitter.uniform(0.0, 6.283185307179586);
                const double radius =
                    mspec.jitter_radius * std::sqrt(jitter.uniform());
                pos[i][0] = reference[0] + offsets[i][0] + radius * std::cos(angle);
                pos[i][1] = reference[1] + offsets[i][1] + radius * std::sin(angle);
            }
            auto edges = edges_for_positions(pos, dspec.range,
                                             dspec.variance_per_meter);
            if (edges) {
                trace.emplace_back(static_cast<int>(offsets.size()),
                                   std::move(*edges));
                built = true;
            }
        }
        if (!built)
            throw CannotConnect("frame " + std::to_string(frame) +
                                " stayed disconnected after " +
                                std::to_string(dspec.max_retries) + " re-jitters");
    }
    return trace;
}

namespace {

const std::vector<std::string> kMethods = {"supermodular", "random",
                                           "avg-degree", "max-degree"};

BaselineMode baseline_mode(const std::string& method) {
    if (method == "random") return BaselineMode::random;
    if (method == "avg-degree") return BaselineMode::avg_degree;
    return BaselineMode::max_degree;
}

/// Node ranking that a baseline grows a set through, used by the
/// leaders-needed sweeps: prefix of size k equals baseline_select(k).
std::vector<int> baseline_ranking(const NoisyGraph& g, BaselineMode mode,
                                  std::uint64_t seed) {
    return baseline_select(g, g.node_count(), mode, seed).members();
}

/// Smallest prefix of `ranking` whose objective is <= target; objective
/// must be nonincreasing in the prefix length.
int prefix_leaders_needed(const std::vector<int>& ranking,
                          const std::function<double(const LeaderSet&)>& f,
                          double target) {
    LeaderSet prefix;
    for (std::size_t i = 0; i < ranking.size(); ++i) {
        prefix.add(ranking[i]);
        if (f(prefix) <= target) return static_cast<int>(i + 1);
    }
    return static_cast<int>(ranking.size());
}

void emit(ExperimentTable& table, const std::string& method, double x,
          int trial, std::optional<double> value) {
    table.rows.push_back({method, x, trial, value});
}

void sort_rows(ExperimentTable& table) {
    std::sort(table.rows.begin(), table.rows.end(),
              [](const ExperimentRow& a, const ExperimentRow& b) {
                  if (a.method != b.method) return a.method < b.method;
                  if (a.x != b.x) return a.x < b.x;
                  return a.trial < b.trial;
              });
}

DeploymentSpec trial_deployment(int n, RngStream& trial_rng) {
    DeploymentSpec spec;
    spec.n = n;
    spec.seed = trial_rng.next_u64();
    return spec;
}

ExperimentTable experiment_error_vs_k(const ExperimentOverrides& ov,
                                      std::uint64_t seed) {
    ExperimentTable table{"fig1a", "k", "error", {}};
    const int n = ov.n.value_or(25);
    const int trials = ov.trials.value_or(10);
    const int k_max = std::min(10, n);

    RngStream master(seed);
    for (int trial = 0; trial < trials; ++trial) {
        RngStream trial_rng = master.substream(trial);
        const NoisyGraph g = gen_geometric(trial_deployment(n, trial_rng));
        const std::uint64_t random_seed = trial_rng.next_u64();

        const SelectionResult greedy = select_static_k(g, k_max);
        for (int k = 1; k <= k_max; ++k) {
            // nested greedy prefixes give the whole sweep in one run
            const double greedy_error =
                k <= greedy.leaders.size()
                    ? greedy.error_trace[k - 1]
                    : greedy.error_trace.back();
            emit(table, "supermodular", k, trial, greedy_error);
            for (const std::string& method : {"random", "avg-degree", "max-degree"}) {
                const LeaderSet s =
                    baseline_select(g, k, baseline_mode(method), random_seed);
                emit(table, method, k, trial, total_error(g, s));
            }
            emit(table, "convex", k, trial, std::nullopt);
        }
    }
    sort_rows(table);
    return table;
}

ExperimentTable experiment_leaders_vs_alpha(const ExperimentOverrides& ov,
                                            std::uint64_t seed) {
    ExperimentTable table{"fig1b", "alpha_normalized", "leaders_needed", {}};
    const int n = ov.n.value_or(100);
    const int trials = ov.trials.value_or(10);
    std::vector<double> alpha_grid;
    for (double a = 0.1; a < 0.95; a += 0.1) alpha_grid.push_back(a);

    RngStream master(seed);
    for (int trial = 0; trial < trials; ++trial) {
        RngStream trial_rng = master.substream(trial);
        const NoisyGraph g = gen_geometric(trial_deployment(n, trial_rng));
        const std::uint64_t random_seed = trial_rng.next_u64();
        const double r_max = max_singleton_error(g);

        // one greedy run at the tightest level serves every level above it
        const SelectionResult greedy =
            select_static_alpha(g, alpha_grid.front() * r_max);
        for (double a : alpha_grid) {
            int needed = greedy.leaders.size();
            for (std::size_t i = 0; i < greedy.error_trace.size(); ++i) {
                if (greedy.error_trace[i] <= a * r_max) {
                    needed = static_cast<int>(i + 1);
                    break;
                }
            }
            emit(table, "supermodular", a, trial, needed);
        }

        for (const std::string& method : {"random", "avg-degree", "max-degree"}) {
            const std::vector<int> ranking =
                baseline_ranking(g, baseline_mode(method), random_seed);
            LeaderSet prefix;
            std::vector<double> errors; // error after each prefix size
            for (int v : ranking) {
                prefix.add(v);
                errors.push_back(total_error(g, prefix));
            }
            for (double a : alpha_grid) {
                int needed = n;
                for (std::size_t i = 0; i < errors.size(); ++i) {
                    if (errors[i] <= a * r_max) {
                        needed = static_cast<int>(i + 1);
                        break;
                    }
                }
                emit(table, method, a, trial, needed);
            }
        }
    }
    sort_rows(table);
    return table;
}

ExperimentTable experiment_error_vs_n(const ExperimentOverrides& ov,
                                      std::uint64_t seed) {
    ExperimentTable table{"fig2a", "n", "error", {}};
    const int trials = ov.trials.value_or(10);
    std::vector<int> n_grid = {25, 50, 75, 100};
    if (ov.n) n_grid = {*ov.n};

    RngStream master(seed);
    for (int trial = 0; trial < trials; ++trial) {
        RngStream trial_rng = master.substream(trial);
        for (int n : n_grid) {
            const NoisyGraph g = gen_geometric(trial_deployment(n, trial_rng));
            const std::uint64_t random_seed = trial_rng.next_u64();
            const int k = std::max(1, n / 10);

            const SelectionResult greedy = select_static_k(g, k);
            emit(table, "supermodular", n, trial, greedy.error_trace.back());
            for (const std::string& method : {"random", "avg-degree", "max-degree"}) {
                const LeaderSet s =
                    baseline_select(g, k, baseline_mode(method), random_seed);
                emit(table, method, n, trial, total_error(g, s));
            }
        }
    }
    sort_rows(table);
    return table;
}

ExperimentTable experiment_error_vs_p(const ExperimentOverrides& ov,
                                      std::uint64_t seed) {
    ExperimentTable table{"fig2b", "p", "error", {}};
    const int n = ov.n.value_or(100);
    const int trials = ov.trials.value_or(10);
    const int k = ov.leaders.value_or(10);
    const int m_select = ov.mc_samples.value_or(50);
    const std::vector<double> p_grid = {0.0, 0.05, 0.1, 0.15, 0.2};

    RngStream master(seed);
    for (int trial = 0; trial < trials; ++trial) {
        RngStream trial_rng = master.substream(trial);
        const NoisyGraph g = gen_geometric(trial_deployment(n, trial_rng));
        const std::uint64_t random_seed = trial_rng.next_u64();
        const std::uint64_t select_seed = trial_rng.next_u64();
        const std::uint64_t eval_seed = trial_rng.next_u64();

        std::vector<std::pair<std::string, LeaderSet>> baselines;
        for (const std::string& method : {"random", "avg-degree", "max-degree"})
            baselines.emplace_back(
                method, baseline_select(g, k, baseline_mode(method), random_seed));

        for (double p : p_grid) {
            const FailureModel select_fm =
                FailureModel::independent(p, m_select, select_seed);
            const SelectionResult greedy = select_k_random_failures(select_fm, g, k);

            // evaluation uses one larger shared sample set for all methods
            const FailureModel eval_fm =
                FailureModel::independent(p, 4 * m_select, eval_seed);
            const SampledFailures eval_samples = sample_failures(eval_fm, g);

            auto evaluate = [&](const LeaderSet& s) {
                return expected_error_on(eval_samples, eval_fm, g, s).mean;
            };
            emit(table, "supermodular", p, trial, evaluate(greedy.leaders));
            for (const auto& [method, s] : baselines)
                emit(table, method, p, trial, evaluate(s));
        }
    }
    sort_rows(table);
    return table;
}

/// Ranking across an ensemble: degrees summed over topologies.
std::vector<int> ensemble_ranking(const TopologyEnsemble& ens,
                                  BaselineMode mode, std::uint64_t seed) {
    const int n = ens.node_count();
    if (mode == BaselineMode::random) {
        std::vector<int> order(n);
        std::iota(order.begin(), order.end(), 0);
        RngStream rng(seed);
        for (int i = 0; i < n - 1; ++i) {
            const int j =
                i + static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(n - i)));
            std::swap(order[i], order[j]);
        }
        return order;
    }
    std::vector<double> total_degree(n, 0.0);
    for (const NoisyGraph& g : ens.topologies)
        for (int v = 0; v < n; ++v) total_degree[v] += g.degree(v);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    if (mode == BaselineMode::max_degree) {
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return total_degree[a] > total_degree[b];
        });
    } else {
        const double mean =
            std::accumulate(total_degree.begin(), total_degree.end(), 0.0) / n;
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return std::abs(total_degree[a] - mean) < std::abs(total_degree[b] - mean);
        });
    }
    return order;
}

ExperimentTable experiment_leaders_vs_topologies(const ExperimentOverrides& ov,
                                                 std::uint64_t seed,
                                                 bool with_failures) {
    ExperimentTable table{with_failures ? "fig3b" : "fig3a", "M",
                          "leaders_needed", {}};
    const int n = ov.n.value_or(100);
    const int trials = ov.trials.value_or(10);
    const double alpha_frac = ov.alpha_frac.value_or(0.3);
    const int m_samples = ov.mc_samples.value_or(50);
    const double p_fail = 0.05;
    const int m_max = 10;

    RngStream master(seed);
    for (int trial = 0; trial < trials; ++trial) {
        RngStream trial_rng = master.substream(trial);
        std::vector<NoisyGraph> pool;
        for (int i = 0; i < m_max; ++i)
            pool.push_back(gen_geometric(trial_deployment(n, trial_rng)));
        const std::uint64_t random_seed = trial_rng.next_u64();
        const std::uint64_t fail_seed = trial_rng.next_u64();

        for (int m = 1; m <= m_max; ++m) {
            const TopologyEnsemble ens(
                std::vector<NoisyGraph>(pool.begin(), pool.begin() + m));
            const double alpha =
                alpha_frac * ensemble_max_singleton_error(ens);

            std::function<double(const LeaderSet&)> constraint;
            std::vector<FailureModel> fms;
            std::vector<SampledFailures> fail_samples;
            if (with_failures) {
                for (int i = 0; i < m; ++i) {
                    fms.push_back(FailureModel::independent(
                        p_fail, m_samples, fail_seed + static_cast<std::uint64_t>(i)));
                    fail_samples.push_back(
                        sample_failures(fms.back(), ens.topologies[i]));
                }
                constraint = [&](const LeaderSet& s) {
                    double worst = 0.0;
                    for (int i = 0; i < m; ++i) {
                        try {
                            worst = std::max(
                                worst, expected_error_on(fail_samples[i], fms[i],
                                                         ens.topologies[i], s)
                                           .mean);
                        } catch (const AllSamplesDisconnected&) {
                            return std::numeric_limits<double>::infinity();
                        }
                    }
                    return worst;
                };
            } else {
                constraint = [&](const LeaderSet& s) {
                    return worst_error(ens, s).value;
                };
            }

            const SelectionResult greedy =
                with_failures
                    ? select_switching_failures_alpha(
                          ens, fms, FailureAggregation::worst, alpha)
                    : select_alpha_switching(ens, alpha);
            emit(table, "supermodular", m, trial, greedy.leaders.size());

            for (const std::string& method : {"random", "avg-degree", "max-degree"}) {
                const std::vector<int> ranking =
                    ensemble_ranking(ens, baseline_mode(method), random_seed);
                emit(table, method, m, trial,
                     prefix_leaders_needed(ranking, constraint, alpha));
            }
        }
    }
    sort_rows(table);
    return table;
}

ExperimentTable experiment_mobility(const ExperimentOverrides& ov,
                                    std::uint64_t seed) {
    ExperimentTable table{"fig4", "t", "error", {}};
    const int n = ov.n.value_or(30);
    const int trials = ov.trials.value_or(5);
    const int k = ov.leaders.value_or(3);
    const int steps = ov.steps.value_or(200);

    RngStream master(seed);
    for (int trial = 0; trial < trials; ++trial) {
        RngStream trial_rng = master.substream(trial);
        DeploymentSpec dspec;
        dspec.n = n;
        dspec.seed = trial_rng.next_u64();
        MobilitySpec mspec;
        mspec.horizon_steps = steps;
        const std::vector<NoisyGraph> trace = mobility_trace(mspec, dspec);

        const std::uint64_t random_seed = trial_rng.next_u64();
        OnlineState online = init_online(n, k, 0.5, trial_rng.next_u64());
        RngStream random_pick(random_seed);

        for (int t = 0; t < steps; ++t) {
            const NoisyGraph& g = trace[t];
            const StepOutcome outcome = online_step(online, g);
            emit(table, "supermodular", t, trial, outcome.realized_error);
            emit(table, "random", t, trial,
                 total_error(g, baseline_select(g, k, BaselineMode::random,
                                                random_pick.next_u64())));
            emit(table, "avg-degree", t, trial,
                 total_error(g, baseline_select(g, k, BaselineMode::avg_degree, 0)));
            emit(table, "max-degree", t, trial,
                 total_error(g, baseline_select(g, k, BaselineMode::max_degree, 0)));
        }
    }
    sort_rows(table);
    return table;
}

} // namespace

ExperimentTable run_experiment(const std::string& name,
                               const ExperimentOverrides& overrides,
                               std::uint64_t seed) {
    if (name == "fig1a") return experiment_error_vs_k(overrides, seed);
    if (name == "fig1b") return experiment_leaders_vs_alpha(overrides, seed);
    if (name == "fig2a") return experiment_error_vs_n(overrides, seed);
    if (name == "fig2b") return experiment_error_vs_p(overrides, seed);
    if (name == "fig3a")
        return experiment_leaders_vs_topologies(overrides, seed, false);
    if (name == "fig3b")
        return experiment_leaders_vs_topologies(overrides, seed, true);
    if (name == "fig4") return experiment_mobility(overrides, seed);
    throw UnknownExperiment("no experiment named '" + name + "'");
}

} // namespace leadersel
