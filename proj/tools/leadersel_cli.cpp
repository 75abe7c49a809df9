// leadersel: leader selection for noisy linear multi-agent systems.
//
// One binary, one subcommand per operation family. Results go to stdout as
// JSON (or to --out files), a run manifest with resolved parameters and
// input digests is emitted alongside every output, and errors are printed
// to stderr as one-line JSON. Exit codes: 0 success, 2 validation error,
// 3 infeasible or flagged result.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "leadersel/bench_harness.hpp"
#include "leadersel/dynamic_select.hpp"
#include "leadersel/error_metric.hpp"
#include "leadersel/exhaustive.hpp"
#include "leadersel/io.hpp"
#include "leadersel/noise_sim.hpp"
#include "leadersel/online_select.hpp"
#include "leadersel/static_select.hpp"
#include "leadersel/version.hpp"
#include "leadersel/walk_oracle.hpp"

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr const char* kGraphGrammar =
    "Graph file grammar (text form):\n"
    "  n <count>          node count, ids are 0..count-1\n"
    "  e <i> <j> <nu>     undirected edge with noise variance nu > 0\n"
    "  # ...              comment\n"
    "A JSON equivalent {\"n\": <count>, \"edges\": [[i, j, nu], ...]} is\n"
    "accepted interchangeably anywhere a graph file is expected.";

struct RunContext {
    std::string subcommand;
    json parameters = json::object();
    std::uint64_t seed = 0;
    json inputs = json::object();
    std::optional<std::string> out;

    void note_input(const std::string& path) {
        inputs[path] = leadersel::file_digest_hex(path);
    }

    json manifest() const {
        json m;
        m["subcommand"] = subcommand;
        m["parameters"] = parameters;
        m["seed"] = seed;
        m["inputs"] = inputs;
        m["version"] = leadersel::kVersion;
        return m;
    }

    // Primary output either streams to stdout (manifest embedded) or goes
    // to <out>.json / <out>.csv with the manifest in <out>.manifest.json.
    void deliver(json result, const std::optional<std::string>& csv) const {
        if (out) {
            leadersel::write_text_file(*out + ".json", result.dump(2) + "\n");
            if (csv) leadersel::write_text_file(*out + ".csv", *csv);
            leadersel::write_text_file(*out + ".manifest.json",
                                       manifest().dump(2) + "\n");
        } else {
            result["manifest"] = manifest();
            std::cout << result.dump(2) << "\n";
        }
    }

    void deliver_csv(const std::string& csv) const {
        if (out) {
            leadersel::write_text_file(*out + ".csv", csv);
            leadersel::write_text_file(*out + ".manifest.json",
                                       manifest().dump(2) + "\n");
        } else {
            std::cout << csv;
        }
    }
};

std::vector<int> parse_id_list(const std::string& text) {
    std::vector<int> ids;
    std::string token;
    for (char c : text + ",") {
        if (c == ',') {
            if (!token.empty()) ids.push_back(std::stoi(token));
            token.clear();
        } else {
            token += c;
        }
    }
    return ids;
}

std::vector<std::string> ensemble_files(const std::string& arg) {
    std::vector<std::string> files;
    if (fs::is_directory(arg)) {
        for (const auto& entry : fs::directory_iterator(arg)) {
            if (!entry.is_regular_file()) continue;
            const std::string ext = entry.path().extension().string();
            if (ext == ".graph" || ext == ".txt" || ext == ".json")
                files.push_back(entry.path().string());
        }
        std::sort(files.begin(), files.end());
    } else {
        std::string token;
        for (char c : arg + ",") {
            if (c == ',') {
                if (!token.empty()) files.push_back(token);
                token.clear();
            } else {
                token += c;
            }
        }
    }
    if (files.empty())
        throw leadersel::InvalidArgument("no ensemble files found in '" + arg + "'");
    return files;
}

json selection_json(const leadersel::SelectionResult& result) {
    return json::parse(leadersel::selection_to_json_string(result));
}

int deliver_selection(const RunContext& ctx,
                      const leadersel::SelectionResult& result) {
    ctx.deliver(selection_json(result), leadersel::selection_to_csv(result));
    return result.infeasible_budget ? 3 : 0;
}

// ---------------------------------------------------------------- commands

int cmd_select_static(RunContext& ctx, const std::string& graph_file,
                      std::optional<int> k, std::optional<double> alpha,
                      bool naive) {
    ctx.note_input(graph_file);
    const leadersel::NoisyGraph g = leadersel::read_graph(graph_file);
    const auto mode =
        naive ? leadersel::GreedyMode::naive : leadersel::GreedyMode::lazy;
    leadersel::SelectionResult result;
    if (k)
        result = leadersel::select_static_k(g, *k, mode);
    else
        result = leadersel::select_static_alpha(g, *alpha, mode);
    return deliver_selection(ctx, result);
}

int cmd_select_failures(RunContext& ctx, const std::string& graph_file,
                        double p, int samples, std::optional<int> k,
                        std::optional<double> alpha, bool exact_enum) {
    ctx.note_input(graph_file);
    const leadersel::NoisyGraph g = leadersel::read_graph(graph_file);
    const auto fm = leadersel::FailureModel::independent(p, samples, ctx.seed);
    const auto objective = exact_enum
                               ? leadersel::FailureObjective::exact_enumeration
                               : leadersel::FailureObjective::monte_carlo;
    leadersel::SelectionResult result;
    if (k)
        result = leadersel::select_k_random_failures(fm, g, *k, objective);
    else
        result = leadersel::select_alpha_random_failures(fm, g, *alpha, objective);
    return deliver_selection(ctx, result);
}

int cmd_select_switching(RunContext& ctx, const std::string& ensemble_arg,
                         std::optional<int> k, std::optional<double> alpha,
                         std::optional<double> beta, std::optional<double> delta,
                         std::optional<double> p, int samples,
                         const std::string& fail_mode) {
    std::vector<leadersel::NoisyGraph> graphs;
    for (const std::string& file : ensemble_files(ensemble_arg)) {
        ctx.note_input(file);
        graphs.push_back(leadersel::read_graph(file));
    }
    const leadersel::TopologyEnsemble ens(std::move(graphs));

    leadersel::SelectionResult result;
    if (p) {
        std::vector<leadersel::FailureModel> fms;
        for (int i = 0; i < ens.size(); ++i)
            fms.push_back(leadersel::FailureModel::independent(
                *p, samples, ctx.seed + static_cast<std::uint64_t>(i)));
        const auto aggregation = fail_mode == "avg"
                                     ? leadersel::FailureAggregation::average
                                     : leadersel::FailureAggregation::worst;
        if (k) {
            const double b = beta.value_or(leadersel::theorem_beta(ens));
            const double d = delta.value_or(1.0 / ens.size());
            result = leadersel::select_switching_failures_k(ens, fms, aggregation,
                                                            *k, b, d);
        } else {
            result = leadersel::select_switching_failures_alpha(ens, fms,
                                                                aggregation, *alpha);
        }
    } else if (k) {
        const double b = beta.value_or(leadersel::theorem_beta(ens));
        const double d = delta.value_or(1.0 / ens.size());
        result = leadersel::select_switching_k(ens, *k, b, d);
    } else {
        result = leadersel::select_alpha_switching(ens, *alpha);
    }
    return deliver_selection(ctx, result);
}

int cmd_online(RunContext& ctx, int k, double beta, int steps,
               const std::optional<std::string>& trace_dir, bool mobility,
               int n) {
    std::vector<leadersel::NoisyGraph> trace;
    if (trace_dir) {
        for (const std::string& file : ensemble_files(*trace_dir)) {
            ctx.note_input(file);
            trace.push_back(leadersel::read_graph(file));
        }
        if (static_cast<int>(trace.size()) > steps)
            trace.erase(trace.begin() + steps, trace.end());
    } else if (mobility) {
        leadersel::DeploymentSpec dspec;
        dspec.n = n;
        dspec.seed = ctx.seed;
        leadersel::MobilitySpec mspec;
        mspec.horizon_steps = steps;
        trace = leadersel::mobility_trace(mspec, dspec);
    } else {
        throw leadersel::InvalidArgument("either --trace or --mobility is required");
    }
    if (trace.empty()) throw leadersel::InvalidArgument("empty topology trace");

    auto state = leadersel::init_online(trace.front().node_count(), k, beta,
                                        ctx.seed);
    std::vector<leadersel::StepOutcome> history;
    history.reserve(trace.size());
    for (const leadersel::NoisyGraph& g : trace)
        history.push_back(leadersel::online_step(state, g));

    const leadersel::RegretReport report =
        leadersel::regret_report(history, trace, k);

    std::string csv = "t,error,regret\n";
    for (std::size_t t = 0; t < history.size(); ++t)
        csv += std::to_string(t) + "," +
               leadersel::format_double(history[t].realized_error) + "," +
               leadersel::format_double(report.regret_curve[t]) + "\n";

    json result;
    result["steps"] = history.size();
    result["final_regret"] = report.final_regret;
    result["hindsight_best"] = report.hindsight_best.members();
    result["hindsight_total"] = report.hindsight_total;
    result["hindsight_brute_forced"] = report.brute_forced;
    ctx.deliver(result, csv);
    return report.brute_forced ? 0 : 3;
}

int cmd_simulate(RunContext& ctx, const std::string& graph_file,
                 const std::string& leaders_arg, double dt, double horizon,
                 double burn_in, const std::string& noise,
                 const std::optional<std::string>& traj_file) {
    ctx.note_input(graph_file);
    leadersel::DynamicsConfig cfg{leadersel::read_graph(graph_file),
                                  leadersel::LeaderSet(parse_id_list(leaders_arg))};
    cfg.dt = dt;
    cfg.horizon = horizon;
    cfg.burn_in = burn_in;
    cfg.seed = ctx.seed;
    if (noise == "aggregated")
        cfg.noise = leadersel::NoiseMode::aggregated;
    else if (noise == "per-link")
        cfg.noise = leadersel::NoiseMode::per_link;
    else if (noise == "none")
        cfg.noise = leadersel::NoiseMode::none;
    else
        throw leadersel::InvalidArgument("unknown noise mode '" + noise + "'");

    std::vector<std::pair<double, Eigen::VectorXd>> trajectory;
    const leadersel::SimulationSummary summary =
        traj_file ? leadersel::integrate(cfg, &trajectory, 1000)
                  : leadersel::integrate(cfg);

    if (traj_file) {
        std::string csv = "t,node,value\n";
        const auto& followers = summary.analytic.per_node;
        for (const auto& [t, x] : trajectory)
            for (int r = 0; r < x.size(); ++r)
                csv += leadersel::format_double(t) + "," +
                       std::to_string(followers[r].first) + "," +
                       leadersel::format_double(x(r)) + "\n";
        leadersel::write_text_file(*traj_file, csv);
    }

    json result;
    result["empirical_mse"] = summary.empirical_mse;
    result["analytic_total"] = summary.analytic.total;
    result["relative_gap"] = summary.relative_gap;
    result["samples"] = summary.samples;
    json per_node = json::object();
    for (const auto& [node, v] : summary.per_node_variance)
        per_node[std::to_string(node)] = v;
    result["per_node_variance"] = per_node;
    ctx.deliver(result, std::nullopt);
    return 0;
}

int cmd_verify_commute(RunContext& ctx, const std::string& graph_file,
                       const std::string& leaders_arg, long long walks,
                       int threads) {
    ctx.note_input(graph_file);
    const leadersel::NoisyGraph g = leadersel::read_graph(graph_file);
    const leadersel::LeaderSet s(parse_id_list(leaders_arg));

    std::string csv = "u,exact,sampled_mean,stderr\n";
    for (int u = 0; u < g.node_count(); ++u) {
        if (s.contains(u)) continue;
        const double exact = leadersel::commute_time_exact(g, s, u);
        const leadersel::WalkEstimate est = leadersel::commute_time_sampled(
            g, s, u, walks, ctx.seed + static_cast<std::uint64_t>(u), threads);
        csv += std::to_string(u) + "," + leadersel::format_double(exact) + "," +
               leadersel::format_double(est.mean) + "," +
               leadersel::format_double(est.stderr_) + "\n";
    }
    ctx.deliver_csv(csv);
    return 0;
}

int cmd_bench(RunContext& ctx, const std::string& experiment,
              const leadersel::ExperimentOverrides& overrides) {
    const leadersel::ExperimentTable table =
        leadersel::run_experiment(experiment, overrides, ctx.seed);
    ctx.deliver_csv(leadersel::experiment_to_csv(table));
    return 0;
}

int cmd_gen_graph(RunContext& ctx, const std::optional<std::string>& spec_file,
                  leadersel::DeploymentSpec spec, const std::string& out_file) {
    if (spec_file) {
        ctx.note_input(*spec_file);
        const json j = json::parse(leadersel::read_text_file(*spec_file));
        if (j.contains("n")) spec.n = j["n"].get<int>();
        if (j.contains("width")) spec.width = j["width"].get<double>();
        if (j.contains("height")) spec.height = j["height"].get<double>();
        if (j.contains("range")) spec.range = j["range"].get<double>();
        if (j.contains("variance_per_meter"))
            spec.variance_per_meter = j["variance_per_meter"].get<double>();
        if (j.contains("max_retries")) spec.max_retries = j["max_retries"].get<int>();
    }
    spec.seed = ctx.seed;
    const leadersel::NoisyGraph g = leadersel::gen_geometric(spec);
    leadersel::write_graph(g, out_file);
    leadersel::write_text_file(out_file + ".manifest.json",
                               ctx.manifest().dump(2) + "\n");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Leader selection under link noise for linear multi-agent "
                 "systems"};
    app.footer(kGraphGrammar);
    app.require_subcommand(1);

    RunContext ctx;
    std::string graph_file, leaders_arg, ensemble_arg, experiment, noise = "aggregated";
    std::string fail_mode = "worst";
    std::optional<std::string> trace_dir, traj_file, spec_file;
    std::optional<int> k;
    std::optional<double> alpha, beta, delta, p_switch;
    double p = 0.0, dt = 1e-3, horizon = 2000.0, burn_in = 0.5, online_beta = 0.5;
    int samples = 1000, walks = 100000, threads = 1, steps = 100, n = 30;
    bool naive = false, exact_enum = false, mobility = false;
    std::string out_base, out_file;
    leadersel::DeploymentSpec dspec;
    leadersel::ExperimentOverrides overrides;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--seed", ctx.seed, "Master 64-bit seed")
            ->capture_default_str();
        cmd->add_option("--out", out_base,
                        "Output base path; writes <out>.json/<out>.csv and "
                        "<out>.manifest.json");
    };

    CLI::App* sel = app.add_subcommand(
        "select-static", "Greedy leader selection on a static topology");
    sel->add_option("--graph", graph_file, "Graph file")->required();
    auto* sel_k = sel->add_option("--k", k, "Maximum number of leaders");
    auto* sel_a =
        sel->add_option("--alpha", alpha, "Error bound to reach (>= 0)");
    sel->add_flag("--naive", naive, "Disable lazy gain caching");
    add_common(sel);
    sel_k->excludes(sel_a);
    sel->callback([&] {
        if (!k && !alpha)
            throw CLI::ValidationError("one of --k or --alpha is required");
        if (alpha && *alpha < 0)
            throw CLI::ValidationError("--alpha must be >= 0");
    });

    CLI::App* self = app.add_subcommand(
        "select-failures", "Selection under independent random link failures");
    self->add_option("--graph", graph_file, "Graph file")->required();
    self->add_option("--p", p, "Link failure probability")->required();
    self->add_option("--samples", samples, "Monte Carlo sample count")
        ->capture_default_str();
    auto* self_k = self->add_option("--k", k, "Maximum number of leaders");
    auto* self_a = self->add_option("--alpha", alpha, "Expected-error bound");
    self->add_flag("--exact-enum", exact_enum,
                   "Enumerate all failure patterns instead of sampling");
    add_common(self);
    self_k->excludes(self_a);
    self->callback([&] {
        if (!k && !alpha)
            throw CLI::ValidationError("one of --k or --alpha is required");
        if (alpha && *alpha < 0)
            throw CLI::ValidationError("--alpha must be >= 0");
    });

    CLI::App* sw = app.add_subcommand(
        "select-switching", "Selection across predefined switching topologies");
    sw->add_option("--ensemble", ensemble_arg,
                   "Directory of graph files or comma-separated list")
        ->required();
    auto* sw_k = sw->add_option("--k", k, "Leader budget (bisection mode)");
    auto* sw_a = sw->add_option("--alpha", alpha, "Worst-case error bound");
    sw->add_option("--beta", beta, "Budget inflation (default from ensemble)");
    sw->add_option("--delta", delta, "Bisection resolution (default 1/M)");
    sw->add_option("--p", p_switch, "Per-topology link failure probability");
    sw->add_option("--samples", samples, "Monte Carlo samples per topology")
        ->capture_default_str();
    sw->add_option("--fail-mode", fail_mode, "avg or worst")
        ->check(CLI::IsMember({"avg", "worst"}))
        ->capture_default_str();
    add_common(sw);
    sw_k->excludes(sw_a);
    sw->callback([&] {
        if (!k && !alpha)
            throw CLI::ValidationError("one of --k or --alpha is required");
        if (alpha && *alpha < 0)
            throw CLI::ValidationError("--alpha must be >= 0");
    });

    CLI::App* on = app.add_subcommand(
        "online", "Multiplicative-weights selection over a topology trace");
    on->add_option("--k", k, "Leaders per step")->required();
    on->add_option("--beta", online_beta, "Learning parameter in (0, 1]")
        ->capture_default_str();
    on->add_option("--steps", steps, "Number of steps")->capture_default_str();
    on->add_option("--trace", trace_dir, "Directory with one graph file per step");
    on->add_flag("--mobility", mobility, "Generate a group-mobility trace");
    on->add_option("--n", n, "Agent count for --mobility")->capture_default_str();
    add_common(on);

    CLI::App* sim = app.add_subcommand(
        "simulate", "Integrate the noisy dynamics and compare with the "
                    "closed form");
    sim->add_option("--graph", graph_file, "Graph file")->required();
    sim->add_option("--leaders", leaders_arg, "Comma-separated leader ids")
        ->required();
    sim->add_option("--dt", dt, "Step size")->capture_default_str();
    sim->add_option("--horizon", horizon, "Total integrated time")
        ->capture_default_str();
    sim->add_option("--burn-in", burn_in, "Discarded fraction")
        ->capture_default_str();
    sim->add_option("--noise", noise, "aggregated, per-link, or none")
        ->capture_default_str();
    sim->add_option("--traj", traj_file, "Write a decimated trajectory CSV here");
    add_common(sim);

    CLI::App* vc = app.add_subcommand(
        "verify-commute", "Exact vs sampled commute times for every follower");
    vc->add_option("--graph", graph_file, "Graph file")->required();
    vc->add_option("--leaders", leaders_arg, "Comma-separated leader ids")
        ->required();
    vc->add_option("--walks", walks, "Walks per node")->capture_default_str();
    vc->add_option("--threads", threads, "Worker thread cap")
        ->capture_default_str();
    add_common(vc);

    CLI::App* be = app.add_subcommand("bench", "Experiment sweeps (CSV output)");
    be->add_option("--experiment", experiment,
                   "fig1a fig1b fig2a fig2b fig3a fig3b fig4")
        ->required();
    be->add_option("--trials", overrides.trials, "Trials per grid point");
    be->add_option("--n", overrides.n, "Agent count");
    be->add_option("--samples", overrides.mc_samples, "Monte Carlo samples");
    be->add_option("--alpha-frac", overrides.alpha_frac,
                   "Error target as a fraction of the single-leader worst case");
    be->add_option("--leaders", overrides.leaders, "Leader count for error sweeps");
    be->add_option("--steps", overrides.steps, "Mobility steps");
    add_common(be);

    CLI::App* gg = app.add_subcommand("gen-graph", "Random geometric deployment");
    gg->add_option("--spec", spec_file, "DeploymentSpec JSON file");
    gg->add_option("--n", dspec.n, "Agent count")->capture_default_str();
    gg->add_option("--width", dspec.width, "Area width (m)")->capture_default_str();
    gg->add_option("--height", dspec.height, "Area height (m)")
        ->capture_default_str();
    gg->add_option("--range", dspec.range, "Communication range (m)")
        ->capture_default_str();
    gg->add_option("--c", dspec.variance_per_meter, "Variance per meter")
        ->capture_default_str();
    gg->add_option("--retries", dspec.max_retries, "Connectivity retries")
        ->capture_default_str();
    gg->add_option("--seed", ctx.seed, "Master 64-bit seed")->capture_default_str();
    gg->add_option("--out", out_file, "Output graph file (.json for JSON form)")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        std::cerr << json{{"error", "UsageError"}, {"message", e.what()}}.dump()
                  << "\n";
        return 2;
    }

    try {
        if (!out_base.empty()) ctx.out = out_base;

        if (sel->parsed()) {
            ctx.subcommand = "select-static";
            ctx.parameters = {{"graph", graph_file}, {"naive", naive}};
            if (k) ctx.parameters["k"] = *k;
            if (alpha) ctx.parameters["alpha"] = *alpha;
            return cmd_select_static(ctx, graph_file, k, alpha, naive);
        }
        if (self->parsed()) {
            ctx.subcommand = "select-failures";
            ctx.parameters = {{"graph", graph_file},
                              {"p", p},
                              {"samples", samples},
                              {"exact_enum", exact_enum}};
            if (k) ctx.parameters["k"] = *k;
            if (alpha) ctx.parameters["alpha"] = *alpha;
            return cmd_select_failures(ctx, graph_file, p, samples, k, alpha,
                                       exact_enum);
        }
        if (sw->parsed()) {
            ctx.subcommand = "select-switching";
            ctx.parameters = {{"ensemble", ensemble_arg}, {"fail_mode", fail_mode}};
            if (k) ctx.parameters["k"] = *k;
            if (alpha) ctx.parameters["alpha"] = *alpha;
            if (beta) ctx.parameters["beta"] = *beta;
            if (delta) ctx.parameters["delta"] = *delta;
            if (p_switch) {
                ctx.parameters["p"] = *p_switch;
                ctx.parameters["samples"] = samples;
            }
            return cmd_select_switching(ctx, ensemble_arg, k, alpha, beta, delta,
                                        p_switch, samples, fail_mode);
        }
        if (on->parsed()) {
            ctx.subcommand = "online";
            ctx.parameters = {{"k", *k},
                              {"beta", online_beta},
                              {"steps", steps},
                              {"mobility", mobility},
                              {"n", n}};
            if (trace_dir) ctx.parameters["trace"] = *trace_dir;
            return cmd_online(ctx, *k, online_beta, steps, trace_dir, mobility, n);
        }
        if (sim->parsed()) {
            ctx.subcommand = "simulate";
            ctx.parameters = {{"graph", graph_file}, {"leaders", leaders_arg},
                              {"dt", dt},           {"horizon", horizon},
                              {"burn_in", burn_in}, {"noise", noise}};
            return cmd_simulate(ctx, graph_file, leaders_arg, dt, horizon,
                                burn_in, noise, traj_file);
        }
        if (vc->parsed()) {
            ctx.subcommand = "verify-commute";
            ctx.parameters = {{"graph", graph_file},
                              {"leaders", leaders_arg},
                              {"walks", walks},
                              {"threads", threads}};
            return cmd_verify_commute(ctx, graph_file, leaders_arg, walks, threads);
        }
        if (be->parsed()) {
            ctx.subcommand = "bench";
            ctx.parameters = {{"experiment", experiment}};
            if (overrides.trials) ctx.parameters["trials"] = *overrides.trials;
            if (overrides.n) ctx.parameters["n"] = *overrides.n;
            if (overrides.mc_samples)
                ctx.parameters["samples"] = *overrides.mc_samples;
            if (overrides.alpha_frac)
                ctx.parameters["alpha_frac"] = *overrides.alpha_frac;
            if (overrides.leaders) ctx.parameters["leaders"] = *overrides.leaders;
            if (overrides.steps) ctx.parameters["steps"] = *overrides.steps;
            return cmd_bench(ctx, experiment, overrides);
        }
        if (gg->parsed()) {
            ctx.subcommand = "gen-graph";
            ctx.parameters = {{"n", dspec.n},
                              {"width", dspec.width},
                              {"height", dspec.height},
                              {"range", dspec.range},
                              {"variance_per_meter", dspec.variance_per_meter},
                              {"max_retries", dspec.max_retries},
                              {"out", out_file}};
            if (spec_file) ctx.parameters["spec"] = *spec_file;
            return cmd_gen_graph(ctx, spec_file, dspec, out_file);
        }
        std::cerr << json{{"error", "UnknownSubcommand"},
                          {"message", "no subcommand given"}}
                         .dump()
                  << "\n";
        return 2;
    } catch (const leadersel::Error& e) {
        std::cerr << json{{"error", e.name()}, {"message", e.what()}}.dump()
                  << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", "InternalError"}, {"message", e.what()}}.dump()
                  << "\n";
        return 2;
    }
}
