#include "leadersel/noise_sim.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <string>

#include "leadersel/rng.hpp"

namespace leadersel {

namespace {

// Potentials from a spanning-tree assignment; per-edge residuals detect
// cycle-inconsistent offsets.
void check_offsets_consistent(const NoisyGraph& g,
                              const std::vector<double>& offsets) {
    if (offsets.empty()) return;
    if (static_cast<int>(offsets.size()) != g.edge_count())
        throw DimensionMismatch("one offset per edge is required");

    const int n = g.node_count();
    std::vector<double> potential(n, 0.0);
    std::vector<char> assigned(n, 0);
    std::vector<int> stack{0};
    assigned[0] = 1;
    while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        for (const auto& [v, idx] : g.neighbors(u)) {
            if (assigned[v]) continue;
            const Edge& e = g.edges()[idx];
            // offsets store x_i - x_j for the canonical edge (i < j)
            const double delta = (u == e.i) ? -offsets[idx] : offsets[idx];
            potential[v] = potential[u] + delta;
            assigned[v] = 1;
            stack.push_back(v);
        }
    }
    for (int idx = 0; idx < g.edge_count(); ++idx) {
        const Edge& e = g.edges()[idx];
        const double residual = potential[e.i] - potential[e.j] - offsets[idx];
        if (std::abs(residual) > 1e-9)
            throw InconsistentOffsets(
                "edge (" + std::to_string(e.i) + "," + std::to_string(e.j) +
                ") offset residual " + std::to_string(residual));
    }
}

// Per-follower drift term from the offsets: row u accumulates
// sum_{j in N(u)} L_uj * r_uj with r oriented away from u.
Eigen::VectorXd offset_drift(const NoisyGraph& g, const GroundedSystem& sys,
                             const std::vector<double>& offsets) {
    Eigen::VectorXd drift = Eigen::VectorXd::Zero(sys.follower_count());
    if (offsets.empty()) return drift;
    for (int r = 0; r < sys.follower_count(); ++r) {
        const int u = sys.followers()[r];
        for (const auto& [v, idx] : g.neighbors(u)) {
            const Edge& e = g.edges()[idx];
            const double r_uv = (u == e.i) ? offsets[idx] : -offsets[idx];
            drift(r) += (-1.0 / e.nu) * r_uv;
        }
    }
    return drift;
}

Eigen::VectorXd leader_state_vector(const DynamicsConfig& cfg) {
    const int l = cfg.leaders.size();
    if (cfg.leader_states.empty()) return Eigen::VectorXd::Zero(l);
    if (static_cast<int>(cfg.leader_states.size()) != l)
        throw DimensionMismatch("one state per leader is required");
    Eigen::VectorXd x(l);
    for (int i = 0; i < l; ++i) x(i) = cfg.leader_states[i];
    return x;
}

} // namespace

Eigen::VectorXd desired_state(const DynamicsConfig& cfg) {
    check_offsets_consistent(cfg.graph, cfg.offsets);
    GroundedSystem sys(cfg.graph, cfg.leaders);
    if (sys.all_leaders()) return Eigen::VectorXd();
    const Eigen::VectorXd rhs =
        sys.L_fl() * leader_state_vector(cfg) +
        offset_drift(cfg.graph, sys, cfg.offsets);
    return sys.factorization().solve(-rhs);
}

SimulationSummary integrate(const DynamicsConfig& cfg) {
    return integrate(cfg, nullptr, 1);
}

SimulationSummary integrate(
    const DynamicsConfig& cfg,
    std::vector<std::pair<double, Eigen::VectorXd>>* trajectory,
    int decimate) {
    if (cfg.dt <= 0.0) throw InvalidArgument("dt must be positive");
    if (cfg.horizon <= 0.0) throw InvalidArgument("horizon must be positive");
    if (cfg.burn_in < 0.0 || cfg.burn_in >= 1.0)
        throw InvalidArgument("burn-in fraction must lie in [0, 1)");
    decimate = std::max(1, decimate);

    check_offsets_consistent(cfg.graph, cfg.offsets);
    GroundedSystem sys(cfg.graph, cfg.leaders);
    SimulationSummary summary;
    summary.analytic = system_error(cfg.graph, cfg.leaders);
    if (sys.all_leaders()) return summary;

    const int m = sys.follower_count();
    const Eigen::VectorXd inv_D = sys.D_f().cwiseInverse();

    // Explicit-Euler stability of dx = -Df^{-1} Lff x: dt * lambda_max < 2,
    // with the spectrum taken from the symmetrized pencil.
    {
        const Eigen::VectorXd dinv_sqrt = inv_D.cwiseSqrt();
        const Eigen::MatrixXd sym =
            dinv_sqrt.asDiagonal() * sys.L_ff() * dinv_sqrt.asDiagonal();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
            sym, Eigen::EigenvaluesOnly);
        const double lambda_max = es.eigenvalues().maxCoeff();
        if (cfg.dt * lambda_max >= 2.0)
            throw UnstableStep("dt " + std::to_string(cfg.dt) +
                               " exceeds the stability limit " +
                               std::to_string(2.0 / lambda_max));
    }

    const Eigen::VectorXd x_star = desired_state(cfg);
    const Eigen::VectorXd constant_rhs =
        sys.L_fl() * leader_state_vector(cfg) +
        offset_drift(cfg.graph, sys, cfg.offsets);

    const long long steps = static_cast<long long>(cfg.horizon / cfg.dt);
    const long long burn = static_cast<long long>(cfg.burn_in * steps);

    RngStream rng(cfg.seed);
    Eigen::VectorXd x = x_star; // start at equilibrium; burn-in absorbs it
    Eigen::VectorXd noise = Eigen::VectorXd::Zero(m);

    // Per-step noise scales: the aggregated per-follower process has
    // intensity 1/D_i, so each Euler step adds N(0, dt/D_i).
    const Eigen::VectorXd agg_scale = (inv_D * cfg.dt).cwiseSqrt();
    // Per-link mode: each directed measurement noise enters follower u as
    // -(1/D_u) * (1/nu) * N(0, nu dt), i.e. sd (1/D_u) sqrt(dt/nu).
    std::vector<std::pair<int, double>> link_terms; // (row, sd) pairs
    if (cfg.noise == NoiseMode::per_link) {
        for (int r = 0; r < m; ++r) {
            const int u = sys.followers()[r];
            for (const auto& [v, idx] : cfg.graph.neighbors(u)) {
                const double nu = cfg.graph.edges()[idx].nu;
                link_terms.emplace_back(r, inv_D(r) * std::sqrt(cfg.dt / nu));
            }
        }
    }

    Eigen::VectorXd sum_dev = Eigen::VectorXd::Zero(m);
    Eigen::VectorXd sum_sq = Eigen::VectorXd::Zero(m);
    Eigen::VectorXd drift(m);
    Eigen::VectorXd dev(m);
    long long kept = 0;

    // batch means for the autocorrelation-aware stderr of the mean
    constexpr int kBatches = 100;
    Eigen::MatrixXd batch_sums = Eigen::MatrixXd::Zero(kBatches, m);
    Eigen::VectorXd batch_counts = Eigen::VectorXd::Zero(kBatches);
    const long long post = std::max(1ll, steps - burn);

    for (long long step = 0; step < steps; ++step) {
        switch (cfg.noise) {
        case NoiseMode::aggregated:
            for (int r = 0; r < m; ++r) noise(r) = agg_scale(r) * rng.normal();
            break;
        case NoiseMode::per_link:
            noise.setZero();
            for (const auto& [r, sd] : link_terms) noise(r) += sd * rng.normal();
            break;
        case NoiseMode::none:
            noise.setZero();
            break;
        }
        drift.noalias() = sys.L_ff() * x;
        drift += constant_rhs;
        x += noise - cfg.dt * inv_D.cwiseProduct(drift);

        if (trajectory && step % decimate == 0)
            trajectory->emplace_back(step * cfg.dt, x);

        if (step >= burn) {
            dev = x - x_star;
            sum_dev += dev;
            sum_sq += dev.cwiseProduct(dev);
            const int batch = static_cast<int>(
                std::min<long long>(kBatches - 1, (step - burn) * kBatches / post));
            batch_sums.row(batch) += dev.transpose();
            batch_counts(batch) += 1.0;
            ++kept;
        }
    }

    summary.samples = kept;
    const double inv_kept = 1.0 / static_cast<double>(kept);
    summary.empirical_mse = sum_sq.sum() * inv_kept;
    for (int r = 0; r < m; ++r) {
        summary.per_node_variance.emplace_back(sys.followers()[r],
                                               sum_sq(r) * inv_kept);
        summary.mean_deviation.emplace_back(sys.followers()[r],
                                            sum_dev(r) * inv_kept);
    }
    // stderr of the mean from batch means
    for (int r = 0; r < m; ++r) {
        double mean_of_batches = 0.0;
        int used = 0;
        for (int b = 0; b < kBatches; ++b) {
            if (batch_counts(b) > 0) {
                mean_of_batches += batch_sums(b, r) / batch_counts(b);
                ++used;
            }
        }
        mean_of_batches /= std::max(1, used);
        double var = 0.0;
        for (int b = 0; b < kBatches; ++b) {
            if (batch_counts(b) > 0) {
                const double d = batch_sums(b, r) / batch_counts(b) - mean_of_batches;
                var += d * d;
            }
        }
        var /= std::max(1, used - 1);
        summary.mean_deviation_stderr.emplace_back(
            sys.followers()[r], std::sqrt(var / std::max(1, used)));
    }

    if (summary.analytic.total > 0.0)
        summary.relative_gap =
            std::abs(summary.empirical_mse - summary.analytic.total) /
            summary.analytic.total;
    return summary;
}

double lyapunov_residual(const NoisyGraph& g, const LeaderSet& s) {
    GroundedSystem sys(g, s);
    if (sys.all_leaders()) return 0.0;
    const int m = sys.follower_count();
    const Eigen::MatrixXd X =
        0.5 * sys.factorization().solve(Eigen::MatrixXd::Identity(m, m));
    const Eigen::MatrixXd inv_D = sys.D_f().cwiseInverse().asDiagonal();
    const Eigen::MatrixXd residual =
        -inv_D * sys.L_ff() * X - X * sys.L_ff() * inv_D + inv_D;
    return residual.cwiseAbs().maxCoeff();
}

} // namespace leadersel
