#include "leadersel/error_metric.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace leadersel {

ErrorReport system_error(const NoisyGraph& g, const LeaderSet& s) {
    GroundedSystem sys(g, s);
    ErrorReport report;
    report.leaders = s;
    if (sys.all_leaders()) return report;

    const Eigen::VectorXd diag = sys.inverse_diagonal();
    report.per_node.reserve(sys.follower_count());
    for (int r = 0; r < sys.follower_count(); ++r) {
        const double e = 0.5 * diag(r);
        report.per_node.emplace_back(sys.followers()[r], e);
        report.total += e;
    }
    return report;
}

double total_error(const NoisyGraph& g, const LeaderSet& s) {
    return total_error(GroundedSystem(g, s));
}

double total_error(const GroundedSystem& sys) {
    return 0.5 * sys.inverse_trace();
}

double marginal_gain(const NoisyGraph& g, const LeaderSet& s, int v) {
    if (s.contains(v))
        throw AlreadyLeader("node " + std::to_string(v) + " is already a leader");
    return total_error(g, s) - total_error(g, s.with(v));
}

GradientBound gradient_bound(const NoisyGraph& g, const LeaderSet& s, double p) {
    if (p < 0.0 || p > 1.0)
        throw InvalidArgument("failure probability must lie in [0, 1]");
    GroundedSystem sys(g, s);
    GradientBound b;
    if (sys.all_leaders()) return b;

    const double trace = sys.inverse_trace();
    const double delta = 2.0 * p * g.max_degree() * g.max_inverse_variance();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sys.L_ff(),
                                                      Eigen::EigenvaluesOnly);
    const double lambda_min = es.eigenvalues().minCoeff();
    const int follower_count = sys.follower_count();

    b.trace_bound = trace + follower_count * delta / (lambda_min * lambda_min);
    b.error_bound = 0.5 * b.trace_bound;
    return b;
}

double max_singleton_error(const NoisyGraph& g) {
    double worst = 0.0;
    for (int v = 0; v < g.node_count(); ++v)
        worst = std::max(worst, total_error(g, LeaderSet({v})));
    return worst;
}

} // namespace leadersel
