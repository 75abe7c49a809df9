#include "leadersel/graph.hpp"

#include <algorithm>
#include <string>

namespace leadersel {

NoisyGraph::NoisyGraph(int n, std::vector<Edge> edges) : n_(n) {
    if (n <= 0) throw InvalidArgument("node count must be positive");

    for (Edge& e : edges) {
        if (e.i < 0 || e.i >= n || e.j < 0 || e.j >= n)
            throw InvalidArgument("edge endpoint out of range: (" +
                                  std::to_string(e.i) + "," + std::to_string(e.j) + ")");
        if (e.i == e.j)
            throw SelfLoop("self-loop at node " + std::to_string(e.i));
        if (e.nu <= 0.0)
            throw NonPositiveVariance("edge (" + std::to_string(e.i) + "," +
                                      std::to_string(e.j) + ") has variance " +
                                      std::to_string(e.nu));
        if (e.i > e.j) std::swap(e.i, e.j);
    }
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
        return std::pair(a.i, a.j) < std::pair(b.i, b.j);
    });
    for (std::size_t k = 1; k < edges.size(); ++k) {
        if (edges[k - 1].i == edges[k].i && edges[k - 1].j == edges[k].j)
            throw DuplicateEdge("duplicate edge (" + std::to_string(edges[k].i) +
                                "," + std::to_string(edges[k].j) + ")");
    }
    edges_ = std::move(edges);

    adjacency_.assign(n_, {});
    degree_weight_.assign(n_, 0.0);
    for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
        const Edge& ed = edges_[e];
        adjacency_[ed.i].emplace_back(ed.j, e);
        adjacency_[ed.j].emplace_back(ed.i, e);
        const double inv = 1.0 / ed.nu;
        degree_weight_[ed.i] += inv;
        degree_weight_[ed.j] += inv;
        total_inv_nu_ += inv;
    }

    // connectivity by traversal from node 0
    std::vector<char> seen(n_, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        for (const auto& [v, idx] : adjacency_[u]) {
            if (!seen[v]) {
                seen[v] = 1;
                ++reached;
                stack.push_back(v);
            }
        }
    }
    if (reached != n_)
        throw Disconnected("graph is disconnected: reached " +
                           std::to_string(reached) + " of " + std::to_string(n_) +
                           " nodes");
}

int NoisyGraph::max_degree() const {
    int d = 0;
    for (int u = 0; u < n_; ++u) d = std::max(d, degree(u));
    return d;
}

double NoisyGraph::max_inverse_variance() const {
    double x = 0.0;
    for (const Edge& e : edges_) x = std::max(x, 1.0 / e.nu);
    return x;
}

NoisyGraph NoisyGraph::scaled(double c) const {
    if (c <= 0.0) throw InvalidArgument("scale factor must be positive");
    std::vector<Edge> scaled_edges = edges_;
    for (Edge& e : scaled_edges) e.nu *= c;
    return NoisyGraph(n_, std::move(scaled_edges));
}

LeaderSet::LeaderSet(std::vector<int> members) {
    for (int v : members) {
        if (contains(v))
            throw AlreadyLeader("node " + std::to_string(v) + " listed twice");
        members_.push_back(v);
    }
}

bool LeaderSet::contains(int v) const {
    return std::find(members_.begin(), members_.end(), v) != members_.end();
}

void LeaderSet::add(int v) {
    if (contains(v))
        throw AlreadyLeader("node " + std::to_string(v) + " is already a leader");
    members_.push_back(v);
}

LeaderSet LeaderSet::with(int v) const {
    LeaderSet copy = *this;
    copy.add(v);
    return copy;
}

GroundedSystem::GroundedSystem(const NoisyGraph& g, LeaderSet leaders)
    : leaders_(std::move(leaders)) {
    const int n = g.node_count();
    if (leaders_.empty()) throw EmptyLeaderSet("leader set is empty");

    follower_row_.assign(n, -1);
    std::vector<char> is_leader(n, 0);
    for (int v : leaders_) {
        if (v < 0 || v >= n)
            throw InvalidArgument("leader id " + std::to_string(v) + " out of range");
        is_leader[v] = 1;
    }
    for (int u = 0; u < n; ++u) {
        if (!is_leader[u]) {
            follower_row_[u] = static_cast<int>(followers_.size());
            followers_.push_back(u);
        }
    }

    const int m = static_cast<int>(followers_.size());
    const int l = leaders_.size();
    L_ff_ = Eigen::MatrixXd::Zero(m, m);
    L_fl_ = Eigen::MatrixXd::Zero(m, l);
    D_f_ = Eigen::VectorXd::Zero(m);

    std::vector<int> leader_col(n, -1);
    for (int c = 0; c < l; ++c) leader_col[leaders_.members()[c]] = c;

    for (int r = 0; r < m; ++r) {
        const int u = followers_[r];
        D_f_(r) = g.degree_weight(u);
        L_ff_(r, r) = g.degree_weight(u);
        for (const auto& [v, idx] : g.neighbors(u)) {
            const double w = -1.0 / g.edges()[idx].nu;
            if (follower_row_[v] >= 0)
                L_ff_(r, follower_row_[v]) = w;
            else
                L_fl_(r, leader_col[v]) = w;
        }
    }

    if (m > 0) {
        llt_.compute(L_ff_);
        if (llt_.info() != Eigen::Success)
            throw Disconnected("grounded Laplacian is not positive definite");
    }
}

Eigen::VectorXd GroundedSystem::inverse_diagonal() const {
    const int m = follower_count();
    if (m == 0) return Eigen::VectorXd();
    // L_ff = C C^T  =>  (L_ff^{-1})_uu = || column u of C^{-1} ||^2
    Eigen::MatrixXd inv_chol = llt_.matrixL().solve(Eigen::MatrixXd::Identity(m, m));
    return inv_chol.colwise().squaredNorm().transpose();
}

double GroundedSystem::inverse_trace() const {
    if (follower_count() == 0) return 0.0;
    return inverse_diagonal().sum();
}

NoisyGraph build_graph(int n, std::vector<Edge> edges) {
    return NoisyGraph(n, std::move(edges));
}

Eigen::MatrixXd laplacian(const NoisyGraph& g) {
    const int n = g.node_count();
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
    for (const Edge& e : g.edges()) {
        const double w = 1.0 / e.nu;
        L(e.i, e.j) -= w;
        L(e.j, e.i) -= w;
        L(e.i, e.i) += w;
        L(e.j, e.j) += w;
    }
    return L;
}

GroundedSystem ground(const NoisyGraph& g, const LeaderSet& s) {
    return GroundedSystem(g, s);
}

} // namespace leadersel
