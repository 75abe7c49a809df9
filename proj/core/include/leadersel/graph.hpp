#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include <utility>
#include <vector>

#include "leadersel/errors.hpp"

namespace leadersel {

/// Undirected edge with per-link noise variance. Canonical form has i < j.
struct Edge {
    int i = 0;
    int j = 0;
    double nu = 1.0;
};

/// Undirected weighted graph over dense node ids 0..n-1 with strictly
/// positive per-link noise variances. Connectivity is checked at
/// construction; all algorithms may assume it afterwards. Immutable and
/// safe to share across threads.
class NoisyGraph {
public:
    NoisyGraph(int n, std::vector<Edge> edges);

    int node_count() const { return n_; }
    /// Edges in canonical order: i < j, sorted lexicographically.
    const std::vector<Edge>& edges() const { return edges_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    /// Neighbors of node u as (neighbor id, edge index into edges()).
    const std::vector<std::pair<int, int>>& neighbors(int u) const {
        return adjacency_[u];
    }

    int degree(int u) const { return static_cast<int>(adjacency_[u].size()); }
    int max_degree() const;

    /// D_u: sum of inverse variances over edges incident to u.
    double degree_weight(int u) const { return degree_weight_[u]; }

    /// Sum of inverse variances over all edges.
    double total_inverse_variance() const { return total_inv_nu_; }

    /// Largest inverse variance over all edges.
    double max_inverse_variance() const;

    /// Copy with every variance multiplied by c > 0.
    NoisyGraph scaled(double c) const;

private:
    int n_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::pair<int, int>>> adjacency_;
    std::vector<double> degree_weight_;
    double total_inv_nu_ = 0.0;
};

/// Ordered set of distinct leader node ids; order records greedy pick order.
class LeaderSet {
public:
    LeaderSet() = default;
    explicit LeaderSet(std::vector<int> members);

    const std::vector<int>& members() const { return members_; }
    int size() const { return static_cast<int>(members_.size()); }
    bool empty() const { return members_.empty(); }
    bool contains(int v) const;

    /// Appends v; throws AlreadyLeader on duplicates.
    void add(int v);
    /// Copy with v appended.
    LeaderSet with(int v) const;

    auto begin() const { return members_.begin(); }
    auto end() const { return members_.end(); }

private:
    std::vector<int> members_;
};

/// Follower/leader partition of the weighted Laplacian for a fixed
/// (graph, leader set), with the SPD factorization of L_ff cached.
/// Follower rows are ordered by ascending node id.
class GroundedSystem {
public:
    GroundedSystem(const NoisyGraph& g, LeaderSet leaders);

    const LeaderSet& leaders() const { return leaders_; }
    const std::vector<int>& followers() const { return followers_; }
    int follower_count() const { return static_cast<int>(followers_.size()); }
    /// True when every node leads (L_ff is 0x0); valid but degenerate.
    bool all_leaders() const { return followers_.empty(); }

    /// Row index of follower node u, or -1 for leaders.
    int follower_row(int u) const { return follower_row_[u]; }

    const Eigen::MatrixXd& L_ff() const { return L_ff_; }
    const Eigen::MatrixXd& L_fl() const { return L_fl_; }
    /// Diagonal of D restricted to followers.
    const Eigen::VectorXd& D_f() const { return D_f_; }

    const Eigen::LLT<Eigen::MatrixXd>& factorization() const { return llt_; }

    /// Diagonal of L_ff^{-1}, computed from the cached Cholesky factor.
    Eigen::VectorXd inverse_diagonal() const;

    /// Trace of L_ff^{-1}.
    double inverse_trace() const;

private:
    LeaderSet leaders_;
    std::vector<int> followers_;
    std::vector<int> follower_row_;
    Eigen::MatrixXd L_ff_;
    Eigen::MatrixXd L_fl_;
    Eigen::VectorXd D_f_;
    Eigen::LLT<Eigen::MatrixXd> llt_;
};

/// Validates ids, variances, duplicates and connectivity.
NoisyGraph build_graph(int n, std::vector<Edge> edges);

/// Full weighted Laplacian: off-diagonal -1/nu_ij, diagonal D_i.
Eigen::MatrixXd laplacian(const NoisyGraph& g);

/// Partition L for the given leader set. Throws EmptyLeaderSet.
GroundedSystem ground(const NoisyGraph& g, const LeaderSet& s);

} // namespace leadersel
