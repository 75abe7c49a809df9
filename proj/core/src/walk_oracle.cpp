#include "leadersel/walk_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "leadersel/rng.hpp"

namespace leadersel {

Eigen::MatrixXd transition_matrix(const NoisyGraph& g) {
    const int n = g.node_count();
    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n, n);
    for (int u = 0; u < n; ++u) {
        const double d = g.degree_weight(u);
        for (const auto& [v, idx] : g.neighbors(u))
            P(u, v) = (1.0 / g.edges()[idx].nu) / d;
    }
    return P;
}

HittingProbabilities hitting_probabilities(const NoisyGraph& g,
                                           const LeaderSet& s, int u) {
    if (s.contains(u))
        throw LeaderTarget("target node " + std::to_string(u) + " is a leader");
    const int n = g.node_count();
    if (u < 0 || u >= n) throw InvalidArgument("target node out of range");

    // Ground at s + u and solve L_II x = -L_{I,u}; boundary values are fixed.
    std::vector<int> interior;
    std::vector<int> row(n, -1);
    for (int i = 0; i < n; ++i) {
        if (i != u && !s.contains(i)) {
            row[i] = static_cast<int>(interior.size());
            interior.push_back(i);
        }
    }

    HittingProbabilities result;
    result.target = u;
    result.absorbing = s;
    result.v_star[u] = 1.0;
    for (int l : s) result.v_star[l] = 0.0;

    const int m = static_cast<int>(interior.size());
    if (m > 0) {
        Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, m);
        Eigen::VectorXd b = Eigen::VectorXd::Zero(m);
        for (int r = 0; r < m; ++r) {
            const int i = interior[r];
            A(r, r) = g.degree_weight(i);
            for (const auto& [j, idx] : g.neighbors(i)) {
                const double w = 1.0 / g.edges()[idx].nu;
                if (row[j] >= 0)
                    A(r, row[j]) -= w;
                else if (j == u)
                    b(r) += w; // boundary value 1 at the target
            }
        }
        Eigen::VectorXd x = Eigen::LLT<Eigen::MatrixXd>(A).solve(b);
        for (int r = 0; r < m; ++r) result.v_star[interior[r]] = x(r);
    }
    return result;
}

double commute_time_exact(const NoisyGraph& g, const LeaderSet& s, int u) {
    if (s.contains(u))
        throw LeaderTarget("target node " + std::to_string(u) + " is a leader");
    GroundedSystem sys(g, s);
    const int r = sys.follower_row(u);
    if (r < 0) throw InvalidArgument("target node out of range");
    return 2.0 * g.total_inverse_variance() * sys.inverse_diagonal()(r);
}

namespace {

// One round trip u -> absorbing set -> u; returns the step count.
long long single_walk(const NoisyGraph& g, const std::vector<char>& absorbing,
                      int u, RngStream& rng) {
    long long steps = 0;
    int pos = u;
    bool reached_set = false;
    while (true) {
        // cumulative scan over the neighbor transition weights
        const double d = g.degree_weight(pos);
        const double target = rng.uniform() * d;
        double acc = 0.0;
        int next = g.neighbors(pos).back().first;
        for (const auto& [v, idx] : g.neighbors(pos)) {
            acc += 1.0 / g.edges()[idx].nu;
            if (target < acc) {
                next = v;
                break;
            }
        }
        pos = next;
        ++steps;
        if (steps > kWalkStepCap)
            throw WalkTimeout("walk exceeded " + std::to_string(kWalkStepCap) +
                              " steps");
        if (!reached_set) {
            if (absorbing[pos]) reached_set = true;
        } else if (pos == u) {
            return steps;
        }
    }
}

} // namespace

WalkEstimate commute_time_sampled(const NoisyGraph& g, const LeaderSet& s,
                                  int u, long long walks, std::uint64_t seed,
                                  int threads) {
    if (s.contains(u))
        throw LeaderTarget("target node " + std::to_string(u) + " is a leader");
    if (u < 0 || u >= g.node_count())
        throw InvalidArgument("target node out of range");
    if (walks < 1) throw InvalidArgument("walk count must be >= 1");

    std::vector<char> absorbing(g.node_count(), 0);
    for (int l : s) absorbing[l] = 1;

    RngStream master(seed);
    std::vector<double> lengths(static_cast<std::size_t>(walks));
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto run_range = [&](long long begin, long long end) {
        try {
            for (long long w = begin; w < end; ++w) {
                RngStream stream = master.substream(static_cast<std::uint64_t>(w));
                lengths[static_cast<std::size_t>(w)] =
                    static_cast<double>(single_walk(g, absorbing, u, stream));
            }
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    };

    threads = std::max(1, threads);
    if (threads == 1 || walks < 2 * threads) {
        run_range(0, walks);
    } else {
        std::vector<std::thread> pool;
        const long long chunk = (walks + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            const long long begin = t * chunk;
            const long long end = std::min(walks, begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(run_range, begin, end);
        }
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    WalkEstimate est;
    est.u = u;
    est.leaders = s;
    est.walks = walks;
    est.mean = pairwise_sum(lengths) / static_cast<double>(walks);
    if (walks > 1) {
        std::vector<double> sq(lengths.size());
        for (std::size_t i = 0; i < lengths.size(); ++i) {
            const double d = lengths[i] - est.mean;
            sq[i] = d * d;
        }
        const double var = pairwise_sum(sq) / static_cast<double>(walks - 1);
        est.stderr_ = std::sqrt(var / static_cast<double>(walks));
    }
    return est;
}

} // namespace leadersel
