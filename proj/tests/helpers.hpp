#pragma once

#include <algorithm>
#include <vector>

#include "leadersel/graph.hpp"
#include "leadersel/rng.hpp"

namespace test_helpers {

using leadersel::Edge;
using leadersel::LeaderSet;
using leadersel::NoisyGraph;

inline NoisyGraph path_graph(int n, double nu = 1.0) {
    std::vector<Edge> edges;
    for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, nu});
    return NoisyGraph(n, std::move(edges));
}

inline NoisyGraph triangle(double nu = 1.0) {
    return NoisyGraph(3, {{0, 1, nu}, {0, 2, nu}, {1, 2, nu}});
}

inline NoisyGraph star(int leaves, double nu = 1.0) {
    std::vector<Edge> edges;
    for (int i = 1; i <= leaves; ++i) edges.push_back({0, i, nu});
    return NoisyGraph(leaves + 1, std::move(edges));
}

/// Random connected graph: spanning tree plus extra edges, variances in
/// [0.5, 2.0). `extra` is the probability of each non-tree pair.
inline NoisyGraph random_connected_graph(int n, leadersel::RngStream& rng,
                                         double extra = 0.3) {
    std::vector<Edge> edges;
    std::vector<std::vector<char>> have(n, std::vector<char>(n, 0));
    for (int v = 1; v < n; ++v) {
        const int u = static_cast<int>(rng.uniform_int(v));
        edges.push_back({u, v, rng.uniform(0.5, 2.0)});
        have[u][v] = have[v][u] = 1;
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!have[i][j] && rng.uniform() < extra)
                edges.push_back({i, j, rng.uniform(0.5, 2.0)});
    return NoisyGraph(n, std::move(edges));
}

/// Random nonempty proper subset of nodes as a leader set.
inline LeaderSet random_leaders(int n, leadersel::RngStream& rng,
                                int max_size = -1) {
    if (max_size < 1) max_size = n - 1;
    const int size =
        1 + static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(
                std::max(1, std::min(max_size, n - 1)))));
    LeaderSet s;
    while (s.size() < size) {
        const int v = static_cast<int>(rng.uniform_int(n));
        if (!s.contains(v)) s.add(v);
    }
    return s;
}

} // namespace test_helpers
