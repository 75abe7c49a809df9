#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "leadersel/graph.hpp"

using namespace leadersel;
using test_helpers::path_graph;
using test_helpers::random_connected_graph;
using test_helpers::triangle;

TEST_CASE("build_graph validates its inputs") {
    CHECK_NOTHROW(build_graph(2, {{0, 1, 1.0}}));
    CHECK_THROWS_AS(build_graph(3, {{0, 1, 1.0}}), Disconnected);
    CHECK_THROWS_AS(build_graph(3, {{0, 1, 1.0}, {0, 1, 2.0}}), DuplicateEdge);
    // duplicates are detected on the canonical orientation
    CHECK_THROWS_AS(build_graph(3, {{0, 1, 1.0}, {1, 0, 2.0}}), DuplicateEdge);
    CHECK_THROWS_AS(build_graph(2, {{0, 0, 1.0}, {0, 1, 1.0}}), SelfLoop);
    CHECK_THROWS_AS(build_graph(2, {{0, 1, 0.0}}), NonPositiveVariance);
    CHECK_THROWS_AS(build_graph(2, {{0, 1, -0.5}}), NonPositiveVariance);
    CHECK_THROWS_AS(build_graph(2, {{0, 2, 1.0}}), InvalidArgument);
}

TEST_CASE("edges are canonicalized with i < j and sorted") {
    const NoisyGraph g(3, {{2, 1, 1.0}, {1, 0, 1.0}});
    REQUIRE(g.edge_count() == 2);
    CHECK(g.edges()[0].i == 0);
    CHECK(g.edges()[0].j == 1);
    CHECK(g.edges()[1].i == 1);
    CHECK(g.edges()[1].j == 2);
}

TEST_CASE("laplacian matches the closed form on small graphs") {
    const Eigen::MatrixXd L2 = laplacian(path_graph(2));
    CHECK(L2(0, 0) == 1.0);
    CHECK(L2(0, 1) == -1.0);
    CHECK(L2(1, 0) == -1.0);
    CHECK(L2(1, 1) == 1.0);

    const Eigen::MatrixXd Lt = laplacian(triangle());
    for (int i = 0; i < 3; ++i) {
        CHECK(Lt(i, i) == 2.0);
        for (int j = 0; j < 3; ++j)
            if (i != j) CHECK(Lt(i, j) == -1.0);
    }

    const Eigen::MatrixXd Lh = laplacian(path_graph(2, 0.5));
    CHECK(Lh(0, 0) == 2.0);
    CHECK(Lh(0, 1) == -2.0);
}

TEST_CASE("laplacian rows sum to zero on random graphs") {
    RngStream rng(41);
    for (int trial = 0; trial < 20; ++trial) {
        RngStream sub = rng.substream(trial);
        const NoisyGraph g =
            random_connected_graph(3 + static_cast<int>(sub.uniform_int(8)), sub);
        const Eigen::VectorXd sums = laplacian(g).rowwise().sum();
        CHECK(sums.cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("ground produces the follower partition") {
    const GroundedSystem two = ground(path_graph(2), LeaderSet({1}));
    REQUIRE(two.follower_count() == 1);
    CHECK(two.L_ff()(0, 0) == 1.0);
    CHECK(two.followers()[0] == 0);

    const GroundedSystem tri = ground(triangle(), LeaderSet({0}));
    REQUIRE(tri.follower_count() == 2);
    CHECK(tri.L_ff()(0, 0) == 2.0);
    CHECK(tri.L_ff()(0, 1) == -1.0);
    CHECK(tri.L_ff()(1, 0) == -1.0);
    CHECK(tri.L_ff()(1, 1) == 2.0);

    const GroundedSystem all = ground(triangle(), LeaderSet({0, 1, 2}));
    CHECK(all.all_leaders());
    CHECK(all.follower_count() == 0);

    CHECK_THROWS_AS(ground(triangle(), LeaderSet({})), EmptyLeaderSet);
}

TEST_CASE("grounded blocks reproduce the Laplacian sub-blocks exactly") {
    RngStream rng(42);
    for (int trial = 0; trial < 10; ++trial) {
        RngStream sub = rng.substream(trial);
        const int n = 4 + static_cast<int>(sub.uniform_int(6));
        const NoisyGraph g = random_connected_graph(n, sub);
        const LeaderSet s = test_helpers::random_leaders(n, sub);
        const GroundedSystem sys = ground(g, s);
        const Eigen::MatrixXd L = laplacian(g);

        CHECK(sys.factorization().info() == Eigen::Success);
        for (int r = 0; r < sys.follower_count(); ++r) {
            const int u = sys.followers()[r];
            CHECK(sys.D_f()(r) == L(u, u));
            for (int c = 0; c < sys.follower_count(); ++c)
                CHECK(sys.L_ff()(r, c) == L(u, sys.followers()[c]));
            for (int c = 0; c < s.size(); ++c)
                CHECK(sys.L_fl()(r, c) == L(u, s.members()[c]));
        }
    }
}

TEST_CASE("leader sets preserve order and reject duplicates") {
    LeaderSet s({3, 1, 2});
    CHECK(s.members() == std::vector<int>{3, 1, 2});
    CHECK(s.contains(1));
    CHECK_FALSE(s.contains(0));
    CHECK_THROWS_AS(s.add(3), AlreadyLeader);
    CHECK_THROWS_AS(LeaderSet({1, 1}), AlreadyLeader);
    const LeaderSet t = s.with(0);
    CHECK(t.size() == 4);
    CHECK(s.size() == 3);
}
