#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <map>
#include <set>

#include "sdcomp/constructions.hpp"
#include "sdcomp/facial_reduction.hpp"

using namespace sdcomp;

namespace {

// brute-force treewidth via elimination orders over subsets (n <= 11)
int brute_force_treewidth(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<uint32_t> adj(n, 0);
    for (const auto& [u, v] : g.edges()) {
        adj[u] |= 1u << v;
        adj[v] |= 1u << u;
    }
    std::vector<int> best(1u << n, n);
    best[0] = 0;
    // dp over eliminated sets: width of eliminating v from state s is the
    // number of not-yet-eliminated neighbors in the fill graph; use the classic
    // q-function: neighbors reachable through eliminated vertices
    std::function<int(uint32_t, int)> qdeg = [&](uint32_t s, int v) {
        // vertices outside s reachable from v via vertices inside s
        uint32_t seen = 1u << v, frontier = 1u << v, result = 0;
        while (frontier) {
            uint32_t next = 0;
            for (int u = 0; u < n; ++u)
                if (frontier & (1u << u)) next |= adj[u];
            next &= ~seen;
            seen |= next;
            result |= next & ~s;
            frontier = next & s;
        }
        return __builtin_popcount(result & ~(1u << v));
    };
    for (uint32_t s = 0; s < (1u << n); ++s) {
        if (best[s] == n && s != 0) continue;
        for (int v = 0; v < n; ++v) {
            if (s & (1u << v)) continue;
            int w = std::max(best[s], qdeg(s, v));
            uint32_t t = s | (1u << v);
            if (w < best[t]) best[t] = w;
        }
    }
    return best[(1u << n) - 1];
}

Graph expected_gk_graph(int k) {
    // independent edge-list builder straight from the recursion
    Graph g(3 * k - 2);
    auto u = [](int i) { return 3 * i - 5; };
    auto v = [](int i) { return i == 1 ? 0 : 3 * i - 4; };
    auto w = [](int i) { return i == 1 ? 0 : 3 * i - 3; };
    for (int i = 2; i <= k; ++i) {
        g.add_edge(w(i - 1), v(i));
        g.add_edge(w(i - 1), w(i));
        g.add_edge(u(i), v(i - 1));
        g.add_edge(u(i), v(i));
        g.add_edge(u(i), w(i));
    }
    return g;
}

} // namespace

TEST_CASE("degenerate cycle construction") {
    SUBCASE("n = 4 uses the quarter-circle angles") {
        auto f = gen_cycle_degenerate(4);
        CHECK(f.d == 2);
        CHECK(f.points[0] == f.points[1]);
        CHECK(f.params.at("angle_2") == doctest::Approx(M_PI / 4));
        CHECK(f.params.at("angle_3") == doctest::Approx(M_PI / 2));
    }
    SUBCASE("the coincident pair always has weight one") {
        for (int n : {4, 5, 6, 7, 8}) {
            auto f = gen_cycle_degenerate(n);
            auto inst = framework_to_instance(f);
            auto idx = inst.edge_index(0, 1, ConstraintKind::eq);
            REQUIRE(idx.has_value());
            CHECK(inst.edges()[*idx].c == 1.0);
        }
    }
    SUBCASE("angles increase strictly along the arc") {
        auto f = gen_cycle_degenerate(7);
        for (int i = 3; i < 7; ++i)
            CHECK(f.params.at("angle_" + std::to_string(i)) >
                  f.params.at("angle_" + std::to_string(i - 1)));
    }
    SUBCASE("facial reduction needs two stages") {
        auto f = gen_cycle_degenerate(6);
        auto fr = facial_reduction(framework_to_instance(f));
        CHECK(fr.sd_upper == 2);
    }
    CHECK_THROWS_AS(gen_cycle_degenerate(3), InvalidSpec);
}

TEST_CASE("wheel construction") {
    auto f = gen_wheel_p1(5);
    SUBCASE("center at the arc midpoint of the first two rim vertices") {
        CHECK(f.points[0][0] == doctest::Approx(std::sqrt(0.5)));
        CHECK(f.points[0][1] == doctest::Approx(std::sqrt(0.5)));
        CHECK(f.points[0][2] == doctest::Approx(0.0));
    }
    SUBCASE("stage-1 stress avoids the far rim edges") {
        auto inst = framework_to_instance(f);
        auto fr = facial_reduction(inst);
        REQUIRE(fr.feasible);
        REQUIRE(fr.sd_upper >= 1);
        const auto& w1 = fr.certificate.stages[0];
        for (auto [u, v] : std::vector<std::pair<int, int>>{{2, 3}, {0, 3}, {3, 4}}) {
            auto idx = inst.edge_index(u, v, ConstraintKind::eq);
            REQUIRE(idx.has_value());
            CHECK(std::fabs(w1.edge[*idx]) < 1e-6);
        }
    }
    SUBCASE("staged lower bound certifies two stages") {
        CHECK(stage_reachability_lower_bound(f, reduction_targets(f)) == 2);
    }
    CHECK_THROWS_AS(gen_wheel_p1(4), InvalidSpec);
}

TEST_CASE("subdivided K4 constructions") {
    SUBCASE("base variant matches the hand construction") {
        SubdividedK4Spec spec; // defaults: one subdivision of the v0-v3 spoke
        auto f = gen_subdivided_k4(spec);
        CHECK(f.n == 5);
        int w3 = static_cast<int>(f.params.at("w3"));
        // v3 is the arc midpoint between the center and the third axis
        auto mid = f.points[3];
        auto expect_x = f.points[0][0] / std::sqrt(2.0 + std::sqrt(2.0)) * std::sqrt(2.0);
        (void)expect_x;
        double dot_v0 = 0, dot_w3 = 0;
        for (int k = 0; k < 3; ++k) {
            dot_v0 += mid[k] * f.points[0][k];
            dot_w3 += mid[k] * f.points[w3][k];
        }
        CHECK(dot_v0 == doctest::Approx(dot_w3)); // equidistant endpoints
    }
    SUBCASE("zero extra subdivisions reduce to the base graph") {
        SubdividedK4Spec spec;
        spec.s23 = 0;
        spec.s31 = 0;
        auto base = gen_subdivided_k4(spec);
        SubdividedK4Spec spec3 = spec;
        spec3.s23 = 1;
        spec3.s31 = 2;
        auto bigger = gen_subdivided_k4(spec3);
        CHECK(bigger.n == base.n + 3);
    }
    SUBCASE("unique completion after reduction") {
        SubdividedK4Spec spec;
        auto f = gen_subdivided_k4(spec);
        auto inst = framework_to_instance(f);
        auto fr = facial_reduction(inst);
        REQUIRE(fr.feasible);
        auto cert = augment_tightness(inst, fr);
        CHECK(check_nondegeneracy(inst, cert, fr.max_rank_solution));
        CHECK(numeric_rank(fr.max_rank_solution) == 3);
    }
    CHECK_THROWS_AS(gen_subdivided_k4({0, 0, 0, 0, 0, 0, 0, 0.5}), InvalidSpec);
}

TEST_CASE("wheel splitting variants") {
    SUBCASE("rim subdivision contains the wheel skeleton") {
        WheelSplittingSpec spec;
        spec.variant = WheelSplitVariant::rim_subdivision;
        spec.n = 7;
        spec.subdivisions = 1;
        auto f = gen_wheel_splitting(spec);
        CHECK(f.n == 8);
        auto inst = framework_to_instance(f);
        auto fr = facial_reduction(inst);
        REQUIRE(fr.feasible);
        auto cert = augment_tightness(inst, fr);
        CHECK(check_nondegeneracy(inst, cert, fr.max_rank_solution));
    }
    SUBCASE("triangle split keeps the x u1 u2 triangle") {
        WheelSplittingSpec spec;
        spec.variant = WheelSplitVariant::center_split_triangle;
        spec.n = 7;
        auto f = gen_wheel_splitting(spec);
        Graph g = f.graph();
        CHECK(g.has_edge(0, 2)); // x - u1
        CHECK(g.has_edge(0, 3)); // x - u2
        CHECK(g.has_edge(2, 3)); // u1 - u2
        // targets unstressed at stage one
        auto inst = framework_to_instance(f);
        auto fr = facial_reduction(inst);
        REQUIRE(fr.feasible);
        auto report = staged_stress_analysis(f, fr.certificate);
        auto targets = reduction_targets(f);
        REQUIRE(targets.size() == 2);
        for (int t : targets) CHECK(report.first_stressed[t] != 1);
    }
    SUBCASE("square split has the induced four cycle") {
        WheelSplittingSpec spec;
        spec.variant = WheelSplitVariant::center_split_square;
        spec.n = 7;
        auto f = gen_wheel_splitting(spec);
        Graph g = f.graph();
        // x u1 u2 u3 is an induced four-cycle
        CHECK(g.has_edge(0, 2));
        CHECK(g.has_edge(2, 3));
        CHECK(g.has_edge(3, 4));
        CHECK(g.has_edge(0, 4));
        CHECK_FALSE(g.has_edge(0, 3));
        CHECK_FALSE(g.has_edge(2, 4));
    }
}

TEST_CASE("recursive family") {
    SUBCASE("k = 1 is a single vertex") {
        auto f = gen_gk(1);
        CHECK(f.n == 1);
        CHECK(f.edges.empty());
    }
    SUBCASE("vertex count is 3k - 2") {
        for (int k : {1, 2, 3, 4, 5}) CHECK(gen_gk(k).n == 3 * k - 2);
    }
    SUBCASE("adjacency matches the recursion") {
        for (int k : {2, 3, 4, 5}) {
            auto f = gen_gk(k);
            CHECK(f.graph() == expected_gk_graph(k));
        }
    }
    SUBCASE("treewidth is three for small members") {
        for (int k : {3, 4}) {
            auto f = gen_gk(k);
            CHECK(brute_force_treewidth(f.graph()) == 3);
        }
    }
    SUBCASE("theta stays clear of the degenerate limits") {
        CHECK_THROWS_AS(gen_gk(3, M_PI / 2), InvalidSpec);
        CHECK_THROWS_AS(gen_gk(3, M_PI), InvalidSpec);
        // a different admissible angle changes nothing structural
        auto f = gen_gk(3, 2.0);
        CHECK(f.graph() == expected_gk_graph(3));
    }
}

TEST_CASE("complete boundary instances") {
    SUBCASE("full rank is strictly feasible") {
        auto f = gen_complete_boundary(4, 4, 7);
        auto fr = facial_reduction(framework_to_instance(f));
        CHECK(fr.sd_upper == 0);
    }
    SUBCASE("rank one gives sign weights") {
        auto f = gen_complete_boundary(5, 1, 7);
        auto inst = framework_to_instance(f);
        for (const auto& e : inst.edges()) CHECK(std::fabs(std::fabs(e.c) - 1.0) < 1e-12);
    }
    SUBCASE("rank n-1 needs exactly one stage") {
        auto f = gen_complete_boundary(5, 4, 11);
        auto fr = facial_reduction(framework_to_instance(f));
        CHECK(fr.sd_upper == 1);
        CHECK(numeric_rank(fr.max_rank_solution) == 4);
    }
    SUBCASE("deterministic in the seed") {
        auto a = gen_complete_boundary(4, 2, 99);
        auto b = gen_complete_boundary(4, 2, 99);
        for (int v = 0; v < 4; ++v)
            for (int k = 0; k < 2; ++k) CHECK(a.points[v][k] == b.points[v][k]);
    }
}

TEST_CASE("free parameters do not change staged conclusions") {
    // sampled robustness: angle choices within range keep the lower bounds
    for (double theta : {1.7, 2.0, 2.5}) {
        auto f = gen_gk(3, theta);
        CHECK(stage_reachability_lower_bound(f, reduction_targets(f)) >= 2);
    }
    for (int n : {4, 6, 8}) {
        auto f = gen_cycle_degenerate(n);
        CHECK(stage_reachability_lower_bound(f, {n - 2, n - 1}) == 2);
    }
}
