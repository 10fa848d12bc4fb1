#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <random>

#include "sdcomp/instance.hpp"

using namespace sdcomp;

TEST_CASE("minimal instance parses") {
    auto inst = parse_instance(R"({"n":2, "edges":[{"u":0,"v":1,"kind":"eq","c":1.0}]})");
    CHECK(inst.vertex_count() == 2);
    REQUIRE(inst.edge_count() == 1);
    CHECK(inst.edges()[0].kind == ConstraintKind::eq);
    CHECK(inst.edges()[0].c == 1.0);
}

TEST_CASE("parser rejects bad input") {
    CHECK_THROWS_AS(parse_instance(R"({"n":2, "edges":[{"u":0,"v":1,"kind":"eq","c":1.5}]})"),
                    WeightOutOfRange);
    CHECK_THROWS_AS(parse_instance(R"({"n":2, "edges":[], "extra": 1})"), ParseError);
    CHECK_THROWS_AS(parse_instance(R"({"n":2, "edges":[{"u":0,"v":1,"kind":"??","c":0}]})"),
                    ParseError);
    CHECK_THROWS_AS(parse_instance(R"({"n":2, "edges":[{"u":0,"v":2,"kind":"eq","c":0}]})"),
                    ParseError);
    CHECK_THROWS_AS(parse_instance(R"({"n":2, "edges":[{"u":0,"v":0,"kind":"eq","c":0}]})"),
                    ParseError);
    CHECK_THROWS_AS(
        parse_instance(
            R"({"n":2, "edges":[{"u":0,"v":1,"kind":"eq","c":0},{"u":1,"v":0,"kind":"eq","c":0.5}]})"),
        ParseError);
    CHECK_THROWS_AS(parse_instance(R"({"n":2, "edges":[{"u":0,"v":1,"kind":"eq","c":0,"x":1}]})"),
                    ParseError);
    CHECK_THROWS_AS(parse_instance("not json"), ParseError);
}

TEST_CASE("save and load round-trips bit-identically") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> dist(-1, 1);
    std::vector<EdgeConstraint> edges;
    ConstraintKind kinds[3] = {ConstraintKind::eq, ConstraintKind::ge, ConstraintKind::le};
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 7; ++j)
            edges.push_back({i, j, kinds[rng() % 3], dist(rng)});
    SignedCompletionInstance inst(7, edges);

    std::string path = "/tmp/sdcomp_test_instance.json";
    save_instance(inst, path);
    auto back = load_instance(path);
    REQUIRE(back.vertex_count() == inst.vertex_count());
    REQUIRE(back.edge_count() == inst.edge_count());
    for (int i = 0; i < inst.edge_count(); ++i) {
        CHECK(back.edges()[i].u == inst.edges()[i].u);
        CHECK(back.edges()[i].v == inst.edges()[i].v);
        CHECK(back.edges()[i].kind == inst.edges()[i].kind);
        CHECK(back.edges()[i].c == inst.edges()[i].c); // exact, 17 significant digits
    }
    std::remove(path.c_str());
}

TEST_CASE("signed graph view maps kinds to parities") {
    auto inst = parse_instance(
        R"({"n":3, "edges":[{"u":0,"v":1,"kind":"ge","c":0.5},
                            {"u":1,"v":2,"kind":"le","c":0.5},
                            {"u":0,"v":2,"kind":"eq","c":0.5}]})");
    auto sg = inst.signed_graph();
    CHECK(sg.has_edge(0, 1, EdgeSign::even));
    CHECK_FALSE(sg.has_edge(0, 1, EdgeSign::odd));
    CHECK(sg.has_edge(1, 2, EdgeSign::odd));
    // eq acts as a doubled pair
    CHECK(sg.has_edge(0, 2, EdgeSign::even));
    CHECK(sg.has_edge(0, 2, EdgeSign::odd));
}

TEST_CASE("preprocess_degenerate") {
    SUBCASE("nondegenerate instances pass through") {
        auto inst = parse_instance(R"({"n":3, "edges":[{"u":0,"v":1,"kind":"eq","c":0.5}]})");
        auto pre = preprocess_degenerate(inst);
        CHECK_FALSE(pre.extra_stage);
        CHECK(pre.reduced.vertex_count() == 3);
        CHECK(pre.reduced.edge_count() == 1);
    }
    SUBCASE("K2 with a forced one contracts to a point") {
        auto inst = parse_instance(R"({"n":2, "edges":[{"u":0,"v":1,"kind":"eq","c":1.0}]})");
        auto pre = preprocess_degenerate(inst);
        CHECK(pre.extra_stage);
        CHECK(pre.reduced.vertex_count() == 1);
        CHECK(pre.reduced.edge_count() == 0);
        CHECK(pre.vertex_map[0] == pre.vertex_map[1]);
    }
    SUBCASE("antipodal pair resigns and contracts") {
        auto inst = parse_instance(R"({"n":2, "edges":[{"u":0,"v":1,"kind":"eq","c":-1.0}]})");
        auto pre = preprocess_degenerate(inst);
        CHECK(pre.extra_stage);
        CHECK(pre.reduced.vertex_count() == 1);
        CHECK(pre.resign_set.size() == 1);
    }
    SUBCASE("odd degenerate triangle is metric infeasible") {
        auto inst = parse_instance(
            R"({"n":3, "edges":[{"u":0,"v":1,"kind":"le","c":-1.0},
                                {"u":1,"v":2,"kind":"le","c":-1.0},
                                {"u":0,"v":2,"kind":"le","c":-1.0}]})");
        CHECK_THROWS_AS(preprocess_degenerate(inst), MetricInfeasible);
    }
    SUBCASE("even degenerate cycle is fine") {
        // square with alternating +1/-1 forced entries embeds in a cut
        auto inst = parse_instance(
            R"({"n":4, "edges":[{"u":0,"v":1,"kind":"eq","c":-1.0},
                                {"u":1,"v":2,"kind":"eq","c":1.0},
                                {"u":2,"v":3,"kind":"eq","c":-1.0},
                                {"u":0,"v":3,"kind":"eq","c":1.0}]})");
        auto pre = preprocess_degenerate(inst);
        CHECK(pre.extra_stage);
        CHECK(pre.reduced.vertex_count() == 1);
    }
    SUBCASE("lifting a reduced solution solves the original") {
        std::mt19937_64 rng(31);
        std::uniform_real_distribution<double> dist(-0.6, 0.6);
        for (int trial = 0; trial < 30; ++trial) {
            int n = 4 + static_cast<int>(rng() % 5);
            // random points; vertices 0 and 1 coincide, 2 is the antipode of 0
            std::vector<std::array<double, 2>> pts(n);
            for (int v = 0; v < n; ++v) {
                double a = dist(rng);
                pts[v] = {std::cos(a), std::sin(a)};
            }
            pts[1] = pts[0];
            pts[2] = {-pts[0][0], -pts[0][1]};
            std::vector<EdgeConstraint> edges;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    if (rng() % 3 == 0 && !(i <= 2 && j <= 2)) continue;
                    double c = pts[i][0] * pts[j][0] + pts[i][1] * pts[j][1];
                    c = std::clamp(c, -1.0, 1.0);
                    edges.push_back({i, j, ConstraintKind::eq, c});
                }
            SignedCompletionInstance inst(n, edges);
            auto pre = preprocess_degenerate(inst);
            // feasible solution of the reduced instance from the quotient points
            int k = pre.reduced.vertex_count();
            SymMatrix x(k);
            std::vector<double> sign(n, 1.0);
            for (int v : pre.resign_set) sign[v] = -1.0;
            std::vector<int> rep(k, -1);
            for (int v = 0; v < n; ++v)
                if (rep[pre.vertex_map[v]] == -1) rep[pre.vertex_map[v]] = v;
            for (int a = 0; a < k; ++a)
                for (int b = a; b < k; ++b) {
                    int va = rep[a], vb = rep[b];
                    double c = sign[va] * sign[vb] *
                               (pts[va][0] * pts[vb][0] + pts[va][1] * pts[vb][1]);
                    x.set(a, b, a == b ? 1.0 : c);
                }
            CHECK(pre.reduced.max_violation(x) < 1e-9);
            SymMatrix lifted = lift_solution(pre, x);
            CHECK(inst.max_violation(lifted) < 1e-9);
        }
    }
}

TEST_CASE("clique sum instance glues consistently") {
    auto a = parse_instance(
        R"({"n":3, "edges":[{"u":0,"v":1,"kind":"eq","c":0.5},
                            {"u":1,"v":2,"kind":"eq","c":0.25},
                            {"u":0,"v":2,"kind":"eq","c":0.0}]})");
    auto b = a;
    // share the edge (0,1) of a with (0,1) of b; b's vertex 2 becomes vertex 3
    auto combined = clique_sum_instance(a, b, {0, 1, 2}, {0, 1, 3}, 4);
    CHECK(combined.vertex_count() == 4);
    CHECK(combined.edge_count() == 5);

    // disagreement on the shared pair
    auto c = parse_instance(
        R"({"n":3, "edges":[{"u":0,"v":1,"kind":"eq","c":0.75},
                            {"u":1,"v":2,"kind":"eq","c":0.25},
                            {"u":0,"v":2,"kind":"eq","c":0.0}]})");
    CHECK_THROWS_AS(clique_sum_instance(a, c, {0, 1, 2}, {0, 1, 3}, 4), InvalidCombine);
    // shared pair must be constrained on both sides
    auto d = parse_instance(R"({"n":3, "edges":[{"u":1,"v":2,"kind":"eq","c":0.25}]})");
    CHECK_THROWS_AS(clique_sum_instance(a, d, {0, 1, 2}, {0, 1, 3}, 4), InvalidCombine);
}
