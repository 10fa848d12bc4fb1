#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <random>

#include "sdcomp/constructions.hpp"
#include "sdcomp/facial_reduction.hpp"

using namespace sdcomp;

namespace {

SignedCompletionInstance colinear_triangle() {
    double r2 = std::sqrt(0.5);
    std::vector<EdgeConstraint> edges{{0, 1, ConstraintKind::eq, r2},
                                      {1, 2, ConstraintKind::eq, r2},
                                      {0, 2, ConstraintKind::eq, 0.0}};
    return SignedCompletionInstance(3, edges);
}

} // namespace

TEST_CASE("edgeless instances are strictly feasible at stage zero") {
    SignedCompletionInstance inst(4, {});
    auto fr = facial_reduction(inst);
    CHECK(fr.feasible);
    CHECK(fr.sd_upper == 0);
    CHECK(numeric_rank(fr.max_rank_solution) == 4);
    auto rep = verify_certificate(inst, fr.certificate, fr.max_rank_solution);
    CHECK(rep.all_pass());
}

TEST_CASE("boundary triangle needs one stage") {
    auto inst = colinear_triangle();
    auto fr = facial_reduction(inst);
    CHECK(fr.feasible);
    CHECK(fr.sd_upper == 1);
    CHECK(numeric_rank(fr.max_rank_solution) == 2);
    CHECK(fr.certificate.rank() == 1);
    auto rep = verify_certificate(inst, fr.certificate, fr.max_rank_solution);
    CHECK(rep.all_pass());
}

TEST_CASE("degenerate C5 framework needs exactly two stages") {
    auto f = gen_cycle_degenerate(5);
    auto inst = framework_to_instance(f);
    auto fr = facial_reduction(inst);
    CHECK(fr.feasible);
    CHECK(fr.sd_upper == 2);
    CHECK(numeric_rank(fr.max_rank_solution) == 2);
    auto rep = verify_certificate(inst, fr.certificate, fr.max_rank_solution);
    CHECK(rep.all_pass());
}

TEST_CASE("infeasible instance surfaces the negative certificate") {
    auto inst = parse_instance(
        R"({"n":3, "edges":[{"u":0,"v":1,"kind":"eq","c":1.0},
                            {"u":1,"v":2,"kind":"eq","c":1.0},
                            {"u":0,"v":2,"kind":"eq","c":-1.0}]})");
    auto fr = facial_reduction(inst);
    CHECK_FALSE(fr.feasible);
    CHECK(fr.infeasible_certificate.objective(inst) < -1e-6);
    CHECK_THROWS_AS(max_rank_solution(inst), InfeasibleError);
}

TEST_CASE("rank complementarity holds along the way") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 10; ++trial) {
        int n = 3 + static_cast<int>(rng() % 4);
        int r = 1 + static_cast<int>(rng() % (n - 1));
        auto f = gen_complete_boundary(n, r, rng());
        auto inst = framework_to_instance(f);
        auto fr = facial_reduction(inst);
        REQUIRE(fr.feasible);
        CHECK(numeric_rank(fr.max_rank_solution) + fr.certificate.rank() == n);
        // every supported edge is tight at the max-rank solution
        for (const auto& w : fr.certificate.stages)
            for (int i : w.edge_support(1e-6)) {
                const auto& e = inst.edges()[i];
                CHECK(std::fabs(fr.max_rank_solution(e.u, e.v) - e.c) < 1e-6);
            }
    }
}

TEST_CASE("verify_certificate catches hand-built and perturbed certificates") {
    auto inst = parse_instance(R"({"n":2, "edges":[{"u":0,"v":1,"kind":"eq","c":1.0}]})");

    // hand-built coincidence certificate
    NestedPSDCertificate cert;
    cert.n = 2;
    StressVector w(2, 1);
    w.vertex = {1.0, 1.0};
    w.edge = {-2.0}; // matrix [[1,-1],[-1,1]]
    cert.stages.push_back(w);
    cert.faces = rebuild_faces(inst, cert.stages);

    SymMatrix ones(2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) ones.set(i, j, 1.0);

    auto rep = verify_certificate(inst, cert, ones);
    CHECK(rep.c1);
    CHECK(rep.c2);
    CHECK(rep.c3);
    REQUIRE(rep.c4.has_value());
    CHECK(*rep.c4);

    SUBCASE("objective perturbation fails c3") {
        auto bad = cert;
        bad.stages[0].edge[0] = -2.0 + 1e-3;
        auto rep2 = verify_certificate(inst, bad, ones);
        CHECK_FALSE(rep2.c3);
    }
    SUBCASE("PSD perturbation fails c2") {
        auto bad = cert;
        bad.stages[0].edge[0] = -2.0 - 1e-3;
        auto rep2 = verify_certificate(inst, bad, ones);
        CHECK_FALSE(rep2.c2);
    }
    SUBCASE("empty certificate passes vacuously on a strictly feasible instance") {
        auto easy = parse_instance(R"({"n":2, "edges":[{"u":0,"v":1,"kind":"eq","c":0.0}]})");
        NestedPSDCertificate empty;
        empty.n = 2;
        empty.faces = rebuild_faces(easy, empty.stages);
        auto rep3 = verify_certificate(easy, empty);
        CHECK(rep3.all_pass());
    }
}

TEST_CASE("certificate files round-trip") {
    auto f = gen_cycle_degenerate(4);
    auto inst = framework_to_instance(f);
    auto fr = facial_reduction(inst);
    REQUIRE(fr.feasible);

    std::string path = "/tmp/sdcomp_test_cert.json";
    save_certificate(inst, fr.certificate, path);
    auto back = load_certificate(inst, path);
    REQUIRE(back.stage_count() == fr.certificate.stage_count());
    for (int j = 0; j < back.stage_count(); ++j) {
        for (int v = 0; v < inst.vertex_count(); ++v)
            CHECK(back.stages[j].vertex[v] == fr.certificate.stages[j].vertex[v]);
        for (int i = 0; i < inst.edge_count(); ++i)
            CHECK(back.stages[j].edge[i] == fr.certificate.stages[j].edge[i]);
    }
    std::remove(path.c_str());
}

TEST_CASE("singularity degree labels") {
    SUBCASE("strictly feasible is exactly zero") {
        SignedCompletionInstance inst(3, {});
        auto sd = singularity_degree(inst);
        CHECK(sd.value == 0);
        CHECK(sd.kind == SdResult::Kind::exact);
    }
    SUBCASE("one stage is exact") {
        auto sd = singularity_degree(colinear_triangle());
        CHECK(sd.value == 1);
        CHECK(sd.kind == SdResult::Kind::exact);
    }
    SUBCASE("two stages are an upper bound without a matching lower bound") {
        auto f = gen_cycle_degenerate(5);
        auto inst = framework_to_instance(f);
        auto sd = singularity_degree(inst);
        CHECK(sd.value == 2);
        CHECK(sd.kind == SdResult::Kind::upper_bound);
        auto sd2 = singularity_degree(inst, {}, 2);
        CHECK(sd2.kind == SdResult::Kind::exact);
    }
}

TEST_CASE("tightness augmentation") {
    SUBCASE("fully supported chains are unchanged") {
        auto inst = colinear_triangle();
        auto fr = facial_reduction(inst);
        auto cert = augment_tightness(inst, fr);
        CHECK(cert.stage_count() == fr.certificate.stage_count());
    }
    SUBCASE("slack edges never enter the support") {
        // path with an interior slack inequality edge
        auto inst = parse_instance(
            R"({"n":3, "edges":[{"u":0,"v":1,"kind":"eq","c":0.5},
                                {"u":1,"v":2,"kind":"ge","c":-0.5}]})");
        auto fr = facial_reduction(inst);
        REQUIRE(fr.feasible);
        auto cert = augment_tightness(inst, fr);
        auto idx = inst.edge_index(1, 2, ConstraintKind::ge);
        REQUIRE(idx.has_value());
        for (const auto& w : cert.stages) CHECK_FALSE(w.edge_in_support(*idx, 1e-6));
    }
    SUBCASE("an elliptope-forced inequality edge is picked up") {
        auto inst = parse_instance(R"({"n":2, "edges":[{"u":0,"v":1,"kind":"ge","c":1.0}]})");
        auto fr = facial_reduction(inst);
        REQUIRE(fr.feasible);
        auto cert = augment_tightness(inst, fr);
        bool supported = false;
        for (const auto& w : cert.stages)
            if (w.edge_in_support(0, 1e-6)) supported = true;
        CHECK(supported);
        auto rep = verify_certificate(inst, cert, fr.max_rank_solution);
        CHECK(rep.all_pass());
    }
}

TEST_CASE("nondegeneracy distinguishes unique completions") {
    SUBCASE("forced triangle is unique") {
        auto inst = colinear_triangle();
        auto fr = facial_reduction(inst);
        auto cert = augment_tightness(inst, fr);
        CHECK(check_nondegeneracy(inst, cert, fr.max_rank_solution));
    }
    SUBCASE("a path has a free entry") {
        auto inst = parse_instance(
            R"({"n":3, "edges":[{"u":0,"v":1,"kind":"eq","c":0.3},
                                {"u":1,"v":2,"kind":"eq","c":0.2}]})");
        auto fr = facial_reduction(inst);
        REQUIRE(fr.sd_upper == 0);
        auto cert = augment_tightness(inst, fr);
        CHECK_FALSE(check_nondegeneracy(inst, cert, fr.max_rank_solution));
    }
    SUBCASE("rank-one system with a diagonal constraint is trivially unique") {
        auto inst = parse_instance(R"({"n":2, "edges":[{"u":0,"v":1,"kind":"eq","c":1.0}]})");
        auto fr = facial_reduction(inst);
        auto cert = augment_tightness(inst, fr);
        CHECK(check_nondegeneracy(inst, cert, fr.max_rank_solution));
    }
}

TEST_CASE("clique sum combination") {
    // two colinear triangles sharing the edge (0,1)
    auto a = colinear_triangle();
    auto fr_a = facial_reduction(a);
    auto fr_b = fr_a;

    SUBCASE("combined certificate verifies on the book graph") {
        auto combined = combine_clique_sum(a, fr_a.certificate, a, fr_b.certificate,
                                           {0, 1, 2}, {0, 1, 3}, 4);
        CHECK(combined.certificate.stage_count() == 1);
        auto rep = verify_certificate(combined.instance, combined.certificate);
        CHECK(rep.c1);
        CHECK(rep.c2);
        CHECK(rep.c3);
    }
    SUBCASE("empty second certificate extends by zeros") {
        NestedPSDCertificate empty;
        empty.n = 3;
        SignedCompletionInstance b(3, {{0, 1, ConstraintKind::eq, std::sqrt(0.5)}});
        auto combined = combine_clique_sum(a, fr_a.certificate, b, empty, {0, 1, 2},
                                           {0, 1, 3}, 4);
        CHECK(combined.certificate.stage_count() == fr_a.certificate.stage_count());
        auto rep = verify_certificate(combined.instance, combined.certificate);
        CHECK(rep.c2);
        CHECK(rep.c3);
    }
    SUBCASE("mismatched shared weights are rejected") {
        auto c = parse_instance(
            R"({"n":3, "edges":[{"u":0,"v":1,"kind":"eq","c":0.1},
                                {"u":1,"v":2,"kind":"eq","c":0.1},
                                {"u":0,"v":2,"kind":"eq","c":0.1}]})");
        auto fr_c = facial_reduction(c);
        CHECK_THROWS_AS(combine_clique_sum(a, fr_a.certificate, c, fr_c.certificate,
                                           {0, 1, 2}, {0, 1, 3}, 4),
                        InvalidCombine);
    }
}

TEST_CASE("restriction to an induced subgraph keeps certificates valid") {
    // facial reduction on a padded instance: extra isolated-ish vertices carry
    // no stress, so restricting the stages to the induced piece verifies there
    auto f = gen_cycle_degenerate(4);
    auto inst = framework_to_instance(f);
    auto fr = facial_reduction(inst);
    REQUIRE(fr.feasible);

    // pad with one isolated vertex
    std::vector<EdgeConstraint> edges = inst.edges();
    SignedCompletionInstance padded(5, edges);
    auto fr_padded = facial_reduction(padded);
    REQUIRE(fr_padded.feasible);

    NestedPSDCertificate restricted;
    restricted.n = 4;
    for (const auto& w : fr_padded.certificate.stages) {
        StressVector rw(4, inst.edge_count());
        for (int v = 0; v < 4; ++v) rw.vertex[v] = w.vertex[v];
        rw.edge = w.edge;
        restricted.stages.push_back(rw);
    }
    restricted.faces = rebuild_faces(inst, restricted.stages);
    auto rep = verify_certificate(inst, restricted);
    CHECK(rep.c1);
    CHECK(rep.c2);
    CHECK(rep.c3);
}
