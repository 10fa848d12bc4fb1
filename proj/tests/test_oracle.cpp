#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <variant>

#include "sdcomp/oracle.hpp"

using namespace sdcomp;

namespace {

// independent验证 of a dual certificate's defining conditions on a face
void check_certificate_conditions(const SignedCompletionInstance& inst,
                                  const FaceRestriction& face, const StressVector& w,
                                  bool expect_negative_objective = false) {
    // proper signs
    for (int i = 0; i < inst.edge_count(); ++i) {
        if (inst.edges()[i].kind == ConstraintKind::ge) CHECK(w.edge[i] <= 1e-9);
        if (inst.edges()[i].kind == ConstraintKind::le) CHECK(w.edge[i] >= -1e-9);
    }
    SymMatrix omega = w.to_matrix(inst);
    auto psd = psd_on_subspace(omega, face.basis, 1e-8);
    CHECK(psd.psd);
    // nonzero on the face
    SymMatrix restricted = restrict_to(omega, face.basis);
    auto eig = eig_sym(restricted);
    CHECK(eig.values.back() > 1e-6);
    double obj = w.objective(inst);
    if (expect_negative_objective)
        CHECK(obj < -1e-6);
    else
        CHECK(obj <= 1e-8);
}

} // namespace

TEST_CASE("strictly feasible K2") {
    auto inst = parse_instance(R"({"n":2, "edges":[{"u":0,"v":1,"kind":"eq","c":0.0}]})");
    auto out = feasibility_oracle(inst, FaceRestriction::full(2));
    auto* ip = std::get_if<InteriorPoint>(&out);
    REQUIRE(ip != nullptr);
    CHECK(inst.max_violation(ip->x) <= 1e-7);
    CHECK(ip->min_eig_on_face > 1e-7);
}

TEST_CASE("K2 forced to one returns the coincidence certificate") {
    auto inst = parse_instance(R"({"n":2, "edges":[{"u":0,"v":1,"kind":"eq","c":1.0}]})");
    auto out = feasibility_oracle(inst, FaceRestriction::full(2));
    auto* dc = std::get_if<DualCertificate>(&out);
    REQUIRE(dc != nullptr);
    check_certificate_conditions(inst, FaceRestriction::full(2), dc->omega);

    // the matrix form is proportional to [[1,-1],[-1,1]]
    SymMatrix omega = dc->omega.to_matrix(inst);
    double scale = omega(0, 0);
    CHECK(scale > 1e-6);
    CHECK(omega(1, 1) == doctest::Approx(scale).epsilon(1e-5));
    CHECK(omega(0, 1) == doctest::Approx(-scale).epsilon(1e-5));

    // complementary with the all-ones solution
    SymMatrix ones(2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) ones.set(i, j, 1.0);
    CHECK(std::fabs(dot(omega, ones)) < 1e-7);
}

TEST_CASE("triangle violating the metric bound is infeasible") {
    auto inst = parse_instance(
        R"({"n":3, "edges":[{"u":0,"v":1,"kind":"eq","c":1.0},
                            {"u":1,"v":2,"kind":"eq","c":1.0},
                            {"u":0,"v":2,"kind":"eq","c":-1.0}]})");
    auto out = feasibility_oracle(inst, FaceRestriction::full(3));
    auto* inf = std::get_if<Infeasible>(&out);
    REQUIRE(inf != nullptr);
    check_certificate_conditions(inst, FaceRestriction::full(3), inf->omega, true);
}

TEST_CASE("inequality instance with slack is strictly feasible") {
    auto inst = parse_instance(
        R"({"n":3, "edges":[{"u":0,"v":1,"kind":"ge","c":-0.4},
                            {"u":1,"v":2,"kind":"le","c":0.6}]})");
    auto out = feasibility_oracle(inst, FaceRestriction::full(3));
    CHECK(std::holds_alternative<InteriorPoint>(out));
}

TEST_CASE("contradictory inequality pair is infeasible") {
    auto inst = parse_instance(
        R"({"n":2, "edges":[{"u":0,"v":1,"kind":"ge","c":0.9},
                            {"u":0,"v":1,"kind":"le","c":0.1}]})");
    auto out = feasibility_oracle(inst, FaceRestriction::full(2));
    auto* inf = std::get_if<Infeasible>(&out);
    REQUIRE(inf != nullptr);
    check_certificate_conditions(inst, FaceRestriction::full(2), inf->omega, true);
}

TEST_CASE("boundary triangle with a colinear configuration") {
    // points at angles 0, pi/4, pi/2: unique completion of rank 2
    double r2 = std::sqrt(2.0) / 2.0;
    std::string json = R"({"n":3, "edges":[{"u":0,"v":1,"kind":"eq","c":)" +
                       std::to_string(r2) + R"(},{"u":1,"v":2,"kind":"eq","c":)" +
                       std::to_string(r2) + R"(},{"u":0,"v":2,"kind":"eq","c":0.0}]})";
    auto inst = parse_instance(json);
    auto out = feasibility_oracle(inst, FaceRestriction::full(3));
    auto* dc = std::get_if<DualCertificate>(&out);
    REQUIRE(dc != nullptr);
    check_certificate_conditions(inst, FaceRestriction::full(3), dc->omega);
    // rank of the certificate matrix must be 1 = 3 - rank(Gram)
    CHECK(numeric_rank(dc->omega.to_matrix(inst)) == 1);
}

TEST_CASE("oracle on a restricted face") {
    // K2 forced to one: after restricting to the coincidence face, the problem
    // becomes strictly feasible (the single merged vertex)
    auto inst = parse_instance(R"({"n":2, "edges":[{"u":0,"v":1,"kind":"eq","c":1.0}]})");
    Matrix col(2, 1);
    col(0, 0) = col(1, 0) = std::sqrt(0.5);
    FaceRestriction face((OrthoBasis(2, col)));
    auto out = feasibility_oracle(inst, face);
    auto* ip = std::get_if<InteriorPoint>(&out);
    REQUIRE(ip != nullptr);
    CHECK(inst.max_violation(ip->x) <= 1e-7);
}

TEST_CASE("empty face reports infeasibility") {
    auto inst = parse_instance(R"({"n":2, "edges":[]})");
    auto out = feasibility_oracle(inst, FaceRestriction(OrthoBasis::empty(2)));
    auto* inf = std::get_if<Infeasible>(&out);
    REQUIRE(inf != nullptr);
    CHECK(inf->objective < -1e-6);
}

TEST_CASE("edge tightness probe") {
    SUBCASE("slack edge is not tight") {
        auto inst = parse_instance(R"({"n":2, "edges":[{"u":0,"v":1,"kind":"ge","c":-0.5}]})");
        auto probe = probe_edge_tightness(inst, FaceRestriction::full(2), 0);
        CHECK_FALSE(probe.tight);
        CHECK(probe.slack > 0.1);
    }
    SUBCASE("an edge forced by the elliptope bound is tight") {
        auto inst = parse_instance(R"({"n":2, "edges":[{"u":0,"v":1,"kind":"ge","c":1.0}]})");
        auto probe = probe_edge_tightness(inst, FaceRestriction::full(2), 0);
        CHECK(probe.tight);
        // the certificate is a genuine reducing certificate supported on the edge
        check_certificate_conditions(inst, FaceRestriction::full(2), probe.certificate);
        CHECK(std::fabs(probe.certificate.edge[0]) > 0.5);
    }
    SUBCASE("equality edges are rejected") {
        auto inst = parse_instance(R"({"n":2, "edges":[{"u":0,"v":1,"kind":"eq","c":0.0}]})");
        CHECK_THROWS_AS(probe_edge_tightness(inst, FaceRestriction::full(2), 0), InvalidInput);
    }
}
