#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sdcomp/clique_tree.hpp"
#include "sdcomp/constructions.hpp"
#include "sdcomp/facial_reduction.hpp"
#include "sdcomp/framework.hpp"
#include "sdcomp/met.hpp"

using namespace sdcomp;
namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitStall = 4;

// graph files are instance files whose kind/c fields are optional
Graph load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open graph file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(ss.str());
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("graph JSON: ") + e.what());
    }
    Graph g(j.at("n").get<int>());
    for (const auto& ej : j.at("edges")) {
        int u = ej.at("u").get<int>();
        int v = ej.at("v").get<int>();
        if (!g.has_edge(u, v)) g.add_edge(u, v);
    }
    return g;
}

struct GlobalOpts {
    RunConfig cfg;
    bool json = false;
};

int cmd_analyze(const std::string& path, const GlobalOpts& opts) {
    Graph g = load_graph_file(path);
    auto chordal = is_chordal(g);
    bool sp = is_k4_minor_free(g);
    auto tree = clique_sum_decompose(g);
    auto bounds = classify_sd_bounds(g);

    nlohmann::json out;
    out["n"] = g.vertex_count();
    out["m"] = g.edge_count();
    out["chordal"] = chordal.chordal;
    if (chordal.chordal)
        out["elimination_order"] = chordal.elimination_order;
    else
        out["hole"] = chordal.hole;
    out["k4_minor_free"] = sp;
    nlohmann::json leaves = nlohmann::json::array();
    for (const auto* leaf : tree.leaves()) {
        const char* names[] = {"complete", "chordal", "k4-minor-free", "other"};
        leaves.push_back({{"vertices", leaf->vertices},
                          {"class", names[static_cast<int>(leaf->cls)]}});
    }
    out["decomposition_leaves"] = leaves;
    if (bounds.sd_exact) out["sd_exact"] = *bounds.sd_exact;
    if (bounds.sd_upper) out["sd_upper"] = *bounds.sd_upper;
    if (bounds.sd_star_upper) out["sd_star_upper"] = *bounds.sd_star_upper;

    if (opts.json) {
        std::cout << out.dump(2) << "\n";
        return kExitOk;
    }
    std::printf("graph: %d vertices, %d edges\n", g.vertex_count(), g.edge_count());
    if (chordal.chordal) {
        std::printf("chordal: yes (elimination order:");
        for (int v : chordal.elimination_order) std::printf(" %d", v);
        std::printf(")\n");
    } else {
        std::printf("chordal: no (hole:");
        for (int v : chordal.hole) std::printf(" %d", v);
        std::printf(")\n");
    }
    std::printf("K4-minor-free: %s\n", sp ? "yes" : "no");
    std::printf("clique-sum leaves: %zu\n", tree.leaves().size());
    if (bounds.sd_exact) {
        std::printf("sd = %d (exact: %s)\n", *bounds.sd_exact,
                    *bounds.sd_exact == 0 ? "edgeless" : "chordal with an edge");
    } else if (bounds.sd_upper) {
        std::printf("sd* <= %d, sd <= %d (clique sums of complete and K4-minor-free pieces)\n",
                    *bounds.sd_star_upper, *bounds.sd_upper);
    } else {
        std::printf("no bound from structure theorems\n");
    }
    return kExitOk;
}

int reduce_one(const std::string& path, const std::string& cert_out, const GlobalOpts& opts) {
    auto inst = load_instance(path);
    FRResult fr;
    try {
        fr = facial_reduction(inst, opts.cfg);
    } catch (const SolverStall& e) {
        std::fprintf(stderr, "solver stall on %s: %s\n", path.c_str(), e.what());
        return kExitStall;
    }

    nlohmann::json out;
    out["instance"] = path;
    out["feasible"] = fr.feasible;
    out["stages"] = fr.sd_upper;
    nlohmann::json trace = nlohmann::json::array();
    for (int j = 0; j < fr.certificate.stage_count(); ++j) {
        nlohmann::json stage;
        stage["face_dim_before"] = fr.certificate.faces[j].dim();
        stage["face_dim_after"] = fr.certificate.faces[j + 1].dim();
        stage["support_size"] =
            fr.certificate.stages[j].edge_support(opts.cfg.tol.support).size();
        if (j < static_cast<int>(fr.stage_objectives.size()))
            stage["objective"] = fr.stage_objectives[j];
        trace.push_back(stage);
    }
    out["trace"] = trace;
    if (fr.feasible) {
        out["solution_rank"] = numeric_rank(fr.max_rank_solution, opts.cfg.tol.rank);
        out["certificate_rank"] = fr.certificate.rank();
    }

    if (!cert_out.empty() && fr.feasible) save_certificate(inst, fr.certificate, cert_out);

    if (opts.json) {
        std::cout << out.dump(2) << "\n";
    } else {
        std::printf("%s: %s, %d stage(s)\n", path.c_str(),
                    fr.feasible ? "feasible" : "infeasible", fr.sd_upper);
        for (int j = 0; j < fr.certificate.stage_count(); ++j)
            std::printf("  stage %d: face %d -> %d, support %zu\n", j + 1,
                        fr.certificate.faces[j].dim(), fr.certificate.faces[j + 1].dim(),
                        fr.certificate.stages[j].edge_support(opts.cfg.tol.support).size());
        if (fr.feasible)
            std::printf("  max-rank solution: rank %d (certificate rank %d)\n",
                        numeric_rank(fr.max_rank_solution, opts.cfg.tol.rank),
                        fr.certificate.rank());
    }
    return fr.feasible ? kExitOk : kExitInfeasible;
}

int cmd_reduce(const std::string& path, const std::string& cert_out, const GlobalOpts& opts) {
    if (fs::is_directory(path)) {
        std::vector<std::string> files;
        for (const auto& entry : fs::directory_iterator(path))
            if (entry.path().extension() == ".json") files.push_back(entry.path().string());
        std::sort(files.begin(), files.end());
        std::vector<std::future<int>> jobs;
        for (const auto& f : files)
            jobs.push_back(std::async(std::launch::async,
                                      [f, &opts] { return reduce_one(f, "", opts); }));
        int worst = kExitOk;
        for (auto& j : jobs) worst = std::max(worst, j.get());
        return worst;
    }
    return reduce_one(path, cert_out, opts);
}

int cmd_verify(const std::string& inst_path, const std::string& cert_path, bool uniqueness,
               const GlobalOpts& opts) {
    auto inst = load_instance(inst_path);
    auto cert = load_certificate(inst, cert_path, opts.cfg);
    if (static_cast<int>(cert.stages.empty() ? inst.vertex_count()
                                             : cert.stages[0].vertex.size()) !=
        inst.vertex_count())
        return kExitUsage;

    SymMatrix xstar;
    bool have_x = false;
    FRResult fr;
    try {
        fr = facial_reduction(inst, opts.cfg);
        if (fr.feasible) {
            xstar = fr.max_rank_solution;
            have_x = true;
        }
    } catch (const SolverStall&) {
    }

    auto rep = verify_certificate(inst, cert,
                                  have_x ? std::optional<SymMatrix>(xstar) : std::nullopt,
                                  opts.cfg);
    bool all = rep.all_pass();

    bool c5 = true, c67 = true;
    if (uniqueness && have_x) {
        // (c5): supported-or-equality matches certified tightness edge by edge
        auto cert_aug = augment_tightness(inst, fr, opts.cfg);
        auto tight_aug = tight_edge_set(inst, cert_aug, opts.cfg);
        auto tight_given = tight_edge_set(inst, cert, opts.cfg);
        c5 = tight_aug == tight_given;
        c67 = check_nondegeneracy(inst, cert, xstar, opts.cfg);
        all = all && c5 && c67;
    }

    if (opts.json) {
        nlohmann::json out;
        out["c1"] = rep.c1;
        out["c2"] = rep.c2;
        out["c3"] = rep.c3;
        if (rep.c4) out["c4"] = *rep.c4;
        if (uniqueness && have_x) {
            out["c5"] = c5;
            out["c6"] = c67;
            out["c7"] = c67;
        }
        out["face_dims"] = rep.face_dims;
        std::cout << out.dump(2) << "\n";
    } else {
        std::printf("c1 (proper signs):        %s\n", rep.c1 ? "pass" : "FAIL");
        std::printf("c2 (nested PSD):          %s\n", rep.c2 ? "pass" : "FAIL");
        std::printf("c3 (objective <= 0):      %s\n", rep.c3 ? "pass" : "FAIL");
        if (rep.c4)
            std::printf("c4 (rank complement):     %s\n", *rep.c4 ? "pass" : "FAIL");
        else
            std::printf("c4 (rank complement):     skipped (no max-rank solution)\n");
        if (uniqueness && have_x) {
            std::printf("c5 (support = tight set): %s\n", c5 ? "pass" : "FAIL");
            std::printf("c6 (nondegeneracy):       %s\n", c67 ? "pass" : "FAIL");
            std::printf("c7 (factored form):       %s\n", c67 ? "pass" : "FAIL");
        }
    }
    return all ? kExitOk : 1;
}

int cmd_generate(const std::string& family, int n, int k, int r, std::uint64_t seed,
                 const std::string& out_prefix, const GlobalOpts& opts) {
    ConstructionSpec spec;
    if (family == "cycle") {
        spec.family = Family::degenerate_cycle;
        spec.n = n;
    } else if (family == "wheel") {
        spec.family = Family::wheel_p1;
        spec.n = n;
    } else if (family == "gk") {
        spec.family = Family::gk;
        spec.k = k;
    } else if (family == "complete") {
        spec.family = Family::complete_boundary;
        spec.n = n;
        spec.rank = r;
        spec.seed = seed;
    } else if (family == "k4-subdivision") {
        spec.family = Family::subdivided_k4;
    } else if (family == "wheel-split-rim" || family == "wheel-split-triangle" ||
               family == "wheel-split-square") {
        spec.family = Family::wheel_splitting;
        spec.split.n = n;
        if (family == "wheel-split-rim")
            spec.split.variant = WheelSplitVariant::rim_subdivision;
        else if (family == "wheel-split-triangle")
            spec.split.variant = WheelSplitVariant::center_split_triangle;
        else
            spec.split.variant = WheelSplitVariant::center_split_square;
    } else {
        std::fprintf(stderr, "unknown family: %s\n", family.c_str());
        return kExitUsage;
    }

    SphericalFramework f = generate(spec);
    save_framework(f, out_prefix + ".framework.json");
    save_instance(framework_to_instance(f), out_prefix + ".instance.json");
    if (!opts.json)
        std::printf("wrote %s.framework.json and %s.instance.json (%d vertices)\n",
                    out_prefix.c_str(), out_prefix.c_str(), f.n);
    return kExitOk;
}

int cmd_rigidity(const std::string& path, const GlobalOpts& opts) {
    SphericalFramework f = load_framework(path);
    auto inst = framework_to_instance(f);

    FRResult fr;
    try {
        fr = facial_reduction(inst, opts.cfg);
    } catch (const SolverStall& e) {
        std::fprintf(stderr, "solver stall: %s\n", e.what());
        return kExitStall;
    }
    if (!fr.feasible) return kExitInfeasible; // cannot happen for genuine frameworks

    nlohmann::json out;
    out["stages"] = fr.sd_upper;
    auto cert = augment_tightness(inst, fr, opts.cfg);
    bool unique = check_nondegeneracy(inst, cert, fr.max_rank_solution, opts.cfg);
    int rank = numeric_rank(fr.max_rank_solution, opts.cfg.tol.rank);
    bool matches_d = (rank == f.d);

    std::string verdict;
    if (!unique || !matches_d) {
        verdict = "not universally rigid";
    } else if (fr.sd_upper <= 1 && cert.stage_count() >= 1 &&
               verify_super_stable(f, cert.stages[0], opts.cfg)) {
        verdict = "super stable";
    } else if (verify_universal_rigidity_certificate(f, cert, opts.cfg)) {
        verdict = "universally rigid";
    } else {
        verdict = "inconclusive";
    }
    out["verdict"] = verdict;
    out["solution_rank"] = rank;
    out["unique_completion"] = unique;

    if (opts.json)
        std::cout << out.dump(2) << "\n";
    else
        std::printf("%s (%d stage(s), rank %d)\n", verdict.c_str(), cert.stage_count(), rank);
    return kExitOk;
}

int cmd_met_check(const std::string& path, const GlobalOpts& opts) {
    auto inst = load_instance(path);
    std::vector<double> c;
    auto sg = inst.signed_graph();
    // weights follow the signed edge order: eq edges contribute both copies
    std::vector<double> x(sg.edge_count());
    auto edges = sg.edges();
    for (int i = 0; i < sg.edge_count(); ++i) {
        // find the instance constraint carrying this signed edge
        double weight = 0;
        bool found = false;
        for (const auto& e : inst.edges()) {
            if (e.u != edges[i].u || e.v != edges[i].v) continue;
            bool covers = (e.kind == ConstraintKind::eq) ||
                          (e.kind == ConstraintKind::ge && edges[i].sign == EdgeSign::even) ||
                          (e.kind == ConstraintKind::le && edges[i].sign == EdgeSign::odd);
            if (covers) {
                weight = e.c;
                found = true;
                break;
            }
        }
        if (!found) throw ParseError("met-check: inconsistent signed view");
        x[i] = std::acos(std::clamp(weight, -1.0, 1.0)) / M_PI;
    }
    auto check = met_membership_signed(sg, MetPoint{x}, opts.cfg);

    if (opts.json) {
        nlohmann::json out;
        out["member"] = check.member;
        out["min_slack"] = check.min_slack;
        if (check.witness) {
            out["violated_cycle"] = check.witness->cycle.vertices;
            out["slack"] = check.witness->slack;
        }
        std::cout << out.dump(2) << "\n";
    } else {
        std::printf("metric polytope membership: %s (min slack %.3e)\n",
                    check.member ? "yes" : "no", check.min_slack);
        if (check.witness) {
            std::printf("violated odd cycle:");
            for (int v : check.witness->cycle.vertices) std::printf(" %d", v);
            std::printf("\n");
        }
    }
    return check.member ? kExitOk : kExitInfeasible;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"singularity degree of PSD matrix completion: facial reduction, "
                 "certificates, rigidity"};
    app.require_subcommand(1);

    GlobalOpts opts;
    app.add_option("--tol-rank", opts.cfg.tol.rank, "rank decision tolerance");
    app.add_option("--tol-psd", opts.cfg.tol.psd, "restricted PSD tolerance");
    app.add_option("--tol-feas", opts.cfg.tol.feas, "feasibility tolerance");
    app.add_option("--cycle-cap", opts.cfg.cycle_cap, "cycle enumeration vertex cap");
    app.add_option("--max-iters", opts.cfg.max_iters, "solver iteration cap");
    app.add_flag("--json", opts.json, "machine-readable JSON on stdout");

    std::string path, cert_path, cert_out, out_prefix = "out", family;
    int n = 5, k = 3, r = 2;
    std::uint64_t seed = 1;
    bool uniqueness = false;

    auto* analyze = app.add_subcommand("analyze", "structure-theorem bounds for a graph");
    analyze->add_option("graph", path, "graph JSON file")->required();

    auto* reduce = app.add_subcommand("reduce", "facial reduction on an instance");
    reduce->add_option("instance", path, "instance JSON file or directory")->required();
    reduce->add_option("--cert", cert_out, "write the certificate to this file");

    auto* verify = app.add_subcommand("verify", "check a certificate against an instance");
    verify->add_option("instance", path)->required();
    verify->add_option("certificate", cert_path)->required();
    verify->add_flag("--uniqueness", uniqueness, "also check tightness and nondegeneracy");

    auto* gen = app.add_subcommand("generate", "emit a named construction");
    gen->add_option("family", family,
                    "cycle | wheel | gk | complete | k4-subdivision | wheel-split-rim | "
                    "wheel-split-triangle | wheel-split-square")
        ->required();
    gen->add_option("-n", n, "vertex-count parameter");
    gen->add_option("-k", k, "recursion depth for gk");
    gen->add_option("-r", r, "target rank for complete");
    gen->add_option("--seed", seed, "random seed for complete");
    gen->add_option("--out", out_prefix, "output file prefix");

    auto* rigidity = app.add_subcommand("rigidity", "universal rigidity / super stability");
    rigidity->add_option("framework", path, "framework JSON file")->required();

    auto* met = app.add_subcommand("met-check", "metric polytope membership of an instance");
    met->add_option("instance", path)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        opts.cfg.validate();
        if (analyze->parsed()) return cmd_analyze(path, opts);
        if (reduce->parsed()) return cmd_reduce(path, cert_out, opts);
        if (verify->parsed()) return cmd_verify(path, cert_path, uniqueness, opts);
        if (gen->parsed()) return cmd_generate(family, n, k, r, seed, out_prefix, opts);
        if (rigidity->parsed()) return cmd_rigidity(path, opts);
        if (met->parsed()) return cmd_met_check(path, opts);
    } catch (const ParseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const InvalidSpec& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const InvalidInput& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const SolverStall& e) {
        std::fprintf(stderr, "solver stall: %s\n", e.what());
        return kExitStall;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return kExitUsage;
}
