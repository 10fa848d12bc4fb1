#include "sdcomp/facial_reduction.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace sdcomp {

namespace {

// orthonormality hygiene after composing bases
OrthoBasis tidy(const OrthoBasis& b) {
    if (b.orthonormality_defect() <= 1e-12) return b;
    std::vector<std::vector<double>> cols;
    for (int j = 0; j < b.dim(); ++j) cols.push_back(b.cols.col(j));
    OrthoBasis out = orthonormalize(b.n, cols);
    if (out.dim() != b.dim()) throw NumericalError("face basis lost a dimension to drift");
    return out;
}

} // namespace

std::vector<OrthoBasis> rebuild_faces(const SignedCompletionInstance& inst,
                                      const std::vector<StressVector>& stages,
                                      const RunConfig& cfg) {
    const int n = inst.vertex_count();
    std::vector<OrthoBasis> faces{OrthoBasis::full(n)};
    for (const auto& w : stages) {
        const OrthoBasis& prev = faces.back();
        SymMatrix restricted = restrict_to(w.to_matrix(inst), prev);
        OrthoBasis inner = nullspace_basis(restricted, cfg.tol.rank);
        faces.push_back(tidy(compose(prev, inner)));
    }
    return faces;
}

FRResult facial_reduction(const SignedCompletionInstance& inst, const RunConfig& cfg) {
    cfg.validate();
    const int n = inst.vertex_count();
    FRResult out;
    out.certificate.n = n;
    out.certificate.faces.push_back(OrthoBasis::full(n));

    for (int stage = 0; stage <= n; ++stage) {
        FaceRestriction face(out.certificate.faces.back());
        OracleOutcome outcome = feasibility_oracle(inst, face, cfg);

        if (auto* ip = std::get_if<InteriorPoint>(&outcome)) {
            out.max_rank_solution = ip->x;
            out.sd_upper = stage;
            out.feasible = true;
            return out;
        }
        if (auto* inf = std::get_if<Infeasible>(&outcome)) {
            out.feasible = false;
            out.infeasible_stage = stage;
            out.infeasible_certificate = inf->omega;
            out.sd_upper = stage;
            return out;
        }
        auto& cert = std::get<DualCertificate>(outcome);
        const OrthoBasis& prev = out.certificate.faces.back();
        SymMatrix restricted = restrict_to(cert.omega.to_matrix(inst), prev);
        OrthoBasis inner = nullspace_basis(restricted, cfg.tol.rank);
        if (inner.dim() >= prev.dim())
            throw NumericalError("facial_reduction: certificate did not shrink the face");
        out.certificate.stages.push_back(cert.omega);
        out.stage_objectives.push_back(cert.objective);
        out.certificate.faces.push_back(tidy(compose(prev, inner)));
    }
    throw NumericalError("facial_reduction: did not terminate within n stages");
}

SymMatrix max_rank_solution(const SignedCompletionInstance& inst, const RunConfig& cfg) {
    FRResult fr = facial_reduction(inst, cfg);
    if (!fr.feasible) throw InfeasibleError("max_rank_solution: instance infeasible", fr);
    return fr.max_rank_solution;
}

CertReport verify_certificate(const SignedCompletionInstance& inst,
                              const NestedPSDCertificate& cert,
                              const std::optional<SymMatrix>& x_star, const RunConfig& cfg) {
    cfg.validate();
    const int n = inst.vertex_count();
    CertReport rep;
    const double sign_tol = 1e-9;

    // (c1) proper signs per edge kind
    for (const auto& w : cert.stages) {
        for (int i = 0; i < inst.edge_count(); ++i) {
            switch (inst.edges()[i].kind) {
                case ConstraintKind::ge:
                    if (w.edge[i] > sign_tol) rep.c1 = false;
                    break;
                case ConstraintKind::le:
                    if (w.edge[i] < -sign_tol) rep.c1 = false;
                    break;
                case ConstraintKind::eq: break;
            }
        }
    }

    // (c2) nested PSD along a chain rebuilt from scratch
    OrthoBasis current = OrthoBasis::full(n);
    rep.face_dims.push_back(current.dim());
    for (const auto& w : cert.stages) {
        SymMatrix omega = w.to_matrix(inst);
        auto check = psd_on_subspace(omega, current, cfg.tol.psd);
        if (!check.psd) {
            rep.c2 = false;
            rep.detail += "stage " + std::to_string(rep.face_dims.size() - 1) +
                          ": restricted eigenvalue " + std::to_string(check.lambda_min) + "; ";
        }
        SymMatrix restricted = restrict_to(omega, current);
        current = tidy(compose(current, nullspace_basis(restricted, cfg.tol.rank)));
        rep.face_dims.push_back(current.dim());
    }

    // (c3) stage objectives
    for (const auto& w : cert.stages)
        if (w.objective(inst) > cfg.tol.obj) rep.c3 = false;

    // (c4) rank complementarity against the supplied candidate
    if (x_star) {
        int rank_x = numeric_rank(*x_star, cfg.tol.rank);
        int rank_cert = n - current.dim();
        rep.c4 = (rank_x + rank_cert == n);
    }
    return rep;
}

SdResult singularity_degree(const SignedCompletionInstance& inst, const RunConfig& cfg,
                            std::optional<int> certified_lower) {
    FRResult fr = facial_reduction(inst, cfg);
    if (!fr.feasible) throw InfeasibleError("singularity_degree: instance infeasible", fr);
    SdResult out;
    out.value = fr.sd_upper;
    if (fr.sd_upper <= 1)
        out.kind = SdResult::Kind::exact;
    else if (certified_lower && *certified_lower >= fr.sd_upper)
        out.kind = SdResult::Kind::exact;
    else
        out.kind = SdResult::Kind::upper_bound;
    return out;
}

NestedPSDCertificate augment_tightness(const SignedCompletionInstance& inst,
                                       const FRResult& fr, const RunConfig& cfg) {
    cfg.validate();
    if (!fr.feasible) throw InvalidInput("augment_tightness: instance must be feasible");
    NestedPSDCertificate cert = fr.certificate;

    std::set<int> supported;
    for (const auto& w : cert.stages)
        for (int i : w.edge_support(cfg.tol.support)) supported.insert(i);

    FaceRestriction face(cert.faces.back());
    StressVector extra(inst.vertex_count(), inst.edge_count());
    bool any = false;
    for (int i = 0; i < inst.edge_count(); ++i) {
        if (inst.edges()[i].kind == ConstraintKind::eq) continue;
        if (supported.count(i)) continue;
        TightnessProbe probe = probe_edge_tightness(inst, face, i, cfg);
        if (probe.tight) {
            extra = extra + probe.certificate;
            any = true;
        }
    }
    if (any) {
        cert.stages.push_back(extra);
        cert.faces.push_back(cert.faces.back()); // vanishes on the final face
    }
    return cert;
}

std::vector<int> tight_edge_set(const SignedCompletionInstance& inst,
                                const NestedPSDCertificate& cert, const RunConfig& cfg) {
    std::set<int> tight;
    for (int i = 0; i < inst.edge_count(); ++i)
        if (inst.edges()[i].kind == ConstraintKind::eq) tight.insert(i);
    for (const auto& w : cert.stages)
        for (int i : w.edge_support(cfg.tol.support)) tight.insert(i);
    return {tight.begin(), tight.end()};
}

bool check_nondegeneracy(const SignedCompletionInstance& inst,
                         const NestedPSDCertificate& cert, const SymMatrix& x_star,
                         const RunConfig& cfg) {
    cfg.validate();
    const int n = inst.vertex_count();
    int d = numeric_rank(x_star, cfg.tol.rank);
    if (d == 0) return true; // only the zero matrix exists
    Matrix p = gram_factor(x_star, d, cfg.tol.psd, cfg.tol.rank);

    auto tight = tight_edge_set(inst, cert, cfg);

    // unknowns: upper triangle of S in S^d; equations: p_u^T S p_v = 0
    const int unknowns = d * (d + 1) / 2;
    std::vector<std::pair<int, int>> rows;
    for (int v = 0; v < n; ++v) rows.push_back({v, v});
    for (int i : tight) rows.push_back({inst.edges()[i].u, inst.edges()[i].v});

    Matrix a(static_cast<int>(rows.size()), unknowns);
    for (size_t r = 0; r < rows.size(); ++r) {
        auto [u, v] = rows[r];
        int col = 0;
        for (int i = 0; i < d; ++i)
            for (int j = i; j < d; ++j) {
                double coeff = (i == j) ? p(i, u) * p(i, v)
                                        : p(i, u) * p(j, v) + p(j, u) * p(i, v);
                a(static_cast<int>(r), col++) = coeff;
            }
    }
    auto ker = kernel_of(a, cfg.tol.rank);
    return ker.rank == unknowns;
}

CombinedInstance combine_clique_sum(const SignedCompletionInstance& a,
                                    const NestedPSDCertificate& cert_a,
                                    const SignedCompletionInstance& b,
                                    const NestedPSDCertificate& cert_b,
                                    const std::vector<int>& map_a,
                                    const std::vector<int>& map_b, int n_combined,
                                    const RunConfig& cfg) {
    CombinedInstance out;
    out.instance = clique_sum_instance(a, b, map_a, map_b, n_combined);

    const int h = std::max(cert_a.stage_count(), cert_b.stage_count());
    out.certificate.n = n_combined;

    auto map_stage = [&](const SignedCompletionInstance& piece, const std::vector<int>& map,
                         const StressVector& w, StressVector& target) {
        for (int v = 0; v < piece.vertex_count(); ++v) target.vertex[map[v]] += w.vertex[v];
        for (int i = 0; i < piece.edge_count(); ++i) {
            const auto& e = piece.edges()[i];
            int u = map[e.u], v = map[e.v];
            auto idx = out.instance.edge_index(u, v, e.kind);
            if (!idx) throw InvalidCombine("combine_clique_sum: edge lost in combination");
            target.edge[*idx] += w.edge[i];
        }
    };

    for (int j = 0; j < h; ++j) {
        StressVector stage(n_combined, out.instance.edge_count());
        if (j < cert_a.stage_count()) map_stage(a, map_a, cert_a.stages[j], stage);
        if (j < cert_b.stage_count()) map_stage(b, map_b, cert_b.stages[j], stage);
        out.certificate.stages.push_back(std::move(stage));
    }
    out.certificate.faces = rebuild_faces(out.instance, out.certificate.stages, cfg);
    return out;
}

namespace {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

std::string certificate_to_json(const SignedCompletionInstance& inst,
                                const NestedPSDCertificate& cert) {
    std::string out = "{\"stages\": [";
    for (int j = 0; j < cert.stage_count(); ++j) {
        if (j) out += ", ";
        const auto& w = cert.stages[j];
        out += "{\"vertex\": [";
        for (size_t v = 0; v < w.vertex.size(); ++v) {
            if (v) out += ", ";
            out += format_double(w.vertex[v]);
        }
        out += "], \"edges\": [";
        for (int i = 0; i < inst.edge_count(); ++i) {
            if (i) out += ", ";
            const auto& e = inst.edges()[i];
            out += "{\"u\": " + std::to_string(e.u) + ", \"v\": " + std::to_string(e.v) +
                   ", \"kind\": \"" + kind_name(e.kind) +
                   "\", \"val\": " + format_double(w.edge[i]) + "}";
        }
        out += "]}";
    }
    out += "], \"face_dims\": [";
    for (size_t j = 0; j < cert.faces.size(); ++j) {
        if (j) out += ", ";
        out += std::to_string(cert.faces[j].dim());
    }
    out += "]}\n";
    return out;
}

NestedPSDCertificate parse_certificate(const SignedCompletionInstance& inst,
                                       const std::string& json_text, const RunConfig& cfg) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("certificate JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("stages") || !j["stages"].is_array())
        throw ParseError("certificate JSON: missing stages array");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (it.key() != "stages" && it.key() != "face_dims")
            throw ParseError("certificate JSON: unknown key " + it.key());

    NestedPSDCertificate cert;
    cert.n = inst.vertex_count();
    for (const auto& sj : j["stages"]) {
        if (!sj.is_object() || !sj.contains("vertex") || !sj.contains("edges"))
            throw ParseError("certificate JSON: malformed stage");
        StressVector w(inst.vertex_count(), inst.edge_count());
        const auto& vj = sj["vertex"];
        if (static_cast<int>(vj.size()) != inst.vertex_count())
            throw ParseError("certificate JSON: vertex weight count mismatch");
        for (int v = 0; v < inst.vertex_count(); ++v) w.vertex[v] = vj[v].get<double>();
        for (const auto& ej : sj["edges"]) {
            int u = ej.at("u").get<int>();
            int v = ej.at("v").get<int>();
            ConstraintKind kind = kind_from_name(ej.at("kind").get<std::string>());
            auto idx = inst.edge_index(u, v, kind);
            if (!idx) throw ParseError("certificate JSON: edge not present in instance");
            w.edge[*idx] = ej.at("val").get<double>();
        }
        cert.stages.push_back(std::move(w));
    }
    cert.faces = rebuild_faces(inst, cert.stages, cfg);
    return cert;
}

void save_certificate(const SignedCompletionInstance& inst, const NestedPSDCertificate& cert,
                      const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write certificate file: " + path);
    out << certificate_to_json(inst, cert);
}

NestedPSDCertificate load_certificate(const SignedCompletionInstance& inst,
                                      const std::string& path, const RunConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open certificate file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_certificate(inst, ss.str(), cfg);
}

} // namespace sdcomp
