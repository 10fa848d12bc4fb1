#include "sdcomp/framework.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

#include "sdcomp/linalg.hpp"

namespace sdcomp {

void SphericalFramework::validate() const {
    if (n < 0 || d < 0) throw InvalidInput("framework: negative dimensions");
    if (static_cast<int>(points.size()) != n) throw InvalidInput("framework: point count");
    for (const auto& p : points) {
        if (static_cast<int>(p.size()) != d) throw InvalidInput("framework: point dimension");
        double norm2 = std::inner_product(p.begin(), p.end(), p.begin(), 0.0);
        if (std::fabs(std::sqrt(norm2) - 1.0) > 1e-10)
            throw InvalidInput("framework: point not on the unit sphere");
    }
    std::set<std::tuple<int, int, int>> seen;
    for (const auto& e : edges) {
        if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n || e.u == e.v)
            throw InvalidInput("framework: bad edge");
        int u = std::min(e.u, e.v), v = std::max(e.u, e.v);
        if (!seen.insert({u, v, static_cast<int>(e.kind)}).second)
            throw InvalidInput("framework: duplicate edge");
    }
}

Graph SphericalFramework::graph() const {
    Graph g(n);
    for (const auto& e : edges)
        if (!g.has_edge(e.u, e.v)) g.add_edge(e.u, e.v);
    return g;
}

SignedCompletionInstance framework_to_instance(const SphericalFramework& f) {
    f.validate();
    std::vector<EdgeConstraint> edges;
    for (const auto& e : f.edges) {
        double c = std::inner_product(f.points[e.u].begin(), f.points[e.u].end(),
                                      f.points[e.v].begin(), 0.0);
        if (std::fabs(c) > 1.0) {
            if (std::fabs(c) - 1.0 > 1e-12)
                throw NumericalError("framework_to_instance: inner product overshoots 1");
            c = (c > 0) ? 1.0 : -1.0;
        }
        edges.push_back({e.u, e.v, e.kind, c});
    }
    return SignedCompletionInstance(f.n, std::move(edges));
}

namespace {

std::vector<double> residual_at(const SphericalFramework& f, const StressVector& w, int v) {
    std::vector<double> r(f.d, 0.0);
    for (int k = 0; k < f.d; ++k) r[k] = w.vertex[v] * f.points[v][k];
    for (size_t i = 0; i < f.edges.size(); ++i) {
        const auto& e = f.edges[i];
        int other = -1;
        if (e.u == v) other = e.v;
        if (e.v == v) other = e.u;
        if (other < 0) continue;
        for (int k = 0; k < f.d; ++k) r[k] += w.edge[i] * f.points[other][k];
    }
    return r;
}

double norm2(const std::vector<double>& v) {
    return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
}

} // namespace

double equilibrium_residual(const SphericalFramework& f, const StressVector& w) {
    f.validate();
    if (static_cast<int>(w.vertex.size()) != f.n ||
        w.edge.size() != f.edges.size())
        throw InvalidInput("equilibrium_residual: stress indexed inconsistently");
    double worst = 0.0;
    for (int v = 0; v < f.n; ++v) worst = std::max(worst, norm2(residual_at(f, w, v)));
    return worst;
}

double projected_equilibrium_residual(const SphericalFramework& f, const StressVector& w,
                                      const std::vector<int>& stressed_set) {
    f.validate();
    std::vector<std::vector<double>> span_vecs;
    for (int v : stressed_set) {
        if (v < 0 || v >= f.n) throw InvalidInput("projected residual: vertex out of range");
        span_vecs.push_back(f.points[v]);
    }
    OrthoBasis q = orthonormalize(f.d, span_vecs);
    double worst = 0.0;
    for (int v = 0; v < f.n; ++v) {
        auto r = residual_at(f, w, v);
        // project out span{p(stressed)}
        for (int j = 0; j < q.dim(); ++j) {
            auto col = q.cols.col(j);
            double proj = std::inner_product(r.begin(), r.end(), col.begin(), 0.0);
            for (int k = 0; k < f.d; ++k) r[k] -= proj * col[k];
        }
        worst = std::max(worst, norm2(r));
    }
    return worst;
}

StagedStressReport staged_stress_analysis(const SphericalFramework& f,
                                          const NestedPSDCertificate& cert,
                                          const RunConfig& cfg) {
    f.validate();
    StagedStressReport rep;
    rep.first_stressed.assign(f.n, -1);

    std::vector<int> current; // cumulative stressed set
    std::set<int> in_current;
    for (int j = 0; j < cert.stage_count(); ++j) {
        const auto& w = cert.stages[j];
        rep.projected_residuals.push_back(projected_equilibrium_residual(f, w, current));

        double thr = cfg.tol.support * std::max(1.0, w.max_abs());
        for (int v = 0; v < f.n; ++v) {
            bool stressed = std::fabs(w.vertex[v]) > thr;
            for (size_t i = 0; i < f.edges.size() && !stressed; ++i)
                if ((f.edges[i].u == v || f.edges[i].v == v) && std::fabs(w.edge[i]) > thr)
                    stressed = true;
            if (stressed && !in_current.count(v)) {
                in_current.insert(v);
                current.push_back(v);
                rep.first_stressed[v] = j + 1;
            }
        }
        std::vector<int> snapshot = current;
        std::sort(snapshot.begin(), snapshot.end());
        rep.stage_sets.push_back(std::move(snapshot));

        if (j == 0) {
            for (size_t i = 0; i < f.edges.size(); ++i)
                if (std::fabs(w.edge[i]) <= thr) rep.stage1_zero_edges.push_back(static_cast<int>(i));
        }
    }
    return rep;
}

namespace {

// conic nondegeneracy: over symmetric S in S^d, the system
// p_u^T S p_v = 0 for all diagonals and the given pairs admits only S = 0
bool conic_condition(const SphericalFramework& f, const std::vector<std::pair<int, int>>& pairs,
                     double tol) {
    const int d = f.d;
    const int unknowns = d * (d + 1) / 2;
    std::vector<std::pair<int, int>> rows;
    for (int v = 0; v < f.n; ++v) rows.push_back({v, v});
    rows.insert(rows.end(), pairs.begin(), pairs.end());
    Matrix a(static_cast<int>(rows.size()), unknowns);
    for (size_t r = 0; r < rows.size(); ++r) {
        auto [u, v] = rows[r];
        int col = 0;
        for (int i = 0; i < d; ++i)
            for (int j = i; j < d; ++j) {
                double coeff = (i == j)
                                   ? f.points[u][i] * f.points[v][i]
                                   : f.points[u][i] * f.points[v][j] +
                                         f.points[u][j] * f.points[v][i];
                a(static_cast<int>(r), col++) = coeff;
            }
    }
    return kernel_of(a, tol).rank == unknowns;
}

bool properly_signed(const SphericalFramework& f, const StressVector& w, double sign_tol) {
    for (size_t i = 0; i < f.edges.size(); ++i) {
        if (f.edges[i].kind == ConstraintKind::ge && w.edge[i] > sign_tol) return false;
        if (f.edges[i].kind == ConstraintKind::le && w.edge[i] < -sign_tol) return false;
    }
    return true;
}

} // namespace

bool verify_super_stable(const SphericalFramework& f, const StressVector& w,
                         const RunConfig& cfg) {
    f.validate();
    SignedCompletionInstance inst = framework_to_instance(f);
    if (!properly_signed(f, w, 1e-9)) return false;
    if (equilibrium_residual(f, w) > cfg.tol.feas) return false;
    SymMatrix omega = w.to_matrix(inst);
    auto psd = psd_on_subspace(omega, OrthoBasis::full(f.n), cfg.tol.psd);
    if (!psd.psd) return false;
    if (numeric_rank(omega, cfg.tol.rank) != f.n - f.d) return false;

    std::vector<std::pair<int, int>> pairs;
    for (int i : w.edge_support(cfg.tol.support))
        pairs.push_back({f.edges[i].u, f.edges[i].v});
    return conic_condition(f, pairs, cfg.tol.rank);
}

bool verify_universal_rigidity_certificate(const SphericalFramework& f,
                                           const NestedPSDCertificate& cert,
                                           const RunConfig& cfg) {
    f.validate();
    SignedCompletionInstance inst = framework_to_instance(f);
    if (cert.stage_count() == 0) return false;

    for (const auto& w : cert.stages)
        if (!properly_signed(f, w, 1e-9)) return false;

    // nested PSD and the total rank of the sequence
    OrthoBasis current = OrthoBasis::full(f.n);
    for (const auto& w : cert.stages) {
        SymMatrix omega = w.to_matrix(inst);
        if (!psd_on_subspace(omega, current, cfg.tol.psd).psd) return false;
        SymMatrix restricted = restrict_to(omega, current);
        current = compose(current, nullspace_basis(restricted, cfg.tol.rank));
    }
    if (f.n - current.dim() != f.n - f.d) return false;

    // per-stage objective must vanish on the framework's own weights
    for (const auto& w : cert.stages)
        if (std::fabs(w.objective(inst)) > cfg.tol.feas) return false;

    std::vector<std::pair<int, int>> pairs;
    std::set<int> support;
    for (const auto& w : cert.stages)
        for (int i : w.edge_support(cfg.tol.support)) support.insert(i);
    for (int i : support) pairs.push_back({f.edges[i].u, f.edges[i].v});
    return conic_condition(f, pairs, cfg.tol.rank);
}

namespace {

// Does there exist g orthogonal to span{context} (inside the complement basis q)
// with g . target != 0?  Equivalent to: the projection of target onto
// q-span intersected with the context kernel is nonzero.
bool direction_exists(const OrthoBasis& q, const std::vector<std::vector<double>>& context,
                      const std::vector<double>& target, double tol) {
    const int k = q.dim();
    if (k == 0) return false;
    // context rows in q coordinates
    Matrix rows(static_cast<int>(context.size()), k);
    for (size_t r = 0; r < context.size(); ++r)
        for (int j = 0; j < k; ++j) {
            auto col = q.cols.col(j);
            rows(static_cast<int>(r), j) =
                std::inner_product(context[r].begin(), context[r].end(), col.begin(), 0.0);
        }
    std::vector<double> beta(k);
    for (int j = 0; j < k; ++j) {
        auto col = q.cols.col(j);
        beta[j] = std::inner_product(target.begin(), target.end(), col.begin(), 0.0);
    }
    if (context.empty()) {
        double nrm = 0;
        for (double b : beta) nrm += b * b;
        return std::sqrt(nrm) > tol;
    }
    auto ker = kernel_of(rows, 1e-10);
    double nrm = 0.0;
    for (const auto& basis_vec : ker.kernel) {
        double p = std::inner_product(beta.begin(), beta.end(), basis_vec.begin(), 0.0);
        nrm += p * p;
    }
    return std::sqrt(nrm) > tol;
}

} // namespace

int stage_reachability_lower_bound(const SphericalFramework& f, const std::vector<int>& targets,
                                   const RunConfig& cfg) {
    cfg.validate();
    f.validate();
    if (targets.empty()) return 0;
    const double geom_tol = 1e-8;
    std::vector<bool> reachable(f.n, false); // U_{j-1}

    for (int stage = 1; stage <= f.n + 1; ++stage) {
        // orthonormal basis of the complement of span p(U_{j-1})
        std::vector<std::vector<double>> span_vecs;
        for (int v = 0; v < f.n; ++v)
            if (reachable[v]) span_vecs.push_back(f.points[v]);
        OrthoBasis comp = orthogonal_complement(f.d, span_vecs);

        // forced-zero cascade for any valid stage stress
        std::vector<bool> edge_zero(f.edges.size(), false);
        std::vector<bool> diag_zero(f.n, false);
        bool changed = true;
        while (changed) {
            changed = false;
            for (int v = 0; v < f.n; ++v) {
                // unknowns at v: the diagonal plus unforced incident edges
                struct Unknown {
                    bool diag;
                    int edge_idx;
                    const std::vector<double>* point;
                };
                std::vector<Unknown> unknowns;
                if (!diag_zero[v]) unknowns.push_back({true, -1, &f.points[v]});
                for (size_t i = 0; i < f.edges.size(); ++i) {
                    if (edge_zero[i]) continue;
                    int other = -1;
                    if (f.edges[i].u == v) other = f.edges[i].v;
                    if (f.edges[i].v == v) other = f.edges[i].u;
                    if (other < 0) continue;
                    unknowns.push_back({false, static_cast<int>(i), &f.points[other]});
                }
                for (size_t t = 0; t < unknowns.size(); ++t) {
                    std::vector<std::vector<double>> context;
                    for (size_t o = 0; o < unknowns.size(); ++o)
                        if (o != t) context.push_back(*unknowns[o].point);
                    if (direction_exists(comp, context, *unknowns[t].point, geom_tol)) {
                        if (unknowns[t].diag)
                            diag_zero[v] = true;
                        else
                            edge_zero[unknowns[t].edge_idx] = true;
                        changed = true;
                    }
                }
                // PSD submatrix rule: zero diagonal kills incident edges between
                // vertices not yet reachable
                if (diag_zero[v] && !reachable[v]) {
                    for (size_t i = 0; i < f.edges.size(); ++i) {
                        if (edge_zero[i]) continue;
                        int other = -1;
                        if (f.edges[i].u == v) other = f.edges[i].v;
                        if (f.edges[i].v == v) other = f.edges[i].u;
                        if (other < 0 || reachable[other]) continue;
                        edge_zero[i] = true;
                        changed = true;
                    }
                }
            }
        }

        // envelope update: a vertex can be stressed if some incident unknown survives
        bool grew = false;
        std::vector<bool> next = reachable;
        for (int v = 0; v < f.n; ++v) {
            if (next[v]) continue;
            bool can = !diag_zero[v];
            for (size_t i = 0; i < f.edges.size() && !can; ++i)
                if (!edge_zero[i] && (f.edges[i].u == v || f.edges[i].v == v)) can = true;
            if (can) {
                next[v] = true;
                grew = true;
            }
        }
        for (int t : targets)
            if (t >= 0 && t < f.n && next[t]) return stage;
        if (!grew) return 0; // envelope stalled without reaching a target: no claim
        reachable = next;
    }
    return 0;
}

namespace {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

std::string framework_to_json(const SphericalFramework& f) {
    SignedCompletionInstance inst = framework_to_instance(f);
    std::string out = "{\"n\": " + std::to_string(f.n) + ", \"d\": " + std::to_string(f.d) +
                      ", \"coords\": [";
    for (int v = 0; v < f.n; ++v) {
        if (v) out += ", ";
        out += "[";
        for (int k = 0; k < f.d; ++k) {
            if (k) out += ", ";
            out += format_double(f.points[v][k]);
        }
        out += "]";
    }
    out += "], \"edges\": [";
    for (int i = 0; i < inst.edge_count(); ++i) {
        if (i) out += ", ";
        const auto& e = inst.edges()[i];
        out += "{\"u\": " + std::to_string(e.u) + ", \"v\": " + std::to_string(e.v) +
               ", \"kind\": \"" + kind_name(e.kind) + "\", \"c\": " + format_double(e.c) + "}";
    }
    out += "]}\n";
    return out;
}

SphericalFramework parse_framework(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("framework JSON: ") + e.what());
    }
    for (auto it = j.begin(); it != j.end(); ++it)
        if (it.key() != "n" && it.key() != "d" && it.key() != "coords" && it.key() != "edges")
            throw ParseError("framework JSON: unknown key " + it.key());
    SphericalFramework f;
    f.n = j.at("n").get<int>();
    f.d = j.at("d").get<int>();
    for (const auto& row : j.at("coords")) {
        std::vector<double> p;
        for (const auto& x : row) p.push_back(x.get<double>());
        f.points.push_back(std::move(p));
    }
    for (const auto& ej : j.at("edges")) {
        FrameworkEdge e;
        e.u = ej.at("u").get<int>();
        e.v = ej.at("v").get<int>();
        e.kind = kind_from_name(ej.at("kind").get<std::string>());
        f.edges.push_back(e);
        // stored weights must match the coordinates they came from
        double c = ej.at("c").get<double>();
        double dotp = std::inner_product(f.points[e.u].begin(), f.points[e.u].end(),
                                         f.points[e.v].begin(), 0.0);
        if (std::fabs(c - std::clamp(dotp, -1.0, 1.0)) > 1e-7)
            throw ParseError("framework JSON: edge weight disagrees with coordinates");
    }
    f.validate();
    return f;
}

void save_framework(const SphericalFramework& f, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write framework file: " + path);
    out << framework_to_json(f);
}

SphericalFramework load_framework(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open framework file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_framework(ss.str());
}

} // namespace sdcomp
