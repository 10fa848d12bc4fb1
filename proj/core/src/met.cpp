#include "sdcomp/met.hpp"

#include <algorithm>
#include <cmath>

#include "sdcomp/linalg.hpp"

namespace sdcomp {

MetPoint arccos_map(const std::vector<double>& c) {
    MetPoint out;
    out.x.reserve(c.size());
    for (double v : c) {
        if (std::fabs(v) > 1.0) throw InvalidInput("arccos_map: |c| > 1");
        out.x.push_back(std::acos(v) / M_PI);
    }
    return out;
}

int signed_edge_index(const SignedGraph& sg, int u, int v, EdgeSign sign) {
    if (u > v) std::swap(u, v);
    auto edges = sg.edges();
    for (size_t i = 0; i < edges.size(); ++i)
        if (edges[i].u == u && edges[i].v == v && edges[i].sign == sign)
            return static_cast<int>(i);
    throw InvalidInput("signed_edge_index: edge not found");
}

MetCheck met_membership(const Graph& g, const MetPoint& x, const RunConfig& cfg) {
    cfg.validate();
    if (g.vertex_count() > cfg.cycle_cap)
        throw TooLarge("met_membership: vertex count above the cycle cap");
    if (static_cast<int>(x.x.size()) != g.edge_count())
        throw InvalidInput("met_membership: x not aligned with edges");
    for (double v : x.x)
        if (v < -1e-12 || v > 1 + 1e-12) throw InvalidInput("met_membership: x outside [0,1]");

    // edge -> x lookup
    std::vector<std::pair<int, int>> edge_list(g.edges().begin(), g.edges().end());
    auto x_of = [&](int u, int v) {
        if (u > v) std::swap(u, v);
        for (size_t i = 0; i < edge_list.size(); ++i)
            if (edge_list[i] == std::make_pair(u, v)) return x.x[i];
        throw InvalidInput("met_membership: missing edge");
    };

    MetCheck out;
    out.min_slack = 1e100;
    auto cycles = enumerate_cycles(SignedGraph::all_even(g), g.vertex_count());
    for (const auto& c : cycles) {
        const int len = c.length();
        // slack of the tightest odd-|F| inequality on this cycle:
        //   sum_C x + sum_F (1 - 2 x(e)) - 1, minimized over odd F
        std::vector<double> gain(len);
        double total = 0.0;
        for (int i = 0; i < len; ++i) {
            double xe = x_of(c.vertices[i], c.vertices[(i + 1) % len]);
            total += xe;
            gain[i] = 1.0 - 2.0 * xe;
        }
        std::vector<int> fset;
        for (int i = 0; i < len; ++i)
            if (gain[i] < 0) fset.push_back(i);
        if (fset.size() % 2 == 0) {
            // fix parity by the cheapest toggle
            int best = -1;
            double cost = 1e100;
            for (int i = 0; i < len; ++i) {
                double ci = std::count(fset.begin(), fset.end(), i) ? -gain[i] : gain[i];
                if (ci < cost) {
                    cost = ci;
                    best = i;
                }
            }
            auto it = std::find(fset.begin(), fset.end(), best);
            if (it != fset.end())
                fset.erase(it);
            else
                fset.push_back(best);
        }
        double slack = total - 1.0;
        for (int i : fset) slack += gain[i];
        if (slack < out.min_slack) {
            out.min_slack = slack;
            if (slack < -1e-12) {
                out.member = false;
                MetWitness w;
                w.cycle = c.vertices;
                w.flip_set = fset;
                w.slack = slack;
                out.witness = w;
            }
        }
    }
    if (cycles.empty()) out.min_slack = 0.0;
    return out;
}

SignedMetCheck met_membership_signed(const SignedGraph& sg, const MetPoint& x,
                                     const RunConfig& cfg) {
    cfg.validate();
    if (sg.vertex_count() > cfg.cycle_cap)
        throw TooLarge("met_membership_signed: vertex count above the cycle cap");
    if (static_cast<int>(x.x.size()) != sg.edge_count())
        throw InvalidInput("met_membership_signed: x not aligned with edges");

    SignedMetCheck out;
    out.min_slack = 1e100;
    auto cycles = enumerate_odd_cycles(sg, sg.vertex_count());
    for (const auto& c : cycles) {
        double lhs = 0.0;
        int odd = 0;
        for (int i = 0; i < c.length(); ++i) {
            int u = c.vertices[i], v = c.vertices[(i + 1) % c.length()];
            double xe = x.x[signed_edge_index(sg, u, v, c.signs[i])];
            if (c.signs[i] == EdgeSign::odd) {
                lhs -= xe;
                ++odd;
            } else {
                lhs += xe;
            }
        }
        double slack = lhs - (1.0 - odd);
        if (slack < out.min_slack) {
            out.min_slack = slack;
            if (slack < -1e-12) {
                out.member = false;
                out.witness = SignedMetWitness{c, slack};
            }
        }
    }
    if (cycles.empty()) out.min_slack = 0.0;
    return out;
}

std::vector<SignedCycle> tight_cycles(const SignedGraph& sg, const std::vector<double>& c,
                                      const RunConfig& cfg) {
    cfg.validate();
    if (sg.vertex_count() > cfg.cycle_cap)
        throw TooLarge("tight_cycles: vertex count above the cycle cap");
    MetPoint x = arccos_map(c);
    std::vector<SignedCycle> out;
    for (const auto& cyc : enumerate_odd_cycles(sg, sg.vertex_count())) {
        double lhs = 0.0;
        int odd = 0;
        for (int i = 0; i < cyc.length(); ++i) {
            int u = cyc.vertices[i], v = cyc.vertices[(i + 1) % cyc.length()];
            double xe = x.x[signed_edge_index(sg, u, v, cyc.signs[i])];
            if (cyc.signs[i] == EdgeSign::odd) {
                lhs -= xe;
                ++odd;
            } else {
                lhs += xe;
            }
        }
        if (std::fabs(lhs - (1.0 - odd)) <= cfg.tol.tight_cycle) out.push_back(cyc);
    }
    return out;
}

CycleStress tight_cycle_dual(const SignedCycle& cycle, const std::vector<double>& weights,
                             const RunConfig& cfg) {
    cfg.validate();
    const int len = cycle.length();
    if (static_cast<int>(weights.size()) != len)
        throw InvalidInput("tight_cycle_dual: weights not aligned with the cycle");
    for (double w : weights)
        if (std::fabs(w) >= 1.0 - 1e-10)
            throw DegenerateTightCycle("tight_cycle_dual: degenerate weight on the cycle");

    // circle realization at cumulative angles; odd edges run backwards
    std::vector<double> phi(len, 0.0);
    for (int i = 0; i + 1 < len; ++i) {
        double theta = std::acos(weights[i]);
        phi[i + 1] = phi[i] + (cycle.signs[i] == EdgeSign::odd ? -theta : theta);
    }
    std::vector<std::vector<double>> pts(len);
    for (int i = 0; i < len; ++i) pts[i] = {std::cos(phi[i]), std::sin(phi[i])};

    // equilibrium system: unknowns = len vertex weights + len edge weights
    Matrix a(2 * len, 2 * len);
    for (int v = 0; v < len; ++v) {
        int prev_edge = (v + len - 1) % len;
        int next_edge = v;
        int prev_v = (v + len - 1) % len;
        int next_v = (v + 1) % len;
        for (int k = 0; k < 2; ++k) {
            int row = 2 * v + k;
            a(row, v) = pts[v][k];                    // vertex weight
            a(row, len + prev_edge) += pts[prev_v][k]; // edge to the previous vertex
            a(row, len + next_edge) += pts[next_v][k]; // edge to the next vertex
        }
    }
    auto ker = kernel_of(a, cfg.tol.rank);
    if (ker.kernel.empty())
        throw DegenerateTightCycle("tight_cycle_dual: no equilibrium stress on the cycle");

    // pick a PSD member among the kernel basis candidates (and their negatives)
    for (const auto& cand : ker.kernel) {
        CycleStress s;
        s.vertex.assign(cand.begin(), cand.begin() + len);
        s.edge.assign(cand.begin() + len, cand.end());
        double emax = 0.0;
        for (double e : s.edge) emax = std::max(emax, std::fabs(e));
        if (emax < 1e-12) continue;
        for (auto& v : s.vertex) v /= emax;
        for (auto& v : s.edge) v /= emax;

        for (int flip = 0; flip < 2; ++flip) {
            SymMatrix omega = cycle_stress_matrix(cycle, s, len);
            auto psd = psd_on_subspace(omega, OrthoBasis::full(len), cfg.tol.psd);
            if (psd.psd && numeric_rank(omega, cfg.tol.rank) == len - 2) return s;
            for (auto& v : s.vertex) v = -v;
            for (auto& v : s.edge) v = -v;
        }
    }
    throw DegenerateTightCycle("tight_cycle_dual: no PSD stress of corank 2 found");
}

SymMatrix cycle_stress_matrix(const SignedCycle& cycle, const CycleStress& s, int n) {
    SymMatrix omega(n);
    const int len = cycle.length();
    // when n == len the cycle is indexed by position, otherwise by vertex id
    auto vid = [&](int pos) { return (n == len) ? pos : cycle.vertices[pos]; };
    for (int i = 0; i < len; ++i) omega.add(vid(i), vid(i), s.vertex[i]);
    for (int i = 0; i < len; ++i) {
        int u = vid(i), v = vid((i + 1) % len);
        omega.add(u, v, s.edge[i] / 2.0);
    }
    return omega;
}

LaurentResult laurent_feasibility(const SignedGraph& sg, const std::vector<double>& c,
                                  const RunConfig& cfg) {
    LaurentResult out;
    try {
        out.exact = is_odd_k4_minor_free(sg);
    } catch (const TooLarge&) {
        out.exact = false;
    }
    out.feasible = met_membership_signed(sg, arccos_map(c), cfg).member;
    return out;
}

} // namespace sdcomp
