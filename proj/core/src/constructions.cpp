#include "sdcomp/constructions.hpp"

#include <cmath>
#include <numeric>
#include <random>

namespace sdcomp {

namespace {

std::vector<double> axis(int d, int i) {
    std::vector<double> v(d, 0.0);
    v[i] = 1.0;
    return v;
}

std::vector<double> normalize(std::vector<double> v) {
    double n = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
    if (n == 0) throw InvalidSpec("construction: zero vector");
    for (auto& x : v) x /= n;
    return v;
}

std::vector<double> arc_midpoint(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> s(a.size());
    for (size_t i = 0; i < a.size(); ++i) s[i] = a[i] + b[i];
    return normalize(std::move(s));
}

// point at fraction t of the great-circle arc from a to b
std::vector<double> arc_point(const std::vector<double>& a, const std::vector<double>& b,
                              double t) {
    double cosg = std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
    cosg = std::clamp(cosg, -1.0, 1.0);
    double gamma = std::acos(cosg);
    if (gamma < 1e-12) return a;
    double sa = std::sin((1.0 - t) * gamma) / std::sin(gamma);
    double sb = std::sin(t * gamma) / std::sin(gamma);
    std::vector<double> p(a.size());
    for (size_t i = 0; i < a.size(); ++i) p[i] = sa * a[i] + sb * b[i];
    return p;
}

void add_edge(SphericalFramework& f, int u, int v,
              ConstraintKind kind = ConstraintKind::eq) {
    f.edges.push_back({u, v, kind});
}

} // namespace

SphericalFramework gen_cycle_degenerate(int n) {
    if (n < 4) throw InvalidSpec("gen_cycle_degenerate: need n >= 4");
    SphericalFramework f;
    f.n = n;
    f.d = 2;
    // vertices 0 and 1 coincide at angle 0; 2..n-1 climb to the quarter turn
    f.points.push_back({1.0, 0.0});
    f.points.push_back({1.0, 0.0});
    for (int i = 2; i < n; ++i) {
        double angle = (M_PI / 2.0) * static_cast<double>(i - 1) / (n - 2);
        f.points.push_back({std::cos(angle), std::sin(angle)});
        f.params["angle_" + std::to_string(i)] = angle;
    }
    for (int i = 0; i < n; ++i) add_edge(f, i, (i + 1) % n);
    f.params["family"] = 1;
    f.validate();
    return f;
}

SphericalFramework gen_wheel_p1(int n) {
    if (n < 5) throw InvalidSpec("gen_wheel_p1: need n >= 5");
    SphericalFramework f;
    f.n = n;
    f.d = 3;
    f.points.resize(n);
    f.points[1] = axis(3, 0);
    f.points[2] = axis(3, 1);
    f.points[3] = axis(3, 2);
    f.points[0] = arc_midpoint(f.points[1], f.points[2]);
    // rim tail on the arc from e3 to e1, strictly interior, in rim order
    for (int j = 4; j < n; ++j) {
        double t = static_cast<double>(j - 3) / (n - 3);
        f.points[j] = arc_point(f.points[3], f.points[1], t);
        f.params["arc_t_" + std::to_string(j)] = t;
    }
    for (int i = 1; i < n; ++i) add_edge(f, 0, i);                  // spokes
    for (int i = 1; i + 1 < n; ++i) add_edge(f, i, i + 1);          // rim
    add_edge(f, n - 1, 1);
    f.params["family"] = 2;
    f.validate();
    return f;
}

SphericalFramework gen_subdivided_k4(const SubdividedK4Spec& spec) {
    if (spec.eps <= 0.0 || spec.eps > 0.1)
        throw InvalidSpec("gen_subdivided_k4: eps must lie in (0, 0.1]");
    if (spec.s12 < 0 || spec.s23 < 0 || spec.s31 < 0 || spec.s01 < 0 || spec.s02 < 0 ||
        spec.s03 < 0)
        throw InvalidSpec("gen_subdivided_k4: negative subdivision count");
    if (spec.k12 < 0 || spec.k12 > spec.s12)
        throw InvalidSpec("gen_subdivided_k4: anchor position outside the v1-v2 path");

    SphericalFramework f;
    f.d = 3;
    const int total = 4 + spec.s12 + spec.s23 + spec.s31 + spec.s01 + spec.s02 + spec.s03;
    f.n = total;
    f.points.assign(total, std::vector<double>(3, 0.0));
    int next = 4;

    const auto e1 = axis(3, 0), e2 = axis(3, 1), e3 = axis(3, 2);
    const double eps = spec.eps;

    // v1-v2 path: v1 [pre...] w1 w2 [post...] v2 along the e1->e2 quarter circle;
    // angles measured from e1
    auto circle12 = [&](double angle) {
        return std::vector<double>{std::cos(angle), std::sin(angle), 0.0};
    };
    double a_v1 = (spec.k12 == 0) ? 0.0 : eps;
    double a_v2 = (spec.k12 == spec.s12) ? M_PI / 2 : M_PI / 2 - eps;
    f.points[1] = circle12(a_v1);
    f.points[2] = circle12(a_v2);
    f.points[0] = arc_midpoint(e1, e2); // v0 at the midpoint of the anchor pair

    std::vector<int> path12{1};
    // pre-anchor block subdivides the short arc from v1 down to w1 at angle 0
    for (int i = 0; i < spec.k12; ++i) {
        int idx = next++;
        double t = static_cast<double>(i + 1) / spec.k12;
        f.points[idx] = circle12(a_v1 * (1.0 - t));
        path12.push_back(idx);
    }
    int w1 = path12.back();
    // post-anchor block climbs from w2 at the quarter turn up to v2
    std::vector<int> post;
    for (int i = 0; i < spec.s12 - spec.k12; ++i) {
        int idx = next++;
        double t = static_cast<double>(i + 1) / (spec.s12 - spec.k12);
        post.push_back(idx);
        f.points[idx] = circle12(M_PI / 2 - (M_PI / 2 - a_v2) * t);
    }
    std::reverse(post.begin(), post.end());
    int w2 = post.empty() ? 2 : post.front();
    if (!post.empty()) {
        // first post vertex sits at the quarter turn itself
        f.points[post.front()] = circle12(M_PI / 2);
    }
    for (int idx : post) path12.push_back(idx);
    if (post.empty())
        f.points[2] = circle12(a_v2);
    else
        path12.push_back(2);
    // re-pin the anchors exactly
    f.points[w1] = e1;
    f.points[w2] = e2;

    // v0-v3 path: v0 w3 [..] v3 with w3 = e3 and v3 the arc midpoint of v0,w3
    std::vector<int> path03{0};
    int w3 = 3;
    if (spec.s03 > 0) {
        w3 = next++;
        f.points[w3] = e3;
        f.points[3] = arc_midpoint(f.points[0], e3);
        path03.push_back(w3);
        for (int i = 1; i < spec.s03; ++i) {
            int idx = next++;
            double t = static_cast<double>(i) / spec.s03;
            f.points[idx] = arc_point(e3, f.points[3], t);
            path03.push_back(idx);
        }
    } else {
        f.points[3] = e3;
    }
    path03.push_back(3);

    auto subdivide = [&](int a, int b, int count) {
        std::vector<int> path{a};
        for (int i = 0; i < count; ++i) {
            int idx = next++;
            double t = static_cast<double>(i + 1) / (count + 1);
            f.points[idx] = arc_point(f.points[a], f.points[b], t);
            path.push_back(idx);
        }
        path.push_back(b);
        return path;
    };
    auto path23 = subdivide(2, 3, spec.s23);
    auto path31 = subdivide(3, 1, spec.s31);
    auto path01 = subdivide(0, 1, spec.s01);
    auto path02 = subdivide(0, 2, spec.s02);

    auto chain = [&](const std::vector<int>& path) {
        for (size_t i = 0; i + 1 < path.size(); ++i) add_edge(f, path[i], path[i + 1]);
    };
    chain(path12);
    chain(path23);
    chain(path31);
    chain(path01);
    chain(path02);
    chain(path03);

    f.params["family"] = 3;
    f.params["eps"] = eps;
    f.params["w1"] = w1;
    f.params["w2"] = w2;
    f.params["w3"] = w3;
    f.validate();
    return f;
}

namespace {

SphericalFramework wheel_rim_subdivision(const WheelSplittingSpec& spec) {
    const int n = spec.n;
    if (n < 4) throw InvalidSpec("gen_wheel_splitting: wheel needs n >= 4");
    if (spec.subdivisions < 1 && n == 4)
        throw InvalidSpec("gen_wheel_splitting: K4 itself is excluded, subdivide at least once");
    if (spec.subdivisions < 0) throw InvalidSpec("gen_wheel_splitting: negative subdivisions");

    SphericalFramework f;
    f.d = 3;
    f.n = n + spec.subdivisions;
    f.points.assign(f.n, std::vector<double>(3, 0.0));
    const auto e1 = axis(3, 0), e2 = axis(3, 1), e3 = axis(3, 2);

    // center 0, rim 1..n-1; rim edge (3,4) carries the subdivision vertices
    f.points[1] = e1;
    f.points[2] = e2;
    f.points[3] = e3;
    f.points[0] = arc_midpoint(e1, e2);

    // rim tail from e3 back to e1: subdivision vertices then u_4..u_{n-1}
    std::vector<int> tail{3};
    for (int i = 0; i < spec.subdivisions; ++i) tail.push_back(n + i);
    for (int i = 4; i < n; ++i) tail.push_back(i);
    tail.push_back(1);
    for (size_t i = 1; i + 1 < tail.size(); ++i) {
        double t = static_cast<double>(i) / (tail.size() - 1);
        f.points[tail[i]] = arc_point(e3, e1, t);
    }

    for (int i = 1; i < n; ++i) add_edge(f, 0, i); // spokes to original rim only
    add_edge(f, 1, 2);
    add_edge(f, 2, 3);
    for (size_t i = 0; i + 1 < tail.size(); ++i) add_edge(f, tail[i], tail[i + 1]);

    f.params["family"] = 4;
    f.params["variant"] = 0;
    // first vertex between u_1 and u_3 along the subdivided rim path
    f.params["target0"] = 3;
    f.params["target1"] = tail[1];
    f.validate();
    return f;
}

SphericalFramework wheel_center_split_triangle(const WheelSplittingSpec& spec) {
    const int n = spec.n;
    if (n < 5) throw InvalidSpec("gen_wheel_splitting: triangle split needs n >= 5");
    SphericalFramework f;
    f.d = 3;
    f.n = n + 1; // x, y, rim u_1..u_{n-1}
    f.points.assign(f.n, std::vector<double>(3, 0.0));
    const auto e1 = axis(3, 0), e2 = axis(3, 1), e3 = axis(3, 2);
    const int x = 0, y = 1;
    auto u = [&](int i) { return 1 + i; }; // u_i at index i+1

    f.points[u(1)] = e1;
    f.points[u(2)] = e2;
    f.points[x] = arc_midpoint(e1, e2);
    f.points[y] = e3;
    f.points[u(4)] = arc_midpoint(f.points[x], e3);
    f.points[u(3)] = arc_midpoint(e2, f.points[u(4)]);
    // remaining rim from u_4 back to u_1 on a straight arc
    for (int i = 5; i < n; ++i) {
        double t = static_cast<double>(i - 4) / (n - 4);
        f.points[u(i)] = arc_point(f.points[u(4)], e1, t);
    }

    add_edge(f, x, y);
    add_edge(f, x, u(1));
    add_edge(f, x, u(2));
    for (int i = 3; i < n; ++i) add_edge(f, y, u(i));
    for (int i = 1; i + 1 < n; ++i) add_edge(f, u(i), u(i + 1));
    add_edge(f, u(n - 1), u(1));

    f.params["family"] = 4;
    f.params["variant"] = 1;
    f.params["target0"] = y;
    f.params["target1"] = u(4);
    f.validate();
    return f;
}

SphericalFramework wheel_center_split_square(const WheelSplittingSpec& spec) {
    const int n = spec.n;
    if (n < 6) throw InvalidSpec("gen_wheel_splitting: square split needs n >= 6");
    if (spec.eps <= 0.0 || spec.eps > 0.1)
        throw InvalidSpec("gen_wheel_splitting: eps must lie in (0, 0.1]");
    SphericalFramework f;
    f.d = 3;
    f.n = n + 1;
    f.points.assign(f.n, std::vector<double>(3, 0.0));
    const auto e1 = axis(3, 0), e2 = axis(3, 1), e3 = axis(3, 2);
    const int x = 0, y = 1;
    auto u = [&](int i) { return 1 + i; };

    // anchor pair on the u_1-u_2 rim edge; u_3 sits eps short of e2
    f.points[u(1)] = e1;
    f.points[u(2)] = e2;
    f.points[x] = arc_midpoint(e1, e2);
    double a3 = M_PI / 2 - spec.eps;
    f.points[u(3)] = {std::cos(a3), std::sin(a3), 0.0};
    f.points[y] = e3;
    f.points[u(4)] = arc_midpoint(f.points[x], e3);
    for (int i = 5; i < n; ++i) {
        double t = static_cast<double>(i - 4) / (n - 4);
        f.points[u(i)] = arc_point(f.points[u(4)], e1, t);
    }

    add_edge(f, x, y);
    add_edge(f, x, u(1));
    add_edge(f, x, u(3));
    add_edge(f, y, u(2));
    for (int i = 4; i < n; ++i) add_edge(f, y, u(i));
    for (int i = 1; i + 1 < n; ++i) add_edge(f, u(i), u(i + 1));
    add_edge(f, u(n - 1), u(1));

    f.params["family"] = 4;
    f.params["variant"] = 2;
    f.params["eps"] = spec.eps;
    f.params["target0"] = y;
    f.params["target1"] = u(4);
    f.validate();
    return f;
}

} // namespace

SphericalFramework gen_wheel_splitting(const WheelSplittingSpec& spec) {
    switch (spec.variant) {
        case WheelSplitVariant::rim_subdivision: return wheel_rim_subdivision(spec);
        case WheelSplitVariant::center_split_triangle: return wheel_center_split_triangle(spec);
        case WheelSplitVariant::center_split_square: return wheel_center_split_square(spec);
    }
    throw InvalidSpec("gen_wheel_splitting: unknown variant");
}

SphericalFramework gen_gk(int k, double theta) {
    if (k < 1) throw InvalidSpec("gen_gk: need k >= 1");
    if (theta < M_PI / 2 + 0.05 || theta > M_PI - 0.05)
        throw InvalidSpec("gen_gk: theta must stay clear of the degenerate limits");
    SphericalFramework f;
    f.d = k;
    f.n = 3 * k - 2;
    f.points.assign(f.n, std::vector<double>(k, 0.0));

    auto u_idx = [](int i) { return 3 * i - 5; };
    auto v_idx = [](int i) { return i == 1 ? 0 : 3 * i - 4; };
    auto w_idx = [](int i) { return i == 1 ? 0 : 3 * i - 3; };

    f.points[0] = axis(k, 0);
    for (int i = 2; i <= k; ++i) {
        f.points[v_idx(i)] = axis(k, i - 1);
        f.points[w_idx(i)] = axis(k, i - 1);
        std::vector<double> ui(k, 0.0);
        ui[i - 2] = std::cos(theta);
        ui[i - 1] = std::sin(theta);
        f.points[u_idx(i)] = ui;

        add_edge(f, w_idx(i - 1), v_idx(i));
        add_edge(f, w_idx(i - 1), w_idx(i));
        add_edge(f, u_idx(i), v_idx(i - 1));
        add_edge(f, u_idx(i), v_idx(i));
        add_edge(f, u_idx(i), w_idx(i));
    }
    f.params["family"] = 5;
    f.params["theta"] = theta;
    f.params["k"] = k;
    if (k >= 2) {
        f.params["target0"] = v_idx(k);
        f.params["target1"] = w_idx(k);
    }
    f.validate();
    return f;
}

SphericalFramework gen_complete_boundary(int n, int r, uint64_t seed) {
    if (n < 1 || r < 1 || r > n) throw InvalidSpec("gen_complete_boundary: need 1 <= r <= n");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    SphericalFramework f;
    f.n = n;
    f.d = r;
    f.points.assign(n, std::vector<double>(r, 0.0));
    for (int v = 0; v < n; ++v) {
        double norm2 = 0.0;
        while (norm2 < 1e-8) {
            for (int i = 0; i < r; ++i) f.points[v][i] = gauss(rng);
            norm2 = std::inner_product(f.points[v].begin(), f.points[v].end(),
                                       f.points[v].begin(), 0.0);
        }
        f.points[v] = normalize(f.points[v]);
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) add_edge(f, i, j);
    f.params["family"] = 6;
    f.validate();
    return f;
}

std::vector<int> reduction_targets(const SphericalFramework& f) {
    auto it0 = f.params.find("target0");
    auto it1 = f.params.find("target1");
    std::vector<int> out;
    if (it0 != f.params.end()) out.push_back(static_cast<int>(it0->second));
    if (it1 != f.params.end()) out.push_back(static_cast<int>(it1->second));
    auto fam = f.params.find("family");
    if (out.empty() && fam != f.params.end() && fam->second == 1) {
        // degenerate cycle: the two vertices furthest along the arc
        out = {f.n - 2, f.n - 1};
    }
    if (out.empty() && fam != f.params.end() && fam->second == 2) {
        // wheel: the third axis vertex and its arc neighbor
        out = {3, 4};
    }
    return out;
}

SphericalFramework generate(const ConstructionSpec& spec) {
    switch (spec.family) {
        case Family::degenerate_cycle: return gen_cycle_degenerate(spec.n);
        case Family::wheel_p1: return gen_wheel_p1(spec.n);
        case Family::subdivided_k4: return gen_subdivided_k4(spec.k4);
        case Family::wheel_splitting: return gen_wheel_splitting(spec.split);
        case Family::gk: return gen_gk(spec.k, spec.theta);
        case Family::complete_boundary:
            return gen_complete_boundary(spec.n, spec.rank, spec.seed);
    }
    throw InvalidSpec("generate: unknown family");
}

} // namespace sdcomp
