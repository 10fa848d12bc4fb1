#include "sdcomp/clique_tree.hpp"

#include <algorithm>
#include <set>

namespace sdcomp {

namespace {

bool is_clique(const Graph& g, const std::vector<int>& verts) {
    for (size_t i = 0; i < verts.size(); ++i)
        for (size_t j = i + 1; j < verts.size(); ++j)
            if (!g.has_edge(verts[i], verts[j])) return false;
    return true;
}

std::vector<std::vector<int>> components_avoiding(const Graph& g, const std::set<int>& removed) {
    std::vector<int> keep;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (!removed.count(v)) keep.push_back(v);
    Graph h = g.induced(keep);
    auto comps = connected_components(h);
    std::vector<std::vector<int>> out;
    for (auto& c : comps) {
        std::vector<int> orig;
        for (int v : c) orig.push_back(keep[v]);
        out.push_back(std::move(orig));
    }
    return out;
}

std::vector<int> neighborhood_of_set(const Graph& g, const std::vector<int>& comp,
                                     const std::set<int>& inside) {
    std::set<int> nb;
    for (int v : comp)
        for (int u : g.neighbors(v))
            if (!inside.count(u)) nb.insert(u);
    return {nb.begin(), nb.end()};
}

} // namespace

std::vector<std::vector<int>> minimal_separators(const Graph& g) {
    const int n = g.vertex_count();
    std::set<std::vector<int>> found;
    std::vector<std::vector<int>> queue;

    auto offer = [&](std::vector<int> s) {
        if (s.empty()) return;
        std::sort(s.begin(), s.end());
        if (found.insert(s).second) queue.push_back(std::move(s));
    };

    // generation: close neighborhoods of single vertices
    for (int v = 0; v < n; ++v) {
        std::set<int> removed{v};
        for (int u : g.neighbors(v)) removed.insert(u);
        for (const auto& comp : components_avoiding(g, removed)) {
            std::set<int> inside(comp.begin(), comp.end());
            offer(neighborhood_of_set(g, comp, inside));
        }
    }
    // expansion
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        auto s = queue[qi];
        for (int x : s) {
            std::set<int> removed(s.begin(), s.end());
            for (int u : g.neighbors(x)) removed.insert(u);
            for (const auto& comp : components_avoiding(g, removed)) {
                std::set<int> inside(comp.begin(), comp.end());
                offer(neighborhood_of_set(g, comp, inside));
            }
        }
    }

    // keep genuine separators: some component of G - S has N(C) == S
    std::vector<std::vector<int>> out;
    for (const auto& s : found) {
        std::set<int> removed(s.begin(), s.end());
        auto comps = components_avoiding(g, removed);
        int full = 0;
        for (const auto& comp : comps) {
            std::set<int> inside(comp.begin(), comp.end());
            auto nb = neighborhood_of_set(g, comp, inside);
            if (nb.size() == s.size() && std::equal(nb.begin(), nb.end(), s.begin())) ++full;
        }
        if (full >= 2) out.push_back(s);
    }
    return out;
}

namespace {

LeafClass classify_leaf(const Graph& g) {
    bool complete = true;
    for (int i = 0; i < g.vertex_count() && complete; ++i)
        for (int j = i + 1; j < g.vertex_count(); ++j)
            if (!g.has_edge(i, j)) {
                complete = false;
                break;
            }
    if (complete) return LeafClass::complete;
    if (is_chordal(g).chordal) return LeafClass::chordal;
    if (is_k4_minor_free(g)) return LeafClass::k4_minor_free;
    return LeafClass::other;
}

std::unique_ptr<CliqueSumTree::Node> decompose_rec(const Graph& g,
                                                   const std::vector<int>& orig_ids) {
    auto node = std::make_unique<CliqueSumTree::Node>();
    node->vertices = orig_ids;

    // disconnected graphs split along the empty separator (a clique)
    auto comps = connected_components(g);
    if (comps.size() > 1) {
        for (auto& comp : comps) {
            std::vector<int> sub_orig;
            for (int v : comp) sub_orig.push_back(orig_ids[v]);
            node->children.push_back(decompose_rec(g.induced(comp), sub_orig));
        }
        return node;
    }

    std::vector<int> chosen;
    bool have = false;
    for (auto& s : minimal_separators(g)) {
        if (!is_clique(g, s)) continue;
        if (!have || s.size() < chosen.size()) {
            chosen = s;
            have = true;
        }
    }
    if (!have) {
        node->cls = classify_leaf(g);
        node->subgraph = g;
        return node;
    }

    for (int v : chosen) node->separator.push_back(orig_ids[v]);
    std::set<int> removed(chosen.begin(), chosen.end());
    for (const auto& comp : components_avoiding(g, removed)) {
        std::vector<int> piece = comp;
        piece.insert(piece.end(), chosen.begin(), chosen.end());
        std::sort(piece.begin(), piece.end());
        std::vector<int> sub_orig;
        for (int v : piece) sub_orig.push_back(orig_ids[v]);
        node->children.push_back(decompose_rec(g.induced(piece), sub_orig));
    }
    return node;
}

void collect_leaves(const CliqueSumTree::Node* node,
                    std::vector<const CliqueSumTree::Node*>& out) {
    if (node->is_leaf()) {
        out.push_back(node);
        return;
    }
    for (const auto& c : node->children) collect_leaves(c.get(), out);
}

} // namespace

std::vector<const CliqueSumTree::Node*> CliqueSumTree::leaves() const {
    std::vector<const Node*> out;
    if (root) collect_leaves(root.get(), out);
    return out;
}

Graph CliqueSumTree::reassemble(int n) const {
    Graph g(n);
    for (const Node* leaf : leaves())
        for (const auto& [a, b] : leaf->subgraph.edges())
            g.add_edge(leaf->vertices[a], leaf->vertices[b]);
    return g;
}

bool CliqueSumTree::separators_are_cliques(const Graph& g) const {
    std::vector<const Node*> stack;
    if (root) stack.push_back(root.get());
    while (!stack.empty()) {
        const Node* node = stack.back();
        stack.pop_back();
        for (size_t i = 0; i < node->separator.size(); ++i)
            for (size_t j = i + 1; j < node->separator.size(); ++j)
                if (!g.has_edge(node->separator[i], node->separator[j])) return false;
        for (const auto& c : node->children) stack.push_back(c.get());
    }
    return true;
}

CliqueSumTree clique_sum_decompose(const Graph& g) {
    std::vector<int> ids(g.vertex_count());
    for (int i = 0; i < g.vertex_count(); ++i) ids[i] = i;
    CliqueSumTree tree;
    tree.root = decompose_rec(g, ids);
    return tree;
}

SdBounds classify_sd_bounds(const Graph& g) {
    SdBounds out;
    if (g.edge_count() == 0) {
        out.sd_exact = 0;
        out.sd_upper = 0;
        out.sd_star_upper = 0;
        out.chordal = true;
        out.series_parallel = true;
        out.decomposes = true;
        return out;
    }
    out.chordal = is_chordal(g).chordal;
    out.series_parallel = is_k4_minor_free(g);
    if (out.chordal) {
        out.sd_exact = 1;
        out.sd_upper = 1;
        out.sd_star_upper = 1; // chordal graphs are clique sums of complete graphs
        out.decomposes = true;
        return out;
    }
    auto tree = clique_sum_decompose(g);
    bool ok = true;
    for (const auto* leaf : tree.leaves())
        if (leaf->cls == LeafClass::other) ok = false;
    out.decomposes = ok;
    if (ok) {
        out.sd_star_upper = 1;
        out.sd_upper = 2;
    }
    return out;
}

} // namespace sdcomp
