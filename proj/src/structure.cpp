#include "homlab/structure.hpp"

#include <map>
#include <numeric>
#include <stdexcept>

namespace homlab {

ColoredDigraph to_digraph(const Graph& g) {
    ColoredDigraph d(g.num_vertices());
    for (const Edge& e : g.edges()) d.at(e.u, e.v) = d.at(e.v, e.u) = 1;
    return d;
}

ColoredDigraph to_digraph(const LabelledGraph& g) {
    ColoredDigraph d = to_digraph(g.graph);
    // Colour = bitmask of label positions; arities stay far below 32.
    if (g.arity() >= 31) throw std::invalid_argument("label arity too large");
    for (std::size_t i = 0; i < g.arity(); ++i) d.vertex_color[g.labels[i]] |= 1u << i;
    return d;
}

bool is_isomorphism(const ColoredDigraph& a, const ColoredDigraph& b, const Permutation& map) {
    if (a.n != b.n || map.size() != a.n) return false;
    std::vector<char> hit(a.n, 0);
    for (Vertex x = 0; x < a.n; ++x) {
        if (map[x] >= a.n || hit[map[x]]) return false;
        hit[map[x]] = 1;
        if (a.vertex_color[x] != b.vertex_color[map[x]]) return false;
    }
    for (Vertex x = 0; x < a.n; ++x)
        for (Vertex y = 0; y < a.n; ++y)
            if (a.at(x, y) != b.at(map[x], map[y])) return false;
    return true;
}

bool is_isomorphism(const Graph& a, const Graph& b, const Permutation& map) {
    if (a.num_vertices() != b.num_vertices() || a.num_edges() != b.num_edges() || map.size() != a.num_vertices())
        return false;
    std::vector<char> hit(map.size(), 0);
    for (Vertex m : map) {
        if (m >= map.size() || hit[m]) return false;
        hit[m] = 1;
    }
    for (const Edge& e : a.edges())
        if (!b.has_edge(map[e.u], map[e.v])) return false;
    return true;
}

bool is_automorphism(const Graph& g, const Permutation& perm) { return is_isomorphism(g, g, perm); }

Permutation compose(const Permutation& first, const Permutation& then) {
    Permutation r(first.size());
    for (std::size_t i = 0; i < first.size(); ++i) r[i] = then[first[i]];
    return r;
}

Permutation inverse(const Permutation& p) {
    Permutation r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<Vertex>(i);
    return r;
}

bool is_identity(const Permutation& p) {
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] != i) return false;
    return true;
}

std::uint64_t permutation_order(const Permutation& p) {
    std::vector<char> seen(p.size(), 0);
    std::uint64_t order = 1;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i]) continue;
        std::uint64_t len = 0;
        for (std::size_t j = i; !seen[j]; j = p[j]) {
            seen[j] = 1;
            ++len;
        }
        order = std::lcm(order, len);
    }
    return order;
}

Permutation power(const Permutation& p, std::uint64_t e) {
    Permutation result(p.size());
    std::iota(result.begin(), result.end(), Vertex{0});
    Permutation base = p;
    while (e) {
        if (e & 1) result = compose(result, base);
        base = compose(base, base);
        e >>= 1;
    }
    return result;
}

} // namespace homlab
