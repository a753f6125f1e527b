#include "homlab/graph.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <string>

namespace homlab {

Graph::Graph(std::size_t n) : adj_(n), words_((n + 63) / 64) {
    bits_.assign(n * words_, 0);
}

Graph::Graph(std::size_t n, std::span<const Edge> edges) : Graph(n) {
    edges_.reserve(edges.size());
    for (const Edge& e : edges) {
        if (e.u == e.v)
            throw std::invalid_argument("loop at vertex " + std::to_string(e.u));
        if (e.v >= n)
            throw std::invalid_argument("edge endpoint " + std::to_string(e.v) + " out of range");
        edges_.push_back(e);
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    for (const Edge& e : edges_) {
        adj_[e.u].push_back(e.v);
        adj_[e.v].push_back(e.u);
        bits_[e.u * words_ + e.v / 64] |= std::uint64_t{1} << (e.v % 64);
        bits_[e.v * words_ + e.u / 64] |= std::uint64_t{1} << (e.u % 64);
    }
    for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
}

static std::vector<Edge> to_edges(std::initializer_list<std::pair<Vertex, Vertex>> pairs) {
    std::vector<Edge> out;
    out.reserve(pairs.size());
    for (auto [a, b] : pairs) out.emplace_back(a, b);
    return out;
}

Graph::Graph(std::size_t n, std::initializer_list<std::pair<Vertex, Vertex>> edges)
    : Graph(n, std::span<const Edge>(to_edges(edges))) {}

Graph Graph::relabel(std::span<const Vertex> perm) const {
    if (perm.size() != num_vertices()) throw std::invalid_argument("relabel: permutation size mismatch");
    std::vector<Edge> out;
    out.reserve(edges_.size());
    for (const Edge& e : edges_) out.emplace_back(perm[e.u], perm[e.v]);
    return Graph(num_vertices(), out);
}

Graph Graph::induced(std::span<const Vertex> vertices) const {
    std::vector<std::int64_t> pos(num_vertices(), -1);
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        if (pos[vertices[i]] >= 0) throw std::invalid_argument("induced: repeated vertex");
        pos[vertices[i]] = static_cast<std::int64_t>(i);
    }
    std::vector<Edge> out;
    for (const Edge& e : edges_)
        if (pos[e.u] >= 0 && pos[e.v] >= 0)
            out.emplace_back(static_cast<Vertex>(pos[e.u]), static_cast<Vertex>(pos[e.v]));
    return Graph(vertices.size(), out);
}

void LabelledGraph::validate() const {
    for (Vertex l : labels)
        if (l >= graph.num_vertices())
            throw std::invalid_argument("label " + std::to_string(l) + " is not a vertex");
}

OrderedGraph::OrderedGraph(Graph g) : graph(std::move(g)), order(graph.num_vertices()) {
    std::iota(order.begin(), order.end(), Vertex{0});
}

OrderedGraph::OrderedGraph(Graph g, std::vector<Vertex> ord) : graph(std::move(g)), order(std::move(ord)) {
    std::vector<char> seen(graph.num_vertices(), 0);
    if (order.size() != graph.num_vertices()) throw std::invalid_argument("order is not a permutation");
    for (Vertex v : order) {
        if (v >= graph.num_vertices() || seen[v]) throw std::invalid_argument("order is not a permutation");
        seen[v] = 1;
    }
}

std::vector<std::size_t> OrderedGraph::rank() const {
    std::vector<std::size_t> r(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) r[order[i]] = i;
    return r;
}

Graph complete_graph(std::size_t n) {
    std::vector<Edge> e;
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b) e.emplace_back(a, b);
    return Graph(n, e);
}

Graph empty_graph(std::size_t n) { return Graph(n); }

Graph path_graph(std::size_t n) {
    std::vector<Edge> e;
    for (Vertex a = 0; a + 1 < n; ++a) e.emplace_back(a, a + 1);
    return Graph(n, e);
}

Graph cycle_graph(std::size_t n) {
    if (n < 3) throw std::invalid_argument("cycle needs at least 3 vertices");
    std::vector<Edge> e;
    for (Vertex a = 0; a < n; ++a) e.emplace_back(a, static_cast<Vertex>((a + 1) % n));
    return Graph(n, e);
}

Graph star_graph(std::size_t leaves) {
    std::vector<Edge> e;
    for (Vertex a = 1; a <= leaves; ++a) e.emplace_back(0, a);
    return Graph(leaves + 1, e);
}

Graph complete_bipartite_graph(std::size_t a, std::size_t b) {
    std::vector<Edge> e;
    for (Vertex x = 0; x < a; ++x)
        for (Vertex y = 0; y < b; ++y) e.emplace_back(x, static_cast<Vertex>(a + y));
    return Graph(a + b, e);
}

Graph petersen_graph() {
    std::vector<Edge> e;
    for (Vertex i = 0; i < 5; ++i) {
        e.emplace_back(i, (i + 1) % 5);
        e.emplace_back(i, i + 5);
        e.emplace_back(i + 5, (i + 2) % 5 + 5);
    }
    return Graph(10, e);
}

Graph categorical_product(const Graph& g, const Graph& h) {
    const std::size_t nh = h.num_vertices();
    std::vector<Edge> out;
    out.reserve(2 * g.num_edges() * h.num_edges());
    for (const Edge& ge : g.edges())
        for (const Edge& he : h.edges()) {
            out.emplace_back(static_cast<Vertex>(ge.u * nh + he.u), static_cast<Vertex>(ge.v * nh + he.v));
            out.emplace_back(static_cast<Vertex>(ge.u * nh + he.v), static_cast<Vertex>(ge.v * nh + he.u));
        }
    return Graph(g.num_vertices() * nh, out);
}

Graph categorical_power(const Graph& g, std::size_t k) {
    if (k == 0) throw std::invalid_argument("categorical_power needs k >= 1");
    Graph acc = g;
    for (std::size_t i = 1; i < k; ++i) acc = categorical_product(acc, g);
    return acc;
}

Graph disjoint_union(const Graph& g, const Graph& h) {
    const auto off = static_cast<Vertex>(g.num_vertices());
    std::vector<Edge> out(g.edges().begin(), g.edges().end());
    for (const Edge& e : h.edges()) out.emplace_back(e.u + off, e.v + off);
    return Graph(g.num_vertices() + h.num_vertices(), out);
}

namespace {

struct UnionFind {
    std::vector<Vertex> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), Vertex{0}); }
    Vertex find(Vertex x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    // Keeps the smaller id as representative.
    void unite(Vertex a, Vertex b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (b < a) std::swap(a, b);
        parent[b] = a;
    }
};

} // namespace

std::optional<std::pair<LabelledGraph, GlueMaps>> try_glue(const LabelledGraph& f, const LabelledGraph& k) {
    if (f.arity() != k.arity()) throw std::invalid_argument("glue: label arity mismatch");
    f.validate();
    k.validate();
    const std::size_t nf = f.graph.num_vertices();
    const std::size_t nk = k.graph.num_vertices();
    UnionFind uf(nf + nk);
    for (std::size_t i = 0; i < f.arity(); ++i) uf.unite(f.labels[i], static_cast<Vertex>(nf + k.labels[i]));

    std::vector<Vertex> id(nf + nk, 0);
    Vertex next = 0;
    for (Vertex x = 0; x < nf + nk; ++x)
        if (uf.find(x) == x) id[x] = next++;
    for (Vertex x = 0; x < nf + nk; ++x) id[x] = id[uf.find(x)];

    std::vector<Edge> out;
    out.reserve(f.graph.num_edges() + k.graph.num_edges());
    for (const Edge& e : f.graph.edges()) {
        if (id[e.u] == id[e.v]) return std::nullopt;
        out.emplace_back(id[e.u], id[e.v]);
    }
    for (const Edge& e : k.graph.edges()) {
        Vertex a = id[nf + e.u], b = id[nf + e.v];
        if (a == b) return std::nullopt;
        out.emplace_back(a, b);
    }
    GlueMaps maps;
    maps.left.assign(id.begin(), id.begin() + static_cast<std::ptrdiff_t>(nf));
    maps.right.assign(id.begin() + static_cast<std::ptrdiff_t>(nf), id.end());
    LabelledGraph result{Graph(next, out), {}};
    for (Vertex l : f.labels) result.labels.push_back(maps.left[l]);
    return std::make_pair(std::move(result), std::move(maps));
}

LabelledGraph glue(const LabelledGraph& f, const LabelledGraph& k) {
    auto r = try_glue(f, k);
    if (!r) throw std::domain_error("glue: identification creates a loop");
    return std::move(r->first);
}

LabelledGraph glue_unit(std::size_t arity) {
    LabelledGraph g{Graph(arity), std::vector<Vertex>(arity)};
    std::iota(g.labels.begin(), g.labels.end(), Vertex{0});
    return g;
}

std::vector<std::vector<Vertex>> connected_components(const Graph& g) {
    const std::size_t n = g.num_vertices();
    std::vector<char> seen(n, 0);
    std::vector<std::vector<Vertex>> comps;
    for (Vertex s = 0; s < n; ++s) {
        if (seen[s]) continue;
        std::vector<Vertex> comp{s};
        seen[s] = 1;
        for (std::size_t i = 0; i < comp.size(); ++i)
            for (Vertex w : g.neighbors(comp[i]))
                if (!seen[w]) {
                    seen[w] = 1;
                    comp.push_back(w);
                }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

bool is_connected(const Graph& g) { return connected_components(g).size() <= 1; }

std::vector<std::size_t> bfs_distances(const Graph& g, Vertex source) {
    std::vector<std::size_t> dist(g.num_vertices(), std::numeric_limits<std::size_t>::max());
    std::queue<Vertex> q;
    dist[source] = 0;
    q.push(source);
    while (!q.empty()) {
        Vertex v = q.front();
        q.pop();
        for (Vertex w : g.neighbors(v))
            if (dist[w] == std::numeric_limits<std::size_t>::max()) {
                dist[w] = dist[v] + 1;
                q.push(w);
            }
    }
    return dist;
}

} // namespace homlab
