#include "homlab/graph_stats.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

namespace homlab {

std::optional<std::size_t> girth(const Graph& g) {
    const std::size_t n = g.num_vertices();
    constexpr std::size_t inf = std::numeric_limits<std::size_t>::max();
    std::size_t best = inf;
    std::vector<std::size_t> dist(n);
    std::vector<Vertex> parent(n);
    for (Vertex s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), inf);
        std::queue<Vertex> q;
        dist[s] = 0;
        parent[s] = s;
        q.push(s);
        while (!q.empty()) {
            Vertex v = q.front();
            q.pop();
            if (2 * dist[v] + 1 >= best) break;
            for (Vertex w : g.neighbors(v)) {
                if (dist[w] == inf) {
                    dist[w] = dist[v] + 1;
                    parent[w] = v;
                    q.push(w);
                } else if (parent[v] != w) {
                    best = std::min(best, dist[v] + dist[w] + 1);
                }
            }
        }
    }
    if (best == inf) return std::nullopt;
    return best;
}

bool is_planar(const Graph& g) {
    using BGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
    BGraph bg(g.num_vertices());
    for (const Edge& e : g.edges()) boost::add_edge(e.u, e.v, bg);
    return boost::boyer_myrvold_planarity_test(bg);
}

std::size_t local_vertex_connectivity(const Graph& g, Vertex s, Vertex t) {
    if (s == t || g.has_edge(s, t)) throw std::invalid_argument("local connectivity needs distinct non-adjacent vertices");
    // Vertex v splits into v_in = 2v and v_out = 2v+1 with unit capacity;
    // every edge becomes two arcs out->in of unbounded capacity.
    const std::size_t n = g.num_vertices();
    struct Arc {
        std::size_t to;
        int cap;
    };
    std::vector<Arc> arcs;
    std::vector<std::vector<std::size_t>> out(2 * n);
    auto add = [&](std::size_t a, std::size_t b, int cap) {
        out[a].push_back(arcs.size());
        arcs.push_back({b, cap});
        out[b].push_back(arcs.size());
        arcs.push_back({a, 0});
    };
    const int big = static_cast<int>(n) + 1;
    for (Vertex v = 0; v < n; ++v) add(2 * v, 2 * v + 1, (v == s || v == t) ? big : 1);
    for (const Edge& e : g.edges()) {
        add(2 * e.u + 1, 2 * e.v, big);
        add(2 * e.v + 1, 2 * e.u, big);
    }
    const std::size_t src = 2 * s + 1, dst = 2 * t;
    std::size_t flow = 0;
    std::vector<std::size_t> via(2 * n);
    while (true) {
        std::fill(via.begin(), via.end(), std::numeric_limits<std::size_t>::max());
        std::queue<std::size_t> q;
        q.push(src);
        via[src] = arcs.size();
        while (!q.empty() && via[dst] == std::numeric_limits<std::size_t>::max()) {
            std::size_t x = q.front();
            q.pop();
            for (std::size_t a : out[x])
                if (arcs[a].cap > 0 && via[arcs[a].to] == std::numeric_limits<std::size_t>::max()) {
                    via[arcs[a].to] = a;
                    q.push(arcs[a].to);
                }
        }
        if (via[dst] == std::numeric_limits<std::size_t>::max()) break;
        for (std::size_t x = dst; x != src;) {
            std::size_t a = via[x];
            arcs[a].cap -= 1;
            arcs[a ^ 1].cap += 1;
            x = arcs[a ^ 1].to;
        }
        ++flow;
    }
    return flow;
}

std::size_t vertex_connectivity(const Graph& g) {
    const std::size_t n = g.num_vertices();
    if (n <= 1 || !is_connected(g)) return 0;
    std::size_t best = n - 1;
    // Some vertex among the first best+1 lies outside a minimum separator.
    for (Vertex s = 0; s < n && s <= best; ++s)
        for (Vertex t = s + 1; t < n; ++t)
            if (!g.has_edge(s, t)) best = std::min(best, local_vertex_connectivity(g, s, t));
    return best;
}

StructuralStats structural_stats(const Graph& g) {
    StructuralStats st;
    if (g.num_vertices() > 0) {
        st.min_degree = g.degree(0);
        for (Vertex v = 0; v < g.num_vertices(); ++v) st.min_degree = std::min(st.min_degree, g.degree(v));
    }
    st.girth = girth(g);
    st.is_planar = is_planar(g);
    st.vertex_connectivity = vertex_connectivity(g);
    return st;
}

} // namespace homlab
