#pragma once

// Deliberately naive reference computations for the tests.  Nothing here
// calls into the library's counting or search code.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include <gmpxx.h>

#include "homlab/graph.hpp"

namespace oracle {

using homlab::Edge;
using homlab::Graph;
using homlab::Vertex;

inline Graph random_graph(std::size_t n, double density, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(density);
    std::vector<Edge> e;
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b)
            if (coin(rng)) e.emplace_back(a, b);
    return Graph(n, e);
}

inline Graph random_connected_graph(std::size_t n, double density, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(density);
    std::vector<Edge> e;
    for (Vertex v = 1; v < n; ++v) e.emplace_back(static_cast<Vertex>(rng() % v), v);
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b)
            if (coin(rng)) e.emplace_back(a, b);
    return Graph(n, e);
}

inline std::vector<Vertex> random_permutation(std::size_t n, std::mt19937_64& rng) {
    std::vector<Vertex> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

inline bool adjacent(const Graph& g, Vertex a, Vertex b) {
    for (const Edge& e : g.edges())
        if ((e.u == a && e.v == b) || (e.u == b && e.v == a)) return true;
    return false;
}

// Every map V(F) -> V(G), in odometer order.
template <class Visit>
void for_each_map(std::size_t nf, std::size_t ng, Visit visit) {
    if (ng == 0) {
        if (nf == 0) visit(std::vector<Vertex>{});
        return;
    }
    std::vector<Vertex> h(nf, 0);
    while (true) {
        visit(h);
        std::size_t i = 0;
        while (i < nf && ++h[i] == ng) h[i++] = 0;
        if (i == nf) return;
    }
}

inline bool is_hom(const Graph& f, const Graph& g, const std::vector<Vertex>& h) {
    for (const Edge& e : f.edges())
        if (!adjacent(g, h[e.u], h[e.v])) return false;
    return true;
}

inline mpz_class hom(const Graph& f, const Graph& g) {
    mpz_class c = 0;
    for_each_map(f.num_vertices(), g.num_vertices(), [&](const std::vector<Vertex>& h) {
        if (is_hom(f, g, h)) ++c;
    });
    return c;
}

inline mpz_class hom_labelled(const homlab::LabelledGraph& f, const homlab::LabelledGraph& g) {
    mpz_class c = 0;
    for_each_map(f.graph.num_vertices(), g.graph.num_vertices(), [&](const std::vector<Vertex>& h) {
        for (std::size_t i = 0; i < f.labels.size(); ++i)
            if (h[f.labels[i]] != g.labels[i]) return;
        if (is_hom(f.graph, g.graph, h)) ++c;
    });
    return c;
}

// tr(A^k) counts closed k-walks, which is hom(C_k, G) for k >= 3.
inline mpz_class closed_walks(const Graph& g, std::size_t k) {
    const std::size_t n = g.num_vertices();
    std::vector<mpz_class> a(n * n, 0), p(n * n, 0);
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = 0; j < n; ++j) a[i * n + j] = adjacent(g, i, j) ? 1 : 0;
    for (Vertex i = 0; i < n; ++i) p[i * n + i] = 1;
    for (std::size_t step = 0; step < k; ++step) {
        std::vector<mpz_class> q(n * n, 0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t t = 0; t < n; ++t)
                for (std::size_t j = 0; j < n; ++j) q[i * n + j] += p[i * n + t] * a[t * n + j];
        p = std::move(q);
    }
    mpz_class tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += p[i * n + i];
    return tr;
}

inline bool isomorphic(const Graph& a, const Graph& b) {
    if (a.num_vertices() != b.num_vertices() || a.num_edges() != b.num_edges()) return false;
    std::vector<Vertex> p(a.num_vertices());
    std::iota(p.begin(), p.end(), 0);
    do {
        bool ok = true;
        for (const Edge& e : a.edges())
            if (!adjacent(b, p[e.u], p[e.v])) {
                ok = false;
                break;
            }
        if (ok) return true;
    } while (std::next_permutation(p.begin(), p.end()));
    return false;
}

inline std::size_t automorphism_count(const Graph& g) {
    std::vector<Vertex> p(g.num_vertices());
    std::iota(p.begin(), p.end(), 0);
    std::size_t c = 0;
    do {
        bool ok = true;
        for (const Edge& e : g.edges())
            if (!adjacent(g, p[e.u], p[e.v])) {
                ok = false;
                break;
            }
        c += ok;
    } while (std::next_permutation(p.begin(), p.end()));
    return c;
}

// Treewidth as the minimum over all elimination orders of the largest
// neighbourhood at elimination time.
inline std::size_t treewidth(const Graph& g) {
    const std::size_t n = g.num_vertices();
    if (n == 0) return 0;
    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::size_t best = n - 1;
    do {
        std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
        for (const Edge& e : g.edges()) adj[e.u][e.v] = adj[e.v][e.u] = true;
        std::vector<bool> gone(n, false);
        std::size_t width = 0;
        for (Vertex v : order) {
            std::vector<Vertex> nb;
            for (Vertex u = 0; u < n; ++u)
                if (!gone[u] && u != v && adj[v][u]) nb.push_back(u);
            width = std::max(width, nb.size());
            for (Vertex x : nb)
                for (Vertex y : nb)
                    if (x != y) adj[x][y] = true;
            gone[v] = true;
        }
        best = std::min(best, width);
    } while (std::next_permutation(order.begin(), order.end()));
    return best;
}

// Number of x in Z_n^cols with A x = b (mod n), by enumeration.
inline std::uint64_t count_mod_solutions(const std::vector<std::vector<long>>& a, const std::vector<long>& b,
                                         std::size_t cols, long n) {
    std::uint64_t count = 0;
    std::vector<long> x(cols, 0);
    while (true) {
        bool ok = true;
        for (std::size_t r = 0; r < a.size() && ok; ++r) {
            long s = 0;
            for (std::size_t c = 0; c < cols; ++c) s += a[r][c] * x[c];
            ok = ((s - b[r]) % n + n) % n == 0;
        }
        count += ok;
        std::size_t i = 0;
        while (i < cols && ++x[i] == n) x[i++] = 0;
        if (i == cols) break;
    }
    return count;
}

} // namespace oracle
