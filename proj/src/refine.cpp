#include "homlab/refine.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "homlab/caps.hpp"

namespace homlab {

namespace {

using Signature = std::vector<std::uint64_t>;

constexpr std::uint64_t kField = 1u << 21;

std::uint64_t pack(std::uint64_t out, std::uint64_t in, std::uint64_t color) {
    if (out >= kField || in >= kField || color >= kField) throw std::invalid_argument("colour id too large");
    return (out << 42) | (in << 21) | color;
}

std::size_t count_distinct(const std::vector<Coloring>& colors) {
    std::vector<std::uint32_t> all;
    for (const auto& c : colors) all.insert(all.end(), c.begin(), c.end());
    std::sort(all.begin(), all.end());
    return static_cast<std::size_t>(std::unique(all.begin(), all.end()) - all.begin());
}

// Replaces colour values by their rank among all values present.
void compress(std::vector<Coloring>& colors) {
    std::vector<std::uint32_t> all;
    for (const auto& c : colors) all.insert(all.end(), c.begin(), c.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    for (auto& c : colors)
        for (auto& x : c) x = static_cast<std::uint32_t>(std::lower_bound(all.begin(), all.end(), x) - all.begin());
}

// Smallest colour occurring more than once, or nullopt.
std::optional<std::uint32_t> target_cell(const Coloring& c) {
    std::vector<std::uint32_t> count(c.size() + 1, 0);
    for (auto x : c) {
        if (x >= count.size()) count.resize(x + 1, 0);
        ++count[x];
    }
    for (std::uint32_t x = 0; x < count.size(); ++x)
        if (count[x] > 1) return x;
    return std::nullopt;
}

std::uint32_t fresh_color(const Coloring& a, const Coloring& b) {
    std::uint32_t m = 0;
    for (auto x : a) m = std::max(m, x + 1);
    for (auto x : b) m = std::max(m, x + 1);
    return m;
}

bool same_histogram(const Coloring& a, const Coloring& b) {
    if (a.size() != b.size()) return false;
    Coloring x = a, y = b;
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    return x == y;
}

Permutation leaf_map(const Coloring& ca, const Coloring& cb) {
    std::vector<Vertex> by_color(cb.size());
    for (Vertex w = 0; w < cb.size(); ++w) by_color[cb[w]] = w;
    Permutation m(ca.size());
    for (Vertex v = 0; v < ca.size(); ++v) m[v] = by_color[ca[v]];
    return m;
}

struct PairSearch {
    const ColoredDigraph& a;
    const ColoredDigraph& b;
    std::vector<std::uint32_t> twins_b;
    bool collect_all = false;
    std::size_t limit = 0;
    std::vector<Permutation> found;

    PairSearch(const ColoredDigraph& a_, const ColoredDigraph& b_, std::vector<std::uint32_t> twins)
        : a(a_), b(b_), twins_b(std::move(twins)) {}

    bool run(Coloring ca, Coloring cb) {
        auto refined = refine_jointly({&a, &b}, {std::move(ca), std::move(cb)});
        Coloring& ra = refined[0];
        Coloring& rb = refined[1];
        if (!same_histogram(ra, rb)) return false;
        auto cell = target_cell(ra);
        if (!cell) {
            Permutation m = leaf_map(ra, rb);
            if (!is_isomorphism(a, b, m)) return false;
            found.push_back(std::move(m));
            if (found.size() > limit && collect_all)
                throw CapExceeded("aut_list", found.size(), limit);
            return !collect_all;
        }
        Vertex v = 0;
        while (ra[v] != *cell) ++v;
        const std::uint32_t fresh = fresh_color(ra, rb);
        std::vector<std::uint32_t> tried_classes;
        for (Vertex w = 0; w < b.n; ++w) {
            if (rb[w] != *cell) continue;
            if (!collect_all) {
                if (std::find(tried_classes.begin(), tried_classes.end(), twins_b[w]) != tried_classes.end()) continue;
                tried_classes.push_back(twins_b[w]);
            }
            Coloring na = ra, nb = rb;
            na[v] = fresh;
            nb[w] = fresh;
            if (run(std::move(na), std::move(nb))) return true;
        }
        return false;
    }
};

} // namespace

std::vector<Coloring> refine_jointly(const std::vector<const ColoredDigraph*>& graphs, std::vector<Coloring> colors) {
    if (graphs.size() != colors.size()) throw std::invalid_argument("refine_jointly: size mismatch");
    compress(colors);
    std::size_t classes = count_distinct(colors);
    std::vector<Signature> sigs;
    while (true) {
        sigs.clear();
        for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
            const ColoredDigraph& g = *graphs[gi];
            const Coloring& c = colors[gi];
            for (Vertex v = 0; v < g.n; ++v) {
                Signature s{c[v], g.at(v, v)};
                for (Vertex w = 0; w < g.n; ++w) {
                    if (w == v) continue;
                    std::uint32_t out = g.at(v, w), in = g.at(w, v);
                    if (out || in) s.push_back(pack(out, in, c[w]));
                }
                std::sort(s.begin() + 2, s.end());
                sigs.push_back(std::move(s));
            }
        }
        std::vector<std::size_t> idx(sigs.size());
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        std::sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return sigs[x] < sigs[y]; });
        std::vector<std::uint32_t> id(sigs.size());
        std::uint32_t next = 0;
        for (std::size_t i = 0; i < idx.size(); ++i) {
            if (i > 0 && sigs[idx[i]] != sigs[idx[i - 1]]) ++next;
            id[idx[i]] = next;
        }
        std::size_t pos = 0;
        for (std::size_t gi = 0; gi < graphs.size(); ++gi)
            for (auto& x : colors[gi]) x = id[pos++];
        std::size_t now = sigs.empty() ? 0 : next + 1;
        if (now == classes) break;
        classes = now;
    }
    return colors;
}

Coloring refine(const ColoredDigraph& g, Coloring colors) {
    return std::move(refine_jointly({&g}, {std::move(colors)})[0]);
}

Coloring refine(const ColoredDigraph& g) { return refine(g, g.vertex_color); }

std::vector<std::uint32_t> twin_classes(const ColoredDigraph& g) {
    const std::size_t n = g.n;
    std::vector<std::uint32_t> cls(n);
    std::iota(cls.begin(), cls.end(), 0u);
    auto swappable = [&](Vertex u, Vertex v) {
        if (g.vertex_color[u] != g.vertex_color[v] || g.at(u, u) != g.at(v, v) || g.at(u, v) != g.at(v, u))
            return false;
        for (Vertex w = 0; w < n; ++w) {
            if (w == u || w == v) continue;
            if (g.at(u, w) != g.at(v, w) || g.at(w, u) != g.at(w, v)) return false;
        }
        return true;
    };
    for (Vertex v = 0; v < n; ++v) {
        if (cls[v] != v) continue;
        for (Vertex w = v + 1; w < n; ++w)
            if (cls[w] == w && swappable(v, w)) cls[w] = v;
    }
    return cls;
}

std::optional<Permutation> find_isomorphism(const ColoredDigraph& a, const Coloring& ca, const ColoredDigraph& b,
                                            const Coloring& cb) {
    if (a.n != b.n) return std::nullopt;
    if (a.n > caps().iso_vertices) throw CapExceeded("iso_vertices", a.n, caps().iso_vertices);
    // Initial colours combine the digraph's own colours with the extra ones.
    std::vector<Coloring> init{Coloring(a.n), Coloring(b.n)};
    {
        std::vector<std::pair<std::uint32_t, std::uint32_t>> keys;
        for (Vertex v = 0; v < a.n; ++v) keys.emplace_back(a.vertex_color[v], ca[v]);
        for (Vertex v = 0; v < b.n; ++v) keys.emplace_back(b.vertex_color[v], cb[v]);
        auto sorted = keys;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        for (Vertex v = 0; v < a.n + b.n; ++v) {
            auto id = static_cast<std::uint32_t>(std::lower_bound(sorted.begin(), sorted.end(), keys[v]) - sorted.begin());
            (v < a.n ? init[0][v] : init[1][v - a.n]) = id;
        }
    }
    PairSearch s(a, b, twin_classes(b));
    if (!s.run(std::move(init[0]), std::move(init[1]))) return std::nullopt;
    return std::move(s.found.front());
}

std::optional<Permutation> find_isomorphism(const ColoredDigraph& a, const ColoredDigraph& b) {
    return find_isomorphism(a, Coloring(a.n, 0), b, Coloring(b.n, 0));
}

std::vector<Permutation> all_isomorphisms(const ColoredDigraph& a, const ColoredDigraph& b, std::size_t limit) {
    if (a.n != b.n) return {};
    PairSearch s(a, b, twin_classes(b));
    s.collect_all = true;
    s.limit = limit;
    s.run(a.vertex_color, b.vertex_color);
    return std::move(s.found);
}

AutomorphismGroup automorphism_group(const ColoredDigraph& g) {
    if (g.n > caps().iso_vertices) throw CapExceeded("iso_vertices", g.n, caps().iso_vertices);
    AutomorphismGroup grp;
    const auto twins = twin_classes(g);
    Coloring c = refine(g);
    while (auto cell = target_cell(c)) {
        Vertex v = 0;
        while (c[v] != *cell) ++v;
        grp.base.push_back(v);
        const std::uint32_t fresh = fresh_color(c, c);
        Coloring cv = c;
        cv[v] = fresh;
        std::vector<char> in_orbit(g.n, 0);
        in_orbit[v] = 1;
        std::vector<Permutation> level;
        auto close_orbit = [&]() {
            bool grew = true;
            while (grew) {
                grew = false;
                for (const auto& p : level)
                    for (Vertex x = 0; x < g.n; ++x)
                        if (in_orbit[x] && !in_orbit[p[x]]) in_orbit[p[x]] = grew = true;
            }
        };
        for (Vertex w = 0; w < g.n; ++w) {
            if (c[w] != *cell || in_orbit[w]) continue;
            Coloring cw = c;
            cw[w] = fresh;
            PairSearch s(g, g, twins);
            if (s.run(cv, cw)) {
                level.push_back(s.found.front());
                in_orbit[w] = 1;
                close_orbit();
            }
        }
        std::size_t orbit = static_cast<std::size_t>(std::count(in_orbit.begin(), in_orbit.end(), 1));
        grp.order *= static_cast<unsigned long>(orbit);
        for (auto& p : level) grp.generators.push_back(std::move(p));
        c = refine(g, std::move(cv));
    }
    return grp;
}

CanonicalForm canonical_form(const ColoredDigraph& g) {
    const auto twins = twin_classes(g);
    const std::size_t leaf_cap = caps().aut_list;
    std::size_t leaves = 0;
    CanonicalForm best;
    bool have = false;
    std::vector<std::uint32_t> cert;

    auto certificate = [&](const Permutation& lab) {
        Permutation inv = inverse(lab);
        cert.assign(1, static_cast<std::uint32_t>(g.n));
        for (Vertex i = 0; i < g.n; ++i) cert.push_back(g.vertex_color[inv[i]]);
        for (Vertex i = 0; i < g.n; ++i)
            for (Vertex j = 0; j < g.n; ++j) cert.push_back(g.at(inv[i], inv[j]));
    };

    auto rec = [&](auto& self, Coloring c) -> void {
        c = refine(g, std::move(c));
        auto cell = target_cell(c);
        if (!cell) {
            if (++leaves > leaf_cap) throw CapExceeded("aut_list", leaves, leaf_cap);
            Permutation lab(c.begin(), c.end());
            certificate(lab);
            if (!have || cert < best.certificate) {
                best.certificate = cert;
                best.labeling = std::move(lab);
                have = true;
            }
            return;
        }
        const std::uint32_t fresh = fresh_color(c, c);
        std::vector<std::uint32_t> tried;
        for (Vertex w = 0; w < g.n; ++w) {
            if (c[w] != *cell) continue;
            if (std::find(tried.begin(), tried.end(), twins[w]) != tried.end()) continue;
            tried.push_back(twins[w]);
            Coloring nc = c;
            nc[w] = fresh;
            self(self, std::move(nc));
        }
    };
    rec(rec, g.vertex_color);
    if (g.n == 0) best.certificate = {0};
    return best;
}

} // namespace homlab
