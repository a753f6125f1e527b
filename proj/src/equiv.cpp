#include "homlab/equiv.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>
#include <unordered_map>

#include "homlab/caps.hpp"

namespace homlab {

std::optional<Permutation> is_isomorphic(const ColoredDigraph& g, const ColoredDigraph& h) {
    auto m = find_isomorphism(g, h);
    if (m && !is_isomorphism(g, h, *m)) throw std::logic_error("isomorphism search returned a non-isomorphism");
    return m;
}

std::optional<Permutation> is_isomorphic(const Graph& g, const Graph& h) {
    if (g.num_vertices() != h.num_vertices() || g.num_edges() != h.num_edges()) return std::nullopt;
    auto m = find_isomorphism(to_digraph(g), to_digraph(h));
    if (m && !is_isomorphism(g, h, *m)) throw std::logic_error("isomorphism search returned a non-isomorphism");
    return m;
}

AutomorphismList automorphisms(const ColoredDigraph& g) {
    AutomorphismList out;
    auto grp = automorphism_group(g);
    out.group_order = grp.order;
    if (g.n <= caps().aut_complete_vertices) {
        out.perms = all_isomorphisms(g, g, caps().aut_list);
        std::sort(out.perms.begin(), out.perms.end());
        out.complete = true;
        if (mpz_class(static_cast<unsigned long>(out.perms.size())) != out.group_order)
            throw std::logic_error("automorphism list disagrees with the group order");
    } else {
        out.perms = std::move(grp.generators);
    }
    for (const auto& p : out.perms)
        if (!is_isomorphism(g, g, p)) throw std::logic_error("automorphism search returned a non-automorphism");
    return out;
}

AutomorphismList automorphisms(const Graph& g) { return automorphisms(to_digraph(g)); }

OrderPAutomorphism find_order_p_automorphism(const Graph& g, std::uint32_t p, std::uint64_t seed) {
    OrderPAutomorphism r;
    auto auts = automorphisms(g);
    if (!mpz_divisible_ui_p(auts.group_order.get_mpz_t(), p)) return r;  // Cauchy
    if (auts.complete) {
        for (const auto& s : auts.perms)
            if (permutation_order(s) == p) {
                r.status = SearchStatus::found;
                r.sigma = s;
                return r;  // perms are sorted
            }
        throw std::logic_error("p divides the group order but no element of order p was listed");
    }
    std::mt19937_64 rng(seed);
    const auto& gens = auts.perms;
    std::optional<Permutation> best;
    Permutation cur(g.num_vertices());
    std::iota(cur.begin(), cur.end(), Vertex{0});
    for (int step = 0; step < 4096 && !gens.empty(); ++step) {
        cur = compose(cur, gens[rng() % gens.size()]);
        std::uint64_t ord = permutation_order(cur);
        if (ord % p != 0) continue;
        Permutation s = power(cur, ord / p);
        if (!best || s < *best) best = s;
    }
    if (best) {
        r.status = SearchStatus::found;
        r.sigma = std::move(best);
    } else {
        r.status = SearchStatus::not_found;
    }
    return r;
}

Graph faben_jerrum_reduce(const Graph& g, std::uint32_t p) {
    Graph cur = g;
    while (true) {
        auto s = find_order_p_automorphism(cur, p);
        if (s.status == SearchStatus::none_exists) return cur;
        if (s.status == SearchStatus::not_found)
            throw CapExceeded("aut_complete_vertices", cur.num_vertices(), caps().aut_complete_vertices);
        std::vector<Vertex> fixed;
        for (Vertex v = 0; v < cur.num_vertices(); ++v)
            if ((*s.sigma)[v] == v) fixed.push_back(v);
        cur = cur.induced(fixed);
    }
}

namespace {

struct VecHash {
    std::size_t operator()(const std::vector<std::uint64_t>& v) const noexcept {
        std::uint64_t h = 0x9e3779b97f4a7c15ull ^ v.size();
        for (auto x : v) {
            h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
            h *= 0xff51afd7ed558ccdull;
        }
        return static_cast<std::size_t>(h);
    }
};

std::size_t ipow(std::size_t n, std::size_t k) {
    std::size_t r = 1;
    for (std::size_t i = 0; i < k; ++i) r *= n;
    return r;
}

std::vector<std::size_t> histogram(const std::vector<std::uint32_t>& c, std::size_t classes) {
    std::vector<std::size_t> h(classes, 0);
    for (auto x : c) ++h[x];
    return h;
}

} // namespace

WlResult wl_refine(const Graph& g, const Graph& h, std::size_t k) {
    if (k == 0) throw std::invalid_argument("wl_refine needs k >= 1");
    if (k > 4) throw std::invalid_argument("wl_refine supports k <= 4");
    const Graph* graphs[2] = {&g, &h};
    const std::size_t ng = g.num_vertices(), nh = h.num_vertices();
    const std::size_t tg = ipow(ng, k), th = ipow(nh, k);
    if (tg + th > caps().wl_tuples) throw CapExceeded("wl_tuples", tg + th, caps().wl_tuples);

    WlResult res;
    std::vector<std::uint32_t>* cols[2] = {&res.colors_g, &res.colors_h};
    std::unordered_map<std::vector<std::uint64_t>, std::uint32_t, VecHash> dict;

    // Atomic type of each tuple.
    for (int gi = 0; gi < 2; ++gi) {
        const Graph& G = *graphs[gi];
        const std::size_t n = G.num_vertices();
        std::vector<Vertex> t(k);
        cols[gi]->resize(ipow(n, k));
        for (std::size_t idx = 0; idx < cols[gi]->size(); ++idx) {
            std::size_t x = idx;
            for (std::size_t i = k; i-- > 0;) {
                t[i] = static_cast<Vertex>(x % n);
                x /= n;
            }
            std::vector<std::uint64_t> sig;
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = i + 1; j < k; ++j)
                    sig.push_back((t[i] == t[j] ? 1u : 0u) | (G.has_edge(t[i], t[j]) ? 2u : 0u));
            auto [it, ins] = dict.try_emplace(std::move(sig), static_cast<std::uint32_t>(dict.size()));
            (*cols[gi])[idx] = it->second;
        }
    }
    std::size_t classes = dict.size();
    auto differ = [&]() {
        return tg != th || histogram(res.colors_g, classes) != histogram(res.colors_h, classes);
    };
    if (differ()) {
        res.distinguished = true;
        return res;
    }
    while (true) {
        dict.clear();
        std::vector<std::uint32_t> next[2];
        for (int gi = 0; gi < 2; ++gi) {
            const Graph& G = *graphs[gi];
            const std::size_t n = G.num_vertices();
            const auto& c = *cols[gi];
            next[gi].resize(c.size());
            std::vector<std::size_t> place(k);
            for (std::size_t i = 0; i < k; ++i) place[i] = ipow(n, k - 1 - i);
            std::vector<std::uint64_t> sig, items;
            for (std::size_t idx = 0; idx < c.size(); ++idx) {
                sig.assign(1, c[idx]);
                if (k == 1) {
                    for (Vertex w : G.neighbors(static_cast<Vertex>(idx))) sig.push_back(c[w]);
                    std::sort(sig.begin() + 1, sig.end());
                } else {
                    // Multiset over w of (c(t[1<-w]), ..., c(t[k<-w])).
                    items.clear();
                    std::vector<std::size_t> digit(k);
                    std::size_t x = idx;
                    for (std::size_t i = k; i-- > 0;) {
                        digit[i] = x % n;
                        x /= n;
                    }
                    for (std::size_t w = 0; w < n; ++w)
                        for (std::size_t i = 0; i < k; ++i) {
                            std::size_t j = idx + (w - digit[i]) * place[i];
                            items.push_back(c[j]);
                        }
                    // Sort the k-blocks as units.
                    std::vector<std::size_t> order(n);
                    std::iota(order.begin(), order.end(), std::size_t{0});
                    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                        return std::lexicographical_compare(items.begin() + a * k, items.begin() + (a + 1) * k,
                                                            items.begin() + b * k, items.begin() + (b + 1) * k);
                    });
                    for (std::size_t w : order)
                        sig.insert(sig.end(), items.begin() + w * k, items.begin() + (w + 1) * k);
                }
                auto [it, ins] = dict.try_emplace(sig, static_cast<std::uint32_t>(dict.size()));
                next[gi][idx] = it->second;
            }
        }
        ++res.rounds;
        const std::size_t now = dict.size();
        res.colors_g = std::move(next[0]);
        res.colors_h = std::move(next[1]);
        const std::size_t before = classes;
        classes = now;
        if (differ()) {
            res.distinguished = true;
            return res;
        }
        if (now == before) return res;
    }
}

TupleOrbits tuple_orbits(const ColoredDigraph& s, std::size_t c) {
    TupleOrbits out;
    out.n = s.n;
    out.arity = c;
    const std::size_t total = ipow(s.n, c);
    if (total > caps().orbit_tuples) throw CapExceeded("orbit_tuples", total, caps().orbit_tuples);
    auto grp = automorphism_group(s);
    std::vector<std::size_t> parent(total);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::vector<std::size_t> digit(c);
    for (const auto& gen : grp.generators) {
        if (!is_isomorphism(s, s, gen)) throw std::logic_error("generator is not an automorphism");
        for (std::size_t idx = 0; idx < total; ++idx) {
            std::size_t x = idx, img = 0;
            for (std::size_t i = c; i-- > 0;) {
                digit[i] = x % s.n;
                x /= s.n;
            }
            for (std::size_t i = 0; i < c; ++i) img = img * s.n + gen[digit[i]];
            std::size_t a = find(idx), b = find(img);
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
    }
    out.orbit_of.resize(total);
    std::vector<std::uint32_t> id(total, UINT32_MAX);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t r = find(idx);
        if (id[r] == UINT32_MAX) id[r] = static_cast<std::uint32_t>(out.count++);
        out.orbit_of[idx] = id[r];
    }
    return out;
}

TupleOrbits tuple_orbits(const Graph& g, std::size_t c) { return tuple_orbits(to_digraph(g), c); }

} // namespace homlab
