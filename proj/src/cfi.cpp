#include "homlab/cfi.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "homlab/graph_io.hpp"
#include "homlab/refine.hpp"

namespace homlab {

namespace {

std::size_t checked_pow(std::uint64_t base, std::size_t e) {
    std::size_t r = 1;
    for (std::size_t i = 0; i < e; ++i) {
        if (r > (std::size_t{1} << 40) / std::max<std::uint64_t>(base, 1)) throw std::invalid_argument("CFI graph too large");
        r *= base;
    }
    return r;
}

} // namespace

std::size_t cfi_vertex_count(const FiniteAbelianGroup& gamma, const Graph& base) {
    std::size_t total = 0;
    for (Vertex u = 0; u < base.num_vertices(); ++u)
        total += base.degree(u) == 0 ? 1 : checked_pow(gamma.size(), base.degree(u) - 1);
    return total;
}

CfiGraph::CfiGraph(FiniteAbelianGroup gamma, Graph base, GroupVector u_vector)
    : gamma_(std::move(gamma)), base_(std::move(base)), u_(std::move(u_vector)) {
    const std::size_t n = base_.num_vertices();
    if (n == 0) throw std::invalid_argument("CFI base graph is empty");
    if (!is_connected(base_)) throw std::invalid_argument("CFI base graph is not connected");
    if (u_.size() != n) throw std::invalid_argument("U vector does not match the base vertices");
    for (const auto& x : u_)
        if (!gamma_.contains(x)) throw std::invalid_argument("U entry is not a group element");

    const std::uint64_t q = gamma_.size();
    offset_.assign(n + 1, 0);
    for (Vertex u = 0; u < n; ++u) {
        const std::size_t d = base_.degree(u);
        offset_[u] = static_cast<Vertex>(origin_.size());
        if (d == 0) {
            if (gamma_.is_zero(u_[u])) {
                origin_.push_back(u);
                s_.emplace_back();
            }
            continue;
        }
        const std::size_t count = checked_pow(q, d - 1);
        for (std::size_t code = 0; code < count; ++code) {
            GroupVector s(d);
            std::size_t x = code;
            GroupElement acc = gamma_.zero();
            for (std::size_t i = d - 1; i-- > 0;) {
                s[i] = gamma_.decode(x % q);
                x /= q;
            }
            for (std::size_t i = 0; i + 1 < d; ++i) acc = gamma_.add(acc, s[i]);
            s[d - 1] = gamma_.sub(u_[u], acc);
            origin_.push_back(u);
            s_.push_back(std::move(s));
        }
    }
    offset_[n] = static_cast<Vertex>(origin_.size());

    std::vector<Edge> edges;
    for (const Edge& e : base_.edges()) {
        const std::size_t su = slot(e.u, e.v), sv = slot(e.v, e.u);
        std::vector<std::vector<Vertex>> bucket(q);
        for (Vertex y = offset_[e.v]; y < offset_[e.v + 1]; ++y) bucket[gamma_.encode(s_[y][sv])].push_back(y);
        for (Vertex x = offset_[e.u]; x < offset_[e.u + 1]; ++x)
            for (Vertex y : bucket[gamma_.encode(gamma_.neg(s_[x][su]))]) edges.emplace_back(x, y);
    }
    graph_ = Graph(origin_.size(), edges);
}

std::size_t CfiGraph::slot(Vertex u, Vertex v) const {
    auto nb = base_.neighbors(u);
    auto it = std::lower_bound(nb.begin(), nb.end(), v);
    if (it == nb.end() || *it != v) throw std::invalid_argument("not a base edge");
    return static_cast<std::size_t>(it - nb.begin());
}

std::optional<Vertex> CfiGraph::vertex_of(Vertex u, const GroupVector& s) const {
    const std::size_t d = base_.degree(u);
    if (s.size() != d) return std::nullopt;
    if (!(gamma_.sum(s) == u_[u])) return std::nullopt;
    if (d == 0) return size_of(u) ? std::optional<Vertex>(offset_[u]) : std::nullopt;
    std::size_t code = 0;
    for (std::size_t i = 0; i + 1 < d; ++i) code = code * gamma_.size() + gamma_.encode(s[i]);
    return static_cast<Vertex>(offset_[u] + code);
}

nlohmann::json CfiGraph::to_json() const {
    auto j = graph_to_json(graph_);
    nlohmann::json u = nlohmann::json::array(), origin = nlohmann::json::array(), s = nlohmann::json::array();
    for (const auto& x : u_) u.push_back(gamma_.format(x));
    for (Vertex x = 0; x < num_vertices(); ++x) {
        origin.push_back(origin_[x]);
        s.push_back(format_group_vector(gamma_, s_[x]));
    }
    j["gamma"] = gamma_.orders();
    j["base"] = graph_to_json(base_);
    j["U"] = std::move(u);
    j["origin"] = std::move(origin);
    j["S"] = std::move(s);
    return j;
}

CfiGraph build_cfi(const FiniteAbelianGroup& gamma, const Graph& base, const GroupVector& u_vector) {
    CfiGraph g(gamma, base, u_vector);
    if (g.num_vertices() != cfi_vertex_count(gamma, base) && base.num_vertices() > 1)
        throw std::logic_error("CFI vertex count disagrees with the closed form");
    return g;
}

CfiIsomorphism twist_isomorphism(const CfiGraph& cfi, Vertex u, Vertex v, const std::optional<GroupElement>& j_opt) {
    const auto& gamma = cfi.gamma();
    if (u >= cfi.base().num_vertices() || v >= cfi.base().num_vertices() || !cfi.base().has_edge(u, v))
        throw std::invalid_argument("twist needs a base edge");
    const GroupElement j = j_opt ? *j_opt : gamma.one();
    if (!gamma.contains(j)) throw std::invalid_argument("twist amount is not a group element");
    GroupVector u2 = cfi.u_vector();
    u2[u] = gamma.add(u2[u], j);
    u2[v] = gamma.sub(u2[v], j);
    CfiGraph target(gamma, cfi.base(), std::move(u2));
    const std::size_t su = cfi.slot(u, v), sv = cfi.slot(v, u);
    Permutation map(cfi.num_vertices());
    for (Vertex x = 0; x < cfi.num_vertices(); ++x) {
        const Vertex o = cfi.origin(x);
        GroupVector s = cfi.s_vector(x);
        if (o == u) s[su] = gamma.add(s[su], j);
        if (o == v) s[sv] = gamma.sub(s[sv], j);
        map[x] = *target.vertex_of(o, s);
    }
    if (!is_isomorphism(cfi.graph(), target.graph(), map)) throw std::logic_error("twist map is not an isomorphism");
    return {std::move(map), std::move(target)};
}

CfiIsomorphism path_isomorphism(const CfiGraph& cfi, const std::vector<Vertex>& walk, const GroupElement& j) {
    if (walk.empty()) throw std::invalid_argument("empty walk");
    for (std::size_t i = 0; i + 1 < walk.size(); ++i)
        if (walk[i] >= cfi.base().num_vertices() || walk[i + 1] >= cfi.base().num_vertices() ||
            !cfi.base().has_edge(walk[i], walk[i + 1]))
            throw std::invalid_argument("walk uses a non-edge");
    if (walk[0] >= cfi.base().num_vertices()) throw std::invalid_argument("walk leaves the base");
    const GroupElement mj = cfi.gamma().neg(j);
    Permutation map(cfi.num_vertices());
    std::iota(map.begin(), map.end(), Vertex{0});
    CfiGraph cur = cfi;
    for (std::size_t i = 0; i + 1 < walk.size(); ++i) {
        auto t = twist_isomorphism(cur, walk[i], walk[i + 1], mj);
        map = compose(map, t.map);
        cur = std::move(t.target);
    }
    if (!is_isomorphism(cfi.graph(), cur.graph(), map)) throw std::logic_error("path map is not an isomorphism");
    return {std::move(map), std::move(cur)};
}

std::optional<Permutation> cfi_isomorphism(const CfiGraph& a, const CfiGraph& b) {
    const auto& gamma = a.gamma();
    if (!(gamma == b.gamma()) || !(a.base() == b.base())) return std::nullopt;
    if (!(gamma.sum(a.u_vector()) == gamma.sum(b.u_vector()))) return std::nullopt;
    const Graph& base = a.base();
    const std::size_t n = base.num_vertices();
    std::vector<Vertex> parent(n, 0), order{0};
    std::vector<char> seen(n, 0);
    seen[0] = 1;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (Vertex w : base.neighbors(order[i]))
            if (!seen[w]) {
                seen[w] = 1;
                parent[w] = order[i];
                order.push_back(w);
            }
    Permutation map(a.num_vertices());
    std::iota(map.begin(), map.end(), Vertex{0});
    CfiGraph cur = a;
    for (std::size_t i = order.size(); i-- > 1;) {
        const Vertex c = order[i];
        GroupElement delta = gamma.sub(cur.u_vector()[c], b.u_vector()[c]);
        if (gamma.is_zero(delta)) continue;
        auto t = twist_isomorphism(cur, parent[c], c, delta);
        map = compose(map, t.map);
        cur = std::move(t.target);
    }
    if (!(cur.u_vector() == b.u_vector()) || !is_isomorphism(a.graph(), b.graph(), map))
        throw std::logic_error("spanning-tree isomorphism failed");
    return map;
}

bool CfiStructure::preceq(Vertex x, Vertex y) const {
    std::vector<std::size_t> rank(base_order.size());
    for (std::size_t k = 0; k < base_order.size(); ++k) rank[base_order[k]] = k;
    return rank[cfi.origin(x)] <= rank[cfi.origin(y)];
}

CfiStructure build_cfi_star(unsigned i, const OrderedGraph& base, const GroupVector& u_vector) {
    if (i == 0 || i > 20) throw std::invalid_argument("CFI* needs 1 <= i <= 20");
    const auto gamma = FiniteAbelianGroup::cyclic(std::uint64_t{1} << i);
    CfiStructure s{build_cfi(gamma, base.graph, u_vector), base.order, i, {}, {}, {}};
    const CfiGraph& g = s.cfi;
    s.i_rel.resize(gamma.size());
    const std::uint64_t q = gamma.size();
    for (const Edge& e : base.graph.edges()) {
        for (auto [u, v] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
            const std::size_t su = g.slot(u, v);
            auto& nr = s.n_rel[{u, v}];
            auto& cr = s.c_rel[{u, v}];
            for (Vertex x = g.first_of(u); x < g.first_of(u) + g.size_of(u); ++x)
                for (Vertex y = g.first_of(u); y < g.first_of(u) + g.size_of(u); ++y) {
                    const std::uint64_t a = g.s_vector(x)[su][0], b = g.s_vector(y)[su][0];
                    if (a == b) nr.emplace_back(x, y);
                    if ((a + 1) % q == b) cr.emplace_back(x, y);
                }
        }
        const std::size_t su = g.slot(e.u, e.v), sv = g.slot(e.v, e.u);
        for (Vertex x = g.first_of(e.u); x < g.first_of(e.u) + g.size_of(e.u); ++x)
            for (Vertex y = g.first_of(e.v); y < g.first_of(e.v) + g.size_of(e.v); ++y) {
                const std::uint64_t j = (g.s_vector(x)[su][0] + g.s_vector(y)[sv][0]) % q;
                s.i_rel[j].emplace_back(std::min(x, y), std::max(x, y));
            }
    }
    for (auto& r : s.i_rel) std::sort(r.begin(), r.end());
    return s;
}

namespace {

// Relation-id sets per ordered pair, flattened n*n.
std::vector<std::vector<std::uint32_t>> relation_sets(const CfiStructure& s) {
    const std::size_t n = s.cfi.num_vertices();
    std::vector<std::vector<std::uint32_t>> sets(n * n);
    std::uint32_t id = 0;
    for (const auto& [key, pairs] : s.n_rel) {
        for (auto [x, y] : pairs) sets[x * n + y].push_back(id);
        ++id;
    }
    for (const auto& [key, pairs] : s.c_rel) {
        for (auto [x, y] : pairs) sets[x * n + y].push_back(id);
        ++id;
    }
    for (const auto& pairs : s.i_rel) {
        for (auto [x, y] : pairs) {
            sets[x * n + y].push_back(id);
            sets[y * n + x].push_back(id);
        }
        ++id;
    }
    return sets;
}

ColoredDigraph encode(const CfiStructure& s, const std::vector<std::vector<std::uint32_t>>& sets,
                      const std::vector<std::vector<std::uint32_t>>& dict) {
    const std::size_t n = s.cfi.num_vertices();
    ColoredDigraph d(n);
    std::vector<std::size_t> rank(s.base_order.size());
    for (std::size_t k = 0; k < s.base_order.size(); ++k) rank[s.base_order[k]] = k;
    for (Vertex x = 0; x < n; ++x) d.vertex_color[x] = static_cast<std::uint32_t>(rank[s.cfi.origin(x)]);
    for (std::size_t p = 0; p < n * n; ++p)
        if (!sets[p].empty())
            d.arc[p] = static_cast<std::uint32_t>(std::lower_bound(dict.begin(), dict.end(), sets[p]) - dict.begin()) + 1;
    return d;
}

} // namespace

std::pair<ColoredDigraph, ColoredDigraph> to_digraphs(const CfiStructure& a, const CfiStructure& b) {
    if (!(a.cfi.base() == b.cfi.base()) || a.base_order != b.base_order || a.i != b.i)
        throw std::invalid_argument("CFI* structures over different ordered bases");
    auto sa = relation_sets(a), sb = relation_sets(b);
    std::vector<std::vector<std::uint32_t>> dict;
    for (const auto& x : sa)
        if (!x.empty()) dict.push_back(x);
    for (const auto& x : sb)
        if (!x.empty()) dict.push_back(x);
    std::sort(dict.begin(), dict.end());
    dict.erase(std::unique(dict.begin(), dict.end()), dict.end());
    return {encode(a, sa, dict), encode(b, sb, dict)};
}

ColoredDigraph to_digraph(const CfiStructure& s) { return to_digraphs(s, s).first; }

std::optional<Permutation> is_isomorphic(const CfiStructure& a, const CfiStructure& b) {
    if (a.cfi.num_vertices() != b.cfi.num_vertices()) return std::nullopt;
    auto [da, db] = to_digraphs(a, b);
    auto m = find_isomorphism(da, db);
    if (!m) return std::nullopt;
    const Permutation& f = *m;
    auto same = [&](const std::vector<std::pair<Vertex, Vertex>>& ra, const std::vector<std::pair<Vertex, Vertex>>& rb,
                    bool unordered) {
        std::vector<std::pair<Vertex, Vertex>> img;
        for (auto [x, y] : ra) {
            Vertex fx = f[x], fy = f[y];
            if (unordered && fx > fy) std::swap(fx, fy);
            img.emplace_back(fx, fy);
        }
        std::sort(img.begin(), img.end());
        auto sorted = rb;
        std::sort(sorted.begin(), sorted.end());
        return img == sorted;
    };
    bool ok = true;
    for (const auto& [key, r] : a.n_rel) ok = ok && same(r, b.n_rel.at(key), false);
    for (const auto& [key, r] : a.c_rel) ok = ok && same(r, b.c_rel.at(key), false);
    for (std::size_t j = 0; j < a.i_rel.size(); ++j) ok = ok && same(a.i_rel[j], b.i_rel[j], true);
    for (Vertex x = 0; x < a.cfi.num_vertices() && ok; ++x)
        for (Vertex y = 0; y < a.cfi.num_vertices() && ok; ++y) ok = a.preceq(x, y) == b.preceq(f[x], f[y]);
    if (!ok) throw std::logic_error("structure isomorphism failed verification");
    return m;
}

nlohmann::json to_json(const CfiStructure& s) {
    auto j = s.cfi.to_json();
    auto pairs = [](const std::vector<std::pair<Vertex, Vertex>>& r) {
        nlohmann::json a = nlohmann::json::array();
        for (auto [x, y] : r) a.push_back({x, y});
        return a;
    };
    nlohmann::json n = nlohmann::json::array(), c = nlohmann::json::array(), in = nlohmann::json::array();
    for (const auto& [key, r] : s.n_rel) n.push_back({{"u", key.first}, {"v", key.second}, {"pairs", pairs(r)}});
    for (const auto& [key, r] : s.c_rel) c.push_back({{"u", key.first}, {"v", key.second}, {"pairs", pairs(r)}});
    for (const auto& r : s.i_rel) in.push_back(pairs(r));
    j["order"] = s.base_order;
    j["N"] = std::move(n);
    j["C"] = std::move(c);
    j["I"] = std::move(in);
    return j;
}

} // namespace homlab
