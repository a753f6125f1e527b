#include <doctest.h>

#include <random>
#include <set>

#include "homlab/cfi.hpp"
#include "homlab/equiv.hpp"
#include "homlab/graph_stats.hpp"
#include "homlab/nice.hpp"
#include "oracles.hpp"

using namespace homlab;

namespace {

GroupVector random_u(const FiniteAbelianGroup& gamma, std::size_t n, std::mt19937_64& rng) {
    GroupVector u;
    for (std::size_t i = 0; i < n; ++i) u.push_back(gamma.decode(rng() % gamma.size()));
    return u;
}

std::vector<Graph> bases() { return {complete_graph(3), complete_graph(4), path_graph(3), star_graph(3), cycle_graph(4)}; }

std::vector<FiniteAbelianGroup> groups() {
    return {FiniteAbelianGroup::cyclic(2), FiniteAbelianGroup::cyclic(3), FiniteAbelianGroup::cyclic(4),
            FiniteAbelianGroup({2, 2})};
}

} // namespace

TEST_CASE("CFI vertices and edges follow the definition") {
    std::mt19937_64 rng(1);
    for (const Graph& base : bases())
        for (const auto& gamma : groups()) {
            CfiGraph c(gamma, base, random_u(gamma, base.num_vertices(), rng));
            CHECK(c.num_vertices() == cfi_vertex_count(gamma, base));
            std::set<std::pair<Vertex, GroupVector>> seen;
            for (Vertex x = 0; x < c.num_vertices(); ++x) {
                const Vertex u = c.origin(x);
                CHECK(c.s_vector(x).size() == base.degree(u));
                CHECK(gamma.sum(c.s_vector(x)) == c.u_vector()[u]);
                CHECK(seen.insert({u, c.s_vector(x)}).second);
                CHECK(c.vertex_of(u, c.s_vector(x)) == x);
            }
            for (Vertex x = 0; x < c.num_vertices(); ++x)
                for (Vertex y = x + 1; y < c.num_vertices(); ++y) {
                    const Vertex u = c.origin(x), v = c.origin(y);
                    bool expect = base.has_edge(u, v) &&
                                  gamma.is_zero(gamma.add(c.s_vector(x)[c.slot(u, v)], c.s_vector(y)[c.slot(v, u)]));
                    CHECK(c.graph().has_edge(x, y) == expect);
                }
        }
}

TEST_CASE("CFI construction rejects bad input") {
    auto z2 = FiniteAbelianGroup::cyclic(2);
    CHECK_THROWS_AS(CfiGraph(z2, Graph(3, {{0, 1}}), GroupVector(3, z2.zero())), std::invalid_argument);
    CHECK_THROWS_AS(CfiGraph(z2, complete_graph(3), GroupVector(2, z2.zero())), std::invalid_argument);
    CHECK_THROWS_AS(CfiGraph(z2, complete_graph(3), GroupVector{{0}, {0}, {2}}), std::invalid_argument);
    CHECK_THROWS_AS(CfiGraph(z2, Graph(0), {}), std::invalid_argument);
    CfiGraph c(z2, complete_graph(3), GroupVector(3, z2.zero()));
    CHECK_FALSE(c.vertex_of(0, GroupVector{{1}, {0}}).has_value());
}

TEST_CASE("twist isomorphisms move weight along an edge") {
    std::mt19937_64 rng(2);
    for (const Graph& base : bases())
        for (const auto& gamma : groups()) {
            CfiGraph c(gamma, base, random_u(gamma, base.num_vertices(), rng));
            const Edge e = base.edges()[rng() % base.num_edges()];
            const GroupElement j = gamma.decode(rng() % gamma.size());
            CfiIsomorphism iso = twist_isomorphism(c, e.u, e.v, j);
            CHECK(is_isomorphism(c.graph(), iso.target.graph(), iso.map));
            GroupVector want = c.u_vector();
            want[e.u] = gamma.add(want[e.u], j);
            want[e.v] = gamma.sub(want[e.v], j);
            CHECK(iso.target.u_vector() == want);
        }
    auto z2 = FiniteAbelianGroup::cyclic(2);
    CfiGraph p(z2, path_graph(3), GroupVector(3, z2.zero()));
    CHECK_THROWS_AS(twist_isomorphism(p, 0, 2), std::invalid_argument);
    auto def = twist_isomorphism(p, 0, 1);
    CHECK(def.target.u_vector() == GroupVector{{1}, {1}, {0}});
}

TEST_CASE("closed walks give automorphisms") {
    auto z3 = FiniteAbelianGroup::cyclic(3);
    CfiGraph c(z3, complete_graph(3), GroupVector{{1}, {0}, {2}});
    CfiIsomorphism walk = path_isomorphism(c, {0, 1, 2, 0}, {1});
    CHECK(walk.target.u_vector() == c.u_vector());
    CHECK(is_automorphism(c.graph(), walk.map));
    CHECK_FALSE(is_identity(walk.map));
    CfiIsomorphism open = path_isomorphism(c, {0, 1, 2}, {1});
    CHECK(open.target.u_vector() == GroupVector{{0}, {0}, {0}});
    CHECK_THROWS_AS(path_isomorphism(c, {0, 0}, {1}), std::invalid_argument);
}

TEST_CASE("explicit isomorphism exists exactly when the sums agree") {
    std::mt19937_64 rng(3);
    for (const Graph& base : {complete_graph(3), path_graph(3), cycle_graph(4)})
        for (const auto& gamma : groups())
            for (int t = 0; t < 6; ++t) {
                CfiGraph a(gamma, base, random_u(gamma, base.num_vertices(), rng));
                CfiGraph b(gamma, base, random_u(gamma, base.num_vertices(), rng));
                const bool same = gamma.sum(a.u_vector()) == gamma.sum(b.u_vector());
                auto map = cfi_isomorphism(a, b);
                CHECK(map.has_value() == same);
                if (map) CHECK(is_isomorphism(a.graph(), b.graph(), *map));
            }
}

TEST_CASE("twisted and untwisted CFI graphs over cyclic groups") {
    auto z2 = FiniteAbelianGroup::cyclic(2);
    CfiGraph zero(z2, complete_graph(3), GroupVector(3, z2.zero()));
    CfiGraph one(z2, complete_graph(3), GroupVector{{1}, {0}, {0}});
    CHECK(zero.num_vertices() == 6);
    CHECK_FALSE(oracle::isomorphic(zero.graph(), one.graph()));
    CHECK_FALSE(is_isomorphic(zero.graph(), one.graph()).has_value());
    // Negation maps CFI[U] onto CFI[-U].
    auto z4 = FiniteAbelianGroup::cyclic(4);
    CfiGraph s1(z4, complete_graph(3), GroupVector{{1}, {0}, {0}});
    CfiGraph s3(z4, complete_graph(3), GroupVector{{3}, {0}, {0}});
    CHECK(is_isomorphic(s1.graph(), s3.graph()).has_value());
}

TEST_CASE("CFI* structures keep the sum") {
    OrderedGraph base(complete_graph(3));
    auto st = [&](std::uint64_t a, std::uint64_t b, std::uint64_t c) {
        return build_cfi_star(2, base, GroupVector{{a}, {b}, {c}});
    };
    CfiStructure s1 = st(1, 0, 0), s1b = st(0, 2, 3), s3 = st(3, 0, 0);
    CHECK(is_isomorphic(s1, s1b).has_value());
    CHECK_FALSE(is_isomorphic(s1, s3).has_value());
    CHECK(is_isomorphic(s1.cfi.graph(), s3.cfi.graph()).has_value());
    // I_0 is the edge relation.
    std::set<std::pair<Vertex, Vertex>> edges;
    for (const Edge& e : s1.cfi.graph().edges()) edges.insert({e.u, e.v});
    CHECK(std::set<std::pair<Vertex, Vertex>>(s1.i_rel[0].begin(), s1.i_rel[0].end()) == edges);
    for (Vertex x = 0; x < s1.cfi.num_vertices(); ++x)
        for (Vertex y = 0; y < s1.cfi.num_vertices(); ++y)
            CHECK(s1.preceq(x, y) == (s1.cfi.origin(x) <= s1.cfi.origin(y)));
    for (const auto& [key, pairs] : s1.c_rel) CHECK(pairs.size() == s1.cfi.size_of(key.first));
    CHECK_THROWS_AS(build_cfi_star(0, base, GroupVector(3, {0})), std::invalid_argument);
    auto json = to_json(s1);
    CHECK(json["I"].size() == 4);
}

TEST_CASE("nice planar witness") {
    NiceWitness w = build_nice_planar(1);
    CHECK(w.graph.num_vertices() == nice_planar_vertex_count(1));
    CHECK(nice_planar_vertex_count(1) == 11);
    CHECK(is_planar(w.graph));
    CHECK(check_nice(w.graph, w.witness_vertex, {1, 2, 2, 1}).status == NiceStatus::nice);
    CHECK(nice_planar_vertex_count(2) == build_nice_planar(2).graph.num_vertices());
    NiceVerdict bad = check_nice(complete_graph(4), 0, {1, 2, 4, 1});
    CHECK(bad.status == NiceStatus::not_nice);
    CHECK(bad.failed_condition == 2);
    CHECK(check_nice(complete_graph(4), 0, {1, 2, 2, 1}).status == NiceStatus::nice);
    CHECK(check_nice(path_graph(5), 0, {1, 2, 2, 1}).failed_condition == 1);
    CHECK(shortest_cycle_through(complete_graph(4), 0) == 3);
    CHECK_FALSE(shortest_cycle_through(path_graph(4), 1).has_value());
}
