#include <doctest.h>

#include <random>

#include "homlab/enumerate.hpp"
#include "homlab/equiv.hpp"
#include "homlab/hom.hpp"
#include "homlab/refine.hpp"
#include "oracles.hpp"

using namespace homlab;

TEST_CASE("isomorphism search agrees with permutation enumeration") {
    std::mt19937_64 rng(1);
    for (int t = 0; t < 60; ++t) {
        const std::size_t n = 1 + rng() % 7;
        Graph g = oracle::random_graph(n, 0.5, rng);
        Graph h = t % 2 ? g.relabel(oracle::random_permutation(n, rng)) : oracle::random_graph(n, 0.5, rng);
        auto iso = is_isomorphic(g, h);
        CHECK(iso.has_value() == oracle::isomorphic(g, h));
        if (iso) CHECK(is_isomorphism(g, h, *iso));
    }
    CHECK(is_isomorphic(petersen_graph(), petersen_graph().relabel(std::vector<Vertex>{3, 1, 4, 0, 5, 9, 2, 6, 8, 7})));
    CHECK_FALSE(is_isomorphic(cycle_graph(6), disjoint_union(cycle_graph(3), cycle_graph(3))).has_value());
}

TEST_CASE("automorphism groups") {
    CHECK(automorphisms(petersen_graph()).group_order == 120);
    CHECK(automorphisms(complete_graph(4)).group_order == 24);
    CHECK(automorphisms(cycle_graph(5)).group_order == 10);
    CHECK(automorphisms(complete_graph(12)).group_order == 479001600);
    std::mt19937_64 rng(2);
    for (int t = 0; t < 25; ++t) {
        Graph g = oracle::random_graph(1 + rng() % 7, 0.4, rng);
        AutomorphismList a = automorphisms(g);
        CHECK(a.group_order == oracle::automorphism_count(g));
        CHECK(a.complete);
        CHECK(a.perms.size() == oracle::automorphism_count(g));
        for (const auto& p : a.perms) CHECK(is_automorphism(g, p));
    }
}

TEST_CASE("order-p automorphisms and the fixed-point reduction") {
    auto c5 = find_order_p_automorphism(cycle_graph(5), 5);
    REQUIRE(c5.status == SearchStatus::found);
    CHECK(permutation_order(*c5.sigma) == 5);
    CHECK(find_order_p_automorphism(cycle_graph(5), 3).status == SearchStatus::none_exists);
    for (std::uint32_t p : {2u, 3u, 5u}) CHECK(faben_jerrum_reduce(empty_graph(p + 1), p) == Graph(1));
    CHECK(faben_jerrum_reduce(complete_graph(2), 2).num_vertices() == 0);
    std::mt19937_64 rng(3);
    for (int t = 0; t < 25; ++t) {
        Graph g = oracle::random_graph(1 + rng() % 7, 0.5, rng);
        for (std::uint32_t p : {2u, 3u}) {
            Graph r = faben_jerrum_reduce(g, p);
            CHECK(find_order_p_automorphism(r, p).status == SearchStatus::none_exists);
            for (std::size_t n = 1; n <= 4; ++n)
                for (const Graph& f : all_graphs(n)) CHECK(oracle::hom(f, g) % p == oracle::hom(f, r) % p);
        }
    }
}

TEST_CASE("Weisfeiler-Leman refinement") {
    Graph c6 = cycle_graph(6), tt = disjoint_union(cycle_graph(3), cycle_graph(3));
    CHECK_FALSE(wl_refine(c6, tt, 1).distinguished);
    CHECK(wl_refine(c6, tt, 2).distinguished);
    CHECK(wl_refine(path_graph(4), star_graph(3), 1).distinguished);
    Graph p = petersen_graph();
    WlResult same = wl_refine(p, p.relabel(std::vector<Vertex>{1, 2, 3, 4, 0, 6, 7, 8, 9, 5}), 2);
    CHECK_FALSE(same.distinguished);
    CHECK(same.colors_g.size() == 100);
    // Colours are canonical: isomorphic inputs give the same histograms.
    auto sorted = [](std::vector<std::uint32_t> v) {
        std::sort(v.begin(), v.end());
        return v;
    };
    CHECK(sorted(same.colors_g) == sorted(same.colors_h));
    // 1-WL equivalence implies equal tree homomorphism counts.
    std::mt19937_64 rng(4);
    for (int t = 0; t < 20; ++t) {
        Graph g = oracle::random_graph(6, 0.5, rng), h = oracle::random_graph(6, 0.5, rng);
        if (wl_refine(g, h, 1).distinguished) continue;
        for (const Graph& f : connected_graphs(5, GraphFamily::treewidth_at_most(1)))
            CHECK(hom_count_brute(f, g) == hom_count_brute(f, h));
    }
}

TEST_CASE("tuple orbits") {
    TupleOrbits k3 = tuple_orbits(complete_graph(3), 2);
    CHECK(k3.count == 2);
    CHECK(k3.orbit_of.size() == 9);
    CHECK(tuple_orbits(path_graph(3), 1).count == 2);
    CHECK(tuple_orbits(petersen_graph(), 2).count == 3);
}

TEST_CASE("canonical forms") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 30; ++t) {
        Graph g = oracle::random_graph(1 + rng() % 8, 0.5, rng);
        Graph h = g.relabel(oracle::random_permutation(g.num_vertices(), rng));
        CHECK(canonical_form(to_digraph(g)).certificate == canonical_form(to_digraph(h)).certificate);
        Graph other = oracle::random_graph(g.num_vertices(), 0.5, rng);
        CHECK((canonical_form(to_digraph(g)).certificate == canonical_form(to_digraph(other)).certificate) ==
              oracle::isomorphic(g, other));
    }
}
