#include <doctest.h>

#include <random>
#include <set>

#include "homlab/enumerate.hpp"
#include "homlab/graph.hpp"
#include "homlab/graph_io.hpp"
#include "homlab/graph_stats.hpp"
#include "homlab/hom.hpp"
#include "homlab/structure.hpp"
#include "homlab/tree_decomposition.hpp"
#include "oracles.hpp"

using namespace homlab;

TEST_CASE("graph construction normalises and rejects bad input") {
    Graph g(3, {{1, 0}, {0, 1}, {2, 1}});
    CHECK(g.num_edges() == 2);
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(1, 0));
    CHECK_FALSE(g.has_edge(0, 2));
    CHECK(g.degree(1) == 2);
    CHECK_THROWS_AS(Graph(3, {{1, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph(3, {{0, 3}}), std::invalid_argument);
    CHECK(Graph(0).num_vertices() == 0);
}

TEST_CASE("named graphs") {
    CHECK(complete_graph(5).num_edges() == 10);
    CHECK(cycle_graph(5).num_edges() == 5);
    CHECK(path_graph(4).num_edges() == 3);
    CHECK(star_graph(3).num_vertices() == 4);
    CHECK(star_graph(3).degree(0) == 3);
    CHECK(complete_bipartite_graph(2, 3).num_edges() == 6);
    Graph p = petersen_graph();
    CHECK(p.num_vertices() == 10);
    CHECK(p.num_edges() == 15);
    for (Vertex v = 0; v < 10; ++v) CHECK(p.degree(v) == 3);
}

TEST_CASE("relabel and induced subgraphs") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 20; ++t) {
        Graph g = oracle::random_graph(6, 0.5, rng);
        auto perm = oracle::random_permutation(6, rng);
        Graph h = g.relabel(perm);
        CHECK(is_isomorphism(g, h, perm));
        CHECK(oracle::isomorphic(g, h));
    }
    Graph k4 = complete_graph(4);
    std::vector<Vertex> keep{0, 2, 3};
    CHECK(k4.induced(keep) == complete_graph(3));
}

TEST_CASE("categorical products multiply homomorphism counts") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 15; ++t) {
        Graph f = oracle::random_graph(1 + rng() % 4, 0.6, rng);
        Graph g = oracle::random_graph(1 + rng() % 3, 0.7, rng);
        Graph h = oracle::random_graph(1 + rng() % 3, 0.7, rng);
        Graph gh = categorical_product(g, h);
        CHECK(gh.num_vertices() == g.num_vertices() * h.num_vertices());
        CHECK(oracle::hom(f, gh) == oracle::hom(f, g) * oracle::hom(f, h));
    }
    CHECK(categorical_power(complete_graph(2), 3).num_vertices() == 8);
    CHECK(categorical_power(complete_graph(3), 1) == complete_graph(3));
}

TEST_CASE("gluing multiplies labelled homomorphism counts") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 25; ++t) {
        const std::size_t arity = 1 + rng() % 2;
        auto random_labelled = [&](std::size_t n) {
            LabelledGraph l{oracle::random_graph(n, 0.5, rng), {}};
            for (std::size_t i = 0; i < arity; ++i) l.labels.push_back(static_cast<Vertex>(rng() % n));
            return l;
        };
        LabelledGraph f = random_labelled(1 + rng() % 4), k = random_labelled(1 + rng() % 4);
        LabelledGraph g = random_labelled(2 + rng() % 3);
        auto glued = try_glue(f, k);
        if (!glued) {
            CHECK_THROWS_AS(glue(f, k), std::domain_error);
            continue;
        }
        CHECK(oracle::hom_labelled(glued->first, g) == oracle::hom_labelled(f, g) * oracle::hom_labelled(k, g));
    }
    LabelledGraph edge{complete_graph(2), {0, 1}};
    CHECK(glue(edge, glue_unit(2)).graph == complete_graph(2));
    CHECK_THROWS_AS(glue(edge, glue_unit(1)), std::invalid_argument);
    LabelledGraph pinched{complete_graph(2), {0, 0}};
    LabelledGraph merge{Graph(1), {0, 0}};
    CHECK_FALSE(try_glue(LabelledGraph{complete_graph(2), {0, 1}}, merge).has_value());
    CHECK(glue(pinched, glue_unit(2)).graph.num_vertices() == 2);
}

TEST_CASE("components and distances") {
    Graph g = disjoint_union(path_graph(3), cycle_graph(3));
    CHECK(connected_components(g).size() == 2);
    CHECK_FALSE(is_connected(g));
    auto d = bfs_distances(g, 0);
    CHECK(d[2] == 2);
    CHECK(d[3] == SIZE_MAX);
}

TEST_CASE("edge list and JSON round trips") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 10; ++t) {
        Graph g = oracle::random_graph(1 + rng() % 7, 0.4, rng);
        CHECK(read_edge_list(write_edge_list(g)).graph == g);
        CHECK(graph_from_json(graph_to_json(g)).graph == g);
    }
    auto doc = read_edge_list("# comment\n3\n\n0 1\n1 2\n");
    CHECK(doc.graph == path_graph(3));
    try {
        read_edge_list("3\n0 1\n2 2\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
    CHECK_THROWS_AS(read_edge_list("2\n0 5\n"), ParseError);
    LabelledGraph l{path_graph(3), {2, 0}};
    auto back = graph_from_json(graph_to_json(l));
    REQUIRE(back.labels.has_value());
    CHECK(*back.labels == l.labels);
}

TEST_CASE("structural statistics") {
    CHECK(girth(petersen_graph()) == 5);
    CHECK(girth(complete_graph(4)) == 3);
    CHECK_FALSE(girth(path_graph(5)).has_value());
    CHECK(is_planar(complete_graph(4)));
    CHECK_FALSE(is_planar(complete_graph(5)));
    CHECK_FALSE(is_planar(complete_bipartite_graph(3, 3)));
    CHECK_FALSE(is_planar(petersen_graph()));
    CHECK(is_planar(complete_bipartite_graph(2, 5)));
    CHECK(vertex_connectivity(complete_graph(4)) == 3);
    CHECK(vertex_connectivity(petersen_graph()) == 3);
    CHECK(vertex_connectivity(cycle_graph(6)) == 2);
    CHECK(vertex_connectivity(path_graph(4)) == 1);
    CHECK(local_vertex_connectivity(cycle_graph(6), 0, 3) == 2);
    auto s = structural_stats(petersen_graph());
    CHECK(s.min_degree == 3);
    CHECK_FALSE(s.is_planar);
}

TEST_CASE("exact treewidth matches an elimination-order oracle") {
    CHECK(treewidth(complete_graph(4)) == 3);
    CHECK(treewidth(cycle_graph(7)) == 2);
    CHECK(treewidth(star_graph(5)) == 1);
    CHECK(treewidth(petersen_graph()) == 4);
    std::mt19937_64 rng(19);
    for (int t = 0; t < 25; ++t) {
        Graph g = oracle::random_graph(1 + rng() % 7, 0.45, rng);
        const std::size_t w = oracle::treewidth(g);
        CHECK(treewidth(g) == w);
        auto td = exact_tree_decomposition(g, w);
        REQUIRE(td.has_value());
        CHECK(is_tree_decomposition(g, *td));
        CHECK(td->width() == w);
        if (w > 0) CHECK_FALSE(exact_tree_decomposition(g, w - 1).has_value());
    }
}

TEST_CASE("tree decomposition validation catches broken decompositions") {
    Graph c4 = cycle_graph(4);
    TreeDecomposition td = decomposition_from_elimination(c4, {0, 1, 2, 3});
    CHECK(is_tree_decomposition(c4, td));
    TreeDecomposition missing = td;
    missing.bags[0].clear();
    CHECK_FALSE(tree_decomposition_error(c4, missing).empty());
}

TEST_CASE("TW^k normalisation") {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 30; ++t) {
        const std::size_t k = 1 + rng() % 2;
        Graph g = oracle::random_graph(2 + rng() % 5, 0.4, rng);
        LabelledGraph l{g, {}};
        std::vector<Vertex> perm = oracle::random_permutation(g.num_vertices(), rng);
        for (std::size_t i = 0; i < std::min(k + 1, g.num_vertices()); ++i) l.labels.push_back(perm[i]);
        while (l.labels.size() < k + 1) l.labels.push_back(l.labels.front());
        auto d = twk_decomposition(l, k);
        // Membership: adding a clique on the labels keeps the width at most k.
        std::vector<Edge> e(g.edges().begin(), g.edges().end());
        for (Vertex a : l.labels)
            for (Vertex b : l.labels)
                if (a != b) e.emplace_back(a, b);
        const bool member = oracle::treewidth(Graph(g.num_vertices(), e)) <= k;
        CHECK(d.has_value() == member);
        if (d) CHECK(rooted_decomposition_error(l, *d, k).empty());
        if (d && std::set<Vertex>(l.labels.begin(), l.labels.end()).size() == l.labels.size())
            CHECK(twk_error(l, *d, k).empty());
    }
}

TEST_CASE("graph enumeration counts") {
    const std::size_t all_counts[] = {1, 2, 4, 11, 34};
    for (std::size_t n = 1; n <= 5; ++n) CHECK(all_graphs(n).size() == all_counts[n - 1]);
    CHECK(connected_graphs(6).size() == 1 + 1 + 2 + 6 + 21 + 112);
    CHECK(connected_graphs(5, GraphFamily::planar()).size() == 1 + 1 + 2 + 6 + 20);
    CHECK(connected_graphs(5, GraphFamily::treewidth_at_most(1)).size() == 1 + 1 + 1 + 2 + 3);
    for (const Graph& g : all_graphs(4))
        for (const Graph& h : all_graphs(4))
            if (!(g == h)) CHECK_FALSE(oracle::isomorphic(g, h));
}

TEST_CASE("graph families parse and print") {
    CHECK(GraphFamily::parse("planar").kind == GraphFamily::Kind::planar);
    CHECK(GraphFamily::parse("tw<=2").k == 2);
    CHECK(GraphFamily::parse("tw3").k == 3);
    CHECK(GraphFamily::parse(GraphFamily::treewidth_at_most(2).to_string()).k == 2);
    CHECK_THROWS(GraphFamily::parse("trees"));
    CHECK(in_family(cycle_graph(5), GraphFamily::treewidth_at_most(2)));
    CHECK_FALSE(in_family(complete_graph(4), GraphFamily::treewidth_at_most(2)));
}

TEST_CASE("canonical representatives are relabelling invariant") {
    std::mt19937_64 rng(29);
    for (int t = 0; t < 20; ++t) {
        Graph g = oracle::random_graph(1 + rng() % 7, 0.5, rng);
        Graph h = g.relabel(oracle::random_permutation(g.num_vertices(), rng));
        CHECK(canonical_representative(g) == canonical_representative(h));
    }
}
