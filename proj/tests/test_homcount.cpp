#include <doctest.h>

#include <random>

#include "homlab/cfi.hpp"
#include "homlab/enumerate.hpp"
#include "homlab/hom.hpp"
#include "homlab/linear_system.hpp"
#include "homlab/tree_decomposition.hpp"
#include "oracles.hpp"

using namespace homlab;

TEST_CASE("brute-force counts agree with naive enumeration") {
    std::mt19937_64 rng(1);
    for (int t = 0; t < 60; ++t) {
        Graph f = oracle::random_graph(1 + rng() % 5, 0.5, rng);
        Graph g = oracle::random_graph(1 + rng() % 6, 0.5, rng);
        CHECK(hom_count_brute(f, g) == oracle::hom(f, g));
    }
    CHECK(hom_count_brute(Graph(1), Graph(1)) == 1);
    CHECK(hom_count_brute(Graph(0), complete_graph(3)) == 1);
    CHECK(hom_count_brute(Graph(2), Graph(0)) == 0);
    CHECK(hom_count_brute(complete_graph(3), complete_graph(2)) == 0);
    CHECK(hom_count_brute(complete_graph(2), petersen_graph()) == 30);
}

TEST_CASE("cycle counts are traces of adjacency powers") {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 10; ++t) {
        Graph g = oracle::random_graph(3 + rng() % 6, 0.5, rng);
        for (std::size_t k = 3; k <= 7; ++k) CHECK(hom_count_brute(cycle_graph(k), g) == oracle::closed_walks(g, k));
    }
    // Large counts go through the arbitrary-precision path.
    mpz_class big = hom_count_brute(empty_graph(40), complete_graph(30));
    mpz_class want;
    mpz_ui_pow_ui(want.get_mpz_t(), 30, 40);
    CHECK(big == want);
}

TEST_CASE("labelled and restricted counts") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 40; ++t) {
        LabelledGraph f{oracle::random_graph(1 + rng() % 4, 0.5, rng), {}};
        LabelledGraph g{oracle::random_graph(1 + rng() % 5, 0.5, rng), {}};
        const std::size_t arity = rng() % 3;
        for (std::size_t i = 0; i < arity; ++i) {
            f.labels.push_back(static_cast<Vertex>(rng() % f.graph.num_vertices()));
            g.labels.push_back(static_cast<Vertex>(rng() % g.graph.num_vertices()));
        }
        CHECK(hom_count_labelled(f, g) == oracle::hom_labelled(f, g));
    }
}

TEST_CASE("listing homomorphisms") {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 20; ++t) {
        Graph f = oracle::random_graph(1 + rng() % 4, 0.5, rng);
        Graph g = oracle::random_graph(1 + rng() % 4, 0.6, rng);
        auto homs = list_homomorphisms(f, g, 100000);
        CHECK(homs.size() == oracle::hom(f, g));
        CHECK(std::is_sorted(homs.begin(), homs.end()));
        for (const auto& h : homs) CHECK(oracle::is_hom(f, g, h));
    }
    CHECK_THROWS(list_homomorphisms(empty_graph(5), complete_graph(5), 10));
}

TEST_CASE("treewidth dynamic programme agrees with brute force") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 60; ++t) {
        Graph f = oracle::random_graph(1 + rng() % 7, 0.4, rng);
        Graph g = oracle::random_graph(1 + rng() % 5, 0.6, rng);
        // Any valid decomposition works, not only optimal ones.
        TreeDecomposition td = decomposition_from_elimination(f, oracle::random_permutation(f.num_vertices(), rng));
        REQUIRE(is_tree_decomposition(f, td));
        const mpz_class exact = oracle::hom(f, g);
        CHECK(hom_count_tw(f, td, g) == exact);
        for (std::uint32_t m : {2u, 3u, 7u, 65537u}) CHECK(hom_count_tw(f, td, g, m) == exact % m);
    }
}

TEST_CASE("CFI counts split over base homomorphisms") {
    auto z2 = FiniteAbelianGroup::cyclic(2);
    auto z3 = FiniteAbelianGroup::cyclic(3);
    std::mt19937_64 rng(6);
    for (const auto& gamma : {z2, z3}) {
        for (const GroupVector& u : {GroupVector(3, gamma.zero()), GroupVector{{1}, {0}, {0}}}) {
            CfiGraph c(gamma, complete_graph(3), u);
            for (int t = 0; t < 15; ++t) {
                Graph f = oracle::random_graph(1 + rng() % 5, 0.5, rng);
                CfiHomCount hc = hom_count_cfi(f, c);
                CHECK(hc.total == oracle::hom(f, c.graph()));
                CHECK(hc.per_psi.size() == oracle::hom(f, c.base()));
                for (const auto& pc : hc.per_psi) {
                    CHECK(pc.count == hom_count_over_psi(f, c, pc.psi));
                    CHECK(pc.witness.has_value() == (pc.count > 0));
                    if (pc.witness) {
                        CHECK(oracle::is_hom(f, c.graph(), *pc.witness));
                        for (Vertex a = 0; a < f.num_vertices(); ++a) CHECK(c.origin((*pc.witness)[a]) == pc.psi[a]);
                    }
                }
            }
        }
    }
}

TEST_CASE("hom systems have the vertex and edge rows") {
    auto z2 = FiniteAbelianGroup::cyclic(2);
    CfiGraph c(z2, complete_graph(3), GroupVector{{1}, {0}, {0}});
    Graph f = path_graph(2);
    HomSystem sys = hom_system(f, c, {0, 1});
    CHECK(sys.a.rows() == 3);
    CHECK(sys.a.cols() == 4);
    CHECK(sys.rhs[0] == GroupElement{1});
    SolutionCount sc = count_solutions(sys.a, sys.rhs, z2);
    CHECK(sc.count == hom_count_over_psi(f, c, {0, 1}));
}

TEST_CASE("distinguishing patterns") {
    Graph c6 = cycle_graph(6), two_triangles = disjoint_union(cycle_graph(3), cycle_graph(3));
    CHECK_FALSE(find_distinguisher(c6, two_triangles, GraphFamily::treewidth_at_most(1), 7).has_value());
    auto d = find_distinguisher(c6, two_triangles, GraphFamily::all(), 5);
    REQUIRE(d.has_value());
    CHECK(d->f.num_vertices() == 3);
    CHECK(d->hom_g == 0);
    CHECK(d->hom_h == 12);
    for (std::uint32_t n : {2u, 3u})
        CHECK_FALSE(find_distinguisher(Graph(1), empty_graph(n + 1), GraphFamily::all(), 5, n).has_value());
    auto mod2 = find_distinguisher(complete_graph(2), Graph(1), GraphFamily::all(), 3, 2);
    REQUIRE(mod2.has_value());
    CHECK(mod2->f.num_vertices() == 1);
}
