#include <doctest.h>

#include <random>
#include <set>

#include "homlab/combination.hpp"
#include "homlab/dvorak.hpp"
#include "homlab/enumerate.hpp"
#include "homlab/formula.hpp"
#include "homlab/hom.hpp"
#include "homlab/tree_decomposition.hpp"
#include "oracles.hpp"

using namespace homlab;

namespace {

Formula random_formula(std::size_t depth, std::uint32_t vars, std::uint32_t p, std::mt19937_64& rng) {
    auto var = [&] { return static_cast<std::uint32_t>(1 + rng() % vars); };
    const unsigned choice = depth == 0 ? rng() % 3 : 3 + rng() % 5;
    switch (choice) {
    case 0: return f_true();
    case 1: return f_eq(var(), var());
    case 2: return f_edge(var(), var());
    case 3: return f_not(random_formula(depth - 1, vars, p, rng));
    case 4: return f_and(random_formula(depth - 1, vars, p, rng), random_formula(depth - 1, vars, p, rng));
    case 5: return f_or(random_formula(depth - 1, vars, p, rng), random_formula(depth - 1, vars, p, rng));
    default: {
        const auto c = static_cast<std::uint32_t>(rng() % p);
        const auto v = var();
        return f_mod_exists(c, v, random_formula(depth - 1, vars, p, rng));
    }
    }
}

// Direct recursive semantics, no memoisation.
bool naive_eval(Formula phi, const Graph& g, std::vector<Vertex>& a, std::uint32_t p) {
    switch (phi->kind) {
    case FormulaKind::truth: return true;
    case FormulaKind::eq: return a[phi->i] == a[phi->j];
    case FormulaKind::edge: return oracle::adjacent(g, a[phi->i], a[phi->j]);
    case FormulaKind::negation: return !naive_eval(phi->left, g, a, p);
    case FormulaKind::conjunction: return naive_eval(phi->left, g, a, p) && naive_eval(phi->right, g, a, p);
    case FormulaKind::disjunction: return naive_eval(phi->left, g, a, p) || naive_eval(phi->right, g, a, p);
    case FormulaKind::mod_exists: {
        const Vertex saved = a[phi->i];
        std::size_t count = 0;
        for (Vertex v = 0; v < g.num_vertices(); ++v) {
            a[phi->i] = v;
            count += naive_eval(phi->left, g, a, p);
        }
        a[phi->i] = saved;
        return count % p == phi->j;
    }
    }
    return false;
}

std::vector<LabelledGraph> labelled_targets(std::size_t max_n, std::size_t arity) {
    std::vector<LabelledGraph> out;
    for (std::size_t n = 1; n <= max_n; ++n)
        for (const Graph& g : all_graphs(n)) {
            std::vector<Vertex> t(arity, 0);
            while (true) {
                out.push_back({g, t});
                std::size_t i = arity;
                while (i > 0 && ++t[i - 1] == n) t[--i] = 0;
                if (i == 0) break;
            }
        }
    return out;
}

} // namespace

TEST_CASE("formula printing and parsing round trip") {
    std::mt19937_64 rng(1);
    for (int t = 0; t < 200; ++t) {
        Formula phi = random_formula(4, 3, 3, rng);
        CHECK(parse_formula(to_string(phi)) == phi);
    }
    CHECK(parse_formula(" ( x1 = x2 & E(x2,x3) ) ") == f_and(f_eq(1, 2), f_edge(2, 3)));
    CHECK(parse_formula("false") == f_false());
    CHECK(parse_formula("E[2]x1.!E(x1,x2)") == f_mod_exists(2, 1, f_not(f_edge(1, 2))));
    for (const char* bad : {"", "x1", "(x1=x2", "E(x1)", "E[a]x1.true", "x0=x1", "(true&true|true)", "true true"})
        CHECK_THROWS(parse_formula(bad));
}

TEST_CASE("formulas are hash-consed") {
    CHECK(f_and(f_true(), f_eq(1, 2)) == f_and(f_true(), f_eq(1, 2)));
    CHECK(f_edge(1, 2) != f_edge(2, 1));
    Formula phi = f_and(f_edge(1, 2), f_edge(1, 2));
    CHECK(dag_size(phi) == 2);
    CHECK(quantifier_depth(f_mod_exists(1, 1, f_mod_exists(0, 2, f_edge(1, 2)))) == 2);
    CHECK(f_mod_exists(0, 2, f_edge(1, 2))->free_vars == 0b01);
    CHECK(f_and_all({}) == f_true());
    CHECK(f_or_all({}) == f_false());
}

TEST_CASE("formula validation") {
    CHECK_NOTHROW(validate_formula(f_mod_exists(1, 2, f_edge(1, 2)), 2, 2));
    CHECK_THROWS(validate_formula(f_mod_exists(2, 1, f_true()), 2, 2));
    CHECK_THROWS(validate_formula(f_edge(1, 3), 2, 2));
    CHECK_THROWS(validate_formula(f_true(), 2, 4));
}

TEST_CASE("model checking agrees with the naive semantics") {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 150; ++t) {
        const std::uint32_t p = rng() % 2 ? 2 : 3;
        Formula phi = random_formula(3 + rng() % 2, 3, p, rng);
        Graph g = oracle::random_graph(1 + rng() % 5, 0.5, rng);
        std::vector<Vertex> a(4);
        for (auto& x : a) x = static_cast<Vertex>(rng() % g.num_vertices());
        Assignment as{a[1], a[2], a[3]};
        CHECK(model_check(phi, g, as, p) == naive_eval(phi, g, a, p));
    }
    // Both vertices of K2 have a neighbour.
    Formula has_neighbour = f_mod_exists(1, 2, f_edge(1, 2));
    CHECK(model_check(f_mod_exists(0, 1, has_neighbour), LabelledGraph{complete_graph(2), {}}, 2));
    CHECK(model_check(f_mod_exists(2, 1, has_neighbour), LabelledGraph{complete_graph(2), {}}, 3));
    CHECK_THROWS(model_check(f_edge(1, 2), complete_graph(2), Assignment{0}, 2));
}

TEST_CASE("Lagrange indicators") {
    for (std::uint32_t p : {2u, 3u, 5u}) {
        for (std::uint32_t mask = 0; mask < (1u << p); ++mask) {
            std::set<std::uint32_t> x1;
            for (std::uint32_t i = 0; i < p; ++i)
                if (mask >> i & 1) x1.insert(i);
            auto c = lagrange_indicator(x1, p);
            REQUIRE(c.size() == p);
            for (std::uint32_t x = 0; x < p; ++x) {
                std::uint64_t v = 0, pw = 1;
                for (std::uint32_t i = 0; i < p; ++i) {
                    v = (v + c[i] * pw) % p;
                    pw = pw * x % p;
                }
                CHECK(v == (x1.count(x) ? 1u : 0u));
            }
        }
    }
}

TEST_CASE("graph combinations evaluate linearly and multiplicatively") {
    std::mt19937_64 rng(3);
    const std::uint32_t p = 3;
    const std::size_t k = 1;
    auto edge = [] {
        LabelledGraph l{complete_graph(2), {0, 1}};
        return std::pair{l, *twk_decomposition(l, 1)};
    };
    auto path = [] {
        LabelledGraph l{path_graph(3), {1, 2}};
        return std::pair{l, *twk_decomposition(l, 1)};
    };
    GraphCombination a(p, k), b(p, k);
    auto [e, ed] = edge();
    auto [q, qd] = path();
    a.add(1, e, ed);
    a.add(2, q, qd);
    b.add(2, e, ed);
    b.add(2, e, ed);
    CHECK(b.size() == 1);
    CHECK(b.terms()[0]->coefficient == 1);
    for (const auto& g : labelled_targets(3, 2)) {
        const std::uint32_t va = eval_combination(a, g), vb = eval_combination(b, g);
        CHECK(eval_combination(a + b, g) == (va + vb) % p);
        CHECK(eval_combination(a - b, g) == (va + p - vb) % p);
        CHECK(eval_combination(a.scaled(2), g) == 2 * va % p);
        CHECK(eval_combination(a.glue(b), g) == va * vb % p);
        CHECK(eval_combination(GraphCombination::unit(p, k), g) == 1);
    }
    CHECK((a - a).empty());
    CHECK_THROWS(a + GraphCombination(2, k));
}

TEST_CASE("gluing across identified labels drops loop terms") {
    GraphCombination e(2, 1), same(2, 1);
    LabelledGraph edge{complete_graph(2), {0, 1}};
    e.add(1, edge, *twk_decomposition(edge, 1));
    LabelledGraph point{Graph(1), {0, 0}};
    same.add(1, point, *twk_decomposition(point, 1));
    CHECK(e.glue(same).empty());
}

TEST_CASE("graph-to-formula round trip") {
    const auto targets = labelled_targets(4, 2);
    for (std::uint32_t p : {2u, 3u}) {
        for (const Graph& f : {path_graph(3), star_graph(3), path_graph(4)}) {
            LabelledGraph lf{f, {0, 1}};
            auto d = twk_decomposition(lf, 1);
            REQUIRE(d.has_value());
            for (std::uint32_t m = 0; m < p; ++m) {
                Formula phi = graph_to_formula(lf, *d, m, p);
                for (const auto& g : targets)
                    CHECK(model_check(phi, g, p) == (oracle::hom_labelled(lf, g) % p == m));
            }
        }
    }
}

TEST_CASE("formula-to-combination round trip") {
    std::mt19937_64 rng(4);
    for (std::size_t k : {1u, 2u}) {
        const auto targets = labelled_targets(3, k + 1);
        for (int t = 0; t < 20; ++t) {
            const std::uint32_t p = t % 2 ? 3 : 2;
            Formula phi = random_formula(3, static_cast<std::uint32_t>(k + 1), p, rng);
            GraphCombination q = formula_to_combination(phi, p, k);
            for (const auto* term : q.terms()) CHECK(rooted_decomposition_error(term->graph, term->decomposition, k).empty());
            for (const auto& g : targets) CHECK(eval_combination(q, g) == (model_check(phi, g, p) ? 1u : 0u));
        }
    }
}

TEST_CASE("hom sentences count modulo p") {
    for (std::uint32_t p : {2u, 3u})
        for (const Graph& f : {complete_graph(3), path_graph(3), cycle_graph(4)})
            for (std::uint32_t m = 0; m < p; ++m) {
                Formula s = hom_sentence(f, 2, m, p);
                CHECK(s->free_vars == 0);
                for (std::size_t n = 1; n <= 4; ++n)
                    for (const Graph& g : all_graphs(n))
                        CHECK(model_check(s, LabelledGraph{g, {}}, p) == (oracle::hom(f, g) % p == m));
            }
    CHECK_FALSE(label_for_twk(complete_graph(4), 2).has_value());
    CHECK(label_for_twk(complete_graph(4), 3).has_value());
}

TEST_CASE("sentence probe") {
    Graph p3 = path_graph(3), k2 = complete_graph(2);
    auto w = sentence_equivalence_probe(p3, k2, 2, 1, 3);
    REQUIRE(w.has_value());
    CHECK(model_check(w->sentence, LabelledGraph{p3, {}}, 2) != model_check(w->sentence, LabelledGraph{k2, {}}, 2));
    // The reflection of K3 fixes one vertex, so K3 and K1 agree modulo 2.
    CHECK_FALSE(sentence_equivalence_probe(complete_graph(3), Graph(1), 2, 2, 4).has_value());
}
