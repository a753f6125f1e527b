#include "homlab/combination.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "homlab/caps.hpp"
#include "homlab/fp_matrix.hpp"
#include "homlab/hom.hpp"
#include "homlab/refine.hpp"
#include "homlab/structure.hpp"

namespace homlab {

namespace {

bool labels_distinct(const LabelledGraph& g) {
    std::vector<Vertex> s = g.labels;
    std::sort(s.begin(), s.end());
    return std::adjacent_find(s.begin(), s.end()) == s.end();
}

std::vector<Vertex> sorted_unique(std::vector<Vertex> s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

TwkDecomposition single_bag(const Graph& g) {
    std::vector<Vertex> all(g.num_vertices());
    std::iota(all.begin(), all.end(), Vertex{0});
    return {{Graph(1), {all}}, 0};
}

// Decomposition of a glued graph: the two trees joined at their roots.
TwkDecomposition glue_decompositions(const TwkDecomposition& a, const TwkDecomposition& b, const GlueMaps& maps) {
    const std::size_t ta = a.td.bags.size(), tb = b.td.bags.size();
    std::vector<Vertex> node_b(tb);
    Vertex next = static_cast<Vertex>(ta);
    for (std::size_t i = 0; i < tb; ++i) node_b[i] = i == b.root ? static_cast<Vertex>(a.root) : next++;
    std::vector<std::vector<Vertex>> bags(next);
    for (std::size_t i = 0; i < ta; ++i)
        for (Vertex v : a.td.bags[i]) bags[i].push_back(maps.left[v]);
    for (std::size_t i = 0; i < tb; ++i)
        for (Vertex v : b.td.bags[i]) bags[node_b[i]].push_back(maps.right[v]);
    for (auto& bag : bags) bag = sorted_unique(std::move(bag));
    std::vector<Edge> edges(a.td.tree.edges().begin(), a.td.tree.edges().end());
    for (const Edge& e : b.td.tree.edges()) edges.emplace_back(node_b[e.u], node_b[e.v]);
    return {{Graph(next, edges), std::move(bags)}, a.root};
}

std::vector<std::uint32_t> term_key(const LabelledGraph& g) {
    return canonical_form(to_digraph(g)).certificate;
}

} // namespace

GraphCombination::GraphCombination(std::uint32_t p, std::size_t k) : p_(p), k_(k) {
    require_prime(p);
    if (k + 1 >= 31) throw std::invalid_argument("label arity too large");
}

GraphCombination GraphCombination::unit(std::uint32_t p, std::size_t k) {
    GraphCombination c(p, k);
    LabelledGraph i = glue_unit(k + 1);
    TwkDecomposition d = single_bag(i.graph);
    c.add(1, std::move(i), std::move(d));
    return c;
}

std::vector<const CombinationTerm*> GraphCombination::terms() const {
    std::vector<const CombinationTerm*> out;
    for (const auto& [key, t] : terms_) out.push_back(&t);
    return out;
}

void GraphCombination::add(std::uint32_t coefficient, LabelledGraph graph, TwkDecomposition decomposition) {
    coefficient %= p_;
    if (coefficient == 0) return;
    if (graph.arity() != k_ + 1) throw std::invalid_argument("term arity differs from k+1");
    if (labels_distinct(graph) && !twk_error(graph, decomposition, k_).empty()) {
        // Distinct labels can always be brought back into TW^k shape.
        if (!rooted_decomposition_error(graph, decomposition, k_).empty())
            throw std::logic_error("term decomposition is invalid: " +
                                   rooted_decomposition_error(graph, decomposition, k_));
        decomposition = normalize_to_twk(graph, decomposition.td, k_);
    }
    std::string err = labels_distinct(graph) ? twk_error(graph, decomposition, k_)
                                             : rooted_decomposition_error(graph, decomposition, k_);
    if (!err.empty()) throw std::logic_error("term decomposition is invalid: " + err);
    auto key = term_key(graph);
    auto it = terms_.find(key);
    if (it != terms_.end()) {
        it->second.coefficient = (it->second.coefficient + coefficient) % p_;
        if (it->second.coefficient == 0) terms_.erase(it);
        return;
    }
    if (terms_.size() >= caps().combination_terms)
        throw CapExceeded("combination_terms", terms_.size() + 1, caps().combination_terms);
    terms_.emplace(std::move(key), CombinationTerm{coefficient, std::move(graph), std::move(decomposition)});
}

void GraphCombination::check_compatible(const GraphCombination& o) const {
    if (p_ != o.p_ || k_ != o.k_) throw std::invalid_argument("combinations over different p or k");
}

GraphCombination GraphCombination::operator+(const GraphCombination& o) const {
    check_compatible(o);
    GraphCombination r = *this;
    for (const auto& [key, t] : o.terms_) r.add(t.coefficient, t.graph, t.decomposition);
    return r;
}

GraphCombination GraphCombination::scaled(std::uint32_t c) const {
    GraphCombination r(p_, k_);
    for (const auto& [key, t] : terms_) {
        std::uint32_t a = static_cast<std::uint32_t>(static_cast<std::uint64_t>(t.coefficient) * (c % p_) % p_);
        if (a != 0) r.terms_.emplace(key, CombinationTerm{a, t.graph, t.decomposition});
    }
    return r;
}

GraphCombination GraphCombination::operator-(const GraphCombination& o) const { return *this + o.scaled(p_ - 1); }

GraphCombination GraphCombination::glue(const GraphCombination& o) const {
    check_compatible(o);
    GraphCombination r(p_, k_);
    for (const auto& [ka, a] : terms_)
        for (const auto& [kb, b] : o.terms_) {
            auto glued = try_glue(a.graph, b.graph);
            if (!glued) continue;
            TwkDecomposition d = glue_decompositions(a.decomposition, b.decomposition, glued->second);
            std::uint32_t c = static_cast<std::uint32_t>(static_cast<std::uint64_t>(a.coefficient) * b.coefficient % p_);
            r.add(c, std::move(glued->first), std::move(d));
        }
    return r;
}

std::uint32_t eval_combination(const GraphCombination& q, const LabelledGraph& g) {
    if (g.arity() != q.k() + 1) throw std::invalid_argument("eval_combination: label arity mismatch");
    std::uint64_t acc = 0;
    for (const CombinationTerm* t : q.terms()) {
        mpz_class h = hom_count_labelled(t->graph, g) % q.p();
        acc = (acc + static_cast<std::uint64_t>(t->coefficient) * h.get_ui()) % q.p();
    }
    return static_cast<std::uint32_t>(acc);
}

std::vector<std::uint32_t> lagrange_indicator(const std::set<std::uint32_t>& x1, std::uint32_t p) {
    require_prime(p);
    std::vector<std::uint64_t> total(p, 0);
    for (std::uint32_t x : x1) {
        if (x >= p) throw std::invalid_argument("interpolation point not reduced mod p");
        // prod_{y != x} (X - y) / (x - y)
        std::vector<std::uint64_t> poly{1};
        std::uint64_t denom = 1;
        for (std::uint32_t y = 0; y < p; ++y) {
            if (y == x) continue;
            std::vector<std::uint64_t> next(poly.size() + 1, 0);
            for (std::size_t d = 0; d < poly.size(); ++d) {
                next[d + 1] = (next[d + 1] + poly[d]) % p;
                next[d] = (next[d] + poly[d] * (p - y)) % p;
            }
            poly = std::move(next);
            denom = denom * ((x + p - y) % p) % p;
        }
        const std::uint64_t inv = inverse_mod(static_cast<std::uint32_t>(denom), p);
        for (std::size_t d = 0; d < poly.size() && d < p; ++d) total[d] = (total[d] + poly[d] * inv) % p;
    }
    return std::vector<std::uint32_t>(total.begin(), total.end());
}

GraphCombination interpolate(const GraphCombination& q, const std::set<std::uint32_t>& x1) {
    const std::uint32_t p = q.p();
    auto coeff = lagrange_indicator(x1, p);
    GraphCombination r(p, q.k());
    GraphCombination power = GraphCombination::unit(p, q.k());
    std::size_t top = p;
    while (top > 0 && coeff[top - 1] == 0) --top;
    for (std::size_t d = 0; d < top; ++d) {
        if (d > 0) power = power.glue(q);
        if (coeff[d] != 0) r = r + power.scaled(coeff[d]);
    }
    return r;
}

namespace {

class Translator {
public:
    Translator(std::uint32_t p, std::size_t k) : p_(p), k_(k) {}

    GraphCombination run(Formula f) {
        auto it = memo_.find(f->id);
        if (it != memo_.end()) return it->second;
        GraphCombination r = translate(f);
        memo_.emplace(f->id, r);
        return r;
    }

private:
    GraphCombination translate(Formula f) {
        switch (f->kind) {
        case FormulaKind::truth: return GraphCombination::unit(p_, k_);
        case FormulaKind::eq: {
            if (f->i == f->j) return GraphCombination::unit(p_, k_);
            const std::uint32_t a = std::min(f->i, f->j), b = std::max(f->i, f->j);
            // I^{ab}: vertex set [k+1] minus b, label b placed on vertex a.
            LabelledGraph g{Graph(k_), {}};
            for (std::uint32_t t = 1; t <= k_ + 1; ++t)
                g.labels.push_back(t < b ? t - 1 : t == b ? a - 1 : t - 2);
            GraphCombination c(p_, k_);
            TwkDecomposition d = single_bag(g.graph);
            c.add(1, std::move(g), std::move(d));
            return c;
        }
        case FormulaKind::edge: {
            GraphCombination c(p_, k_);
            if (f->i == f->j) return c;
            LabelledGraph g = glue_unit(k_ + 1);
            g.graph = Graph(k_ + 1, std::vector<Edge>{Edge(f->i - 1, f->j - 1)});
            TwkDecomposition d = single_bag(g.graph);
            c.add(1, std::move(g), std::move(d));
            return c;
        }
        case FormulaKind::negation: return GraphCombination::unit(p_, k_) - run(f->left);
        case FormulaKind::conjunction: return run(f->left).glue(run(f->right));
        case FormulaKind::disjunction: {
            GraphCombination a = run(f->left), b = run(f->right);
            return a + b - a.glue(b);
        }
        case FormulaKind::mod_exists: {
            GraphCombination q = augment(run(f->left), f->i);
            return interpolate(q, {f->j % p_});
        }
        }
        throw std::logic_error("unknown formula node");
    }

    // K^i: a fresh vertex x takes over label position l of F^i.
    GraphCombination augment(const GraphCombination& body, std::uint32_t l) {
        GraphCombination q(p_, k_);
        for (const CombinationTerm* t : body.terms()) {
            const Graph& f = t->graph.graph;
            const auto x = static_cast<Vertex>(f.num_vertices());
            LabelledGraph kg{Graph(f.num_vertices() + 1, f.edges()), t->graph.labels};
            kg.labels[l - 1] = x;
            const auto w = sorted_unique(kg.labels);
            const TwkDecomposition& d = t->decomposition;
            TwkDecomposition kd;
            if (d.td.bags.size() >= 2) {
                // New root bag {w} hung below the old root.
                kd = d;
                std::vector<Edge> edges(d.td.tree.edges().begin(), d.td.tree.edges().end());
                const auto s = static_cast<Vertex>(d.td.bags.size());
                edges.emplace_back(static_cast<Vertex>(d.root), s);
                kd.td.tree = Graph(d.td.bags.size() + 1, edges);
                kd.td.bags.push_back(w);
                kd.root = s;
            } else if (kg.graph.num_vertices() <= k_ + 1) {
                std::vector<Vertex> all(kg.graph.num_vertices());
                std::iota(all.begin(), all.end(), Vertex{0});
                if (all == w) {
                    kd = {{Graph(1), {all}}, 0};
                } else {
                    // The old labelled vertex lost its label: keep the whole
                    // vertex set in a child of the label bag.
                    kd = {{Graph(2, {{0, 1}}), {w, all}}, 0};
                }
            } else {
                kd = {{Graph(2, {{0, 1}}), {w, d.td.bags[d.root]}}, 0};
            }
            q.add(t->coefficient, std::move(kg), std::move(kd));
        }
        return q;
    }

    std::uint32_t p_;
    std::size_t k_;
    std::unordered_map<std::uint64_t, GraphCombination> memo_;
};

} // namespace

GraphCombination formula_to_combination(Formula phi, std::uint32_t p, std::size_t k) {
    require_prime(p);
    validate_formula(phi, static_cast<std::uint32_t>(k + 1), p);
    return Translator(p, k).run(phi);
}

} // namespace homlab
