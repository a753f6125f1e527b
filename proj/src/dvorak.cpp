#include "homlab/dvorak.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <tuple>

#include "homlab/fp_matrix.hpp"
#include "homlab/hom.hpp"

namespace homlab {

namespace {

// All c in F_p^p with sum_i i * c_i = m, for i = 1..p.
std::vector<std::vector<std::uint32_t>> count_vectors(std::uint32_t m, std::uint32_t p) {
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<std::uint32_t> c(p, 0);
    auto rec = [&](auto&& self, std::size_t i, std::uint64_t acc) -> void {
        if (i == p) {
            if (acc % p == m) out.push_back(c);
            return;
        }
        for (std::uint32_t v = 0; v < p; ++v) {
            c[i] = v;
            self(self, i + 1, acc + static_cast<std::uint64_t>(i + 1) * v);
        }
    };
    rec(rec, 0, 0);
    return out;
}

// sum over x_l of the formulas chi[i] (true where the count is i mod p) is m mod p.
Formula counting_sum(const std::vector<Formula>& chi, std::uint32_t l, std::uint32_t m, std::uint32_t p) {
    std::vector<Formula> alternatives;
    for (const auto& c : count_vectors(m, p)) {
        std::vector<Formula> parts;
        for (std::uint32_t i = 1; i <= p; ++i) parts.push_back(f_mod_exists(c[i - 1], l, chi[i % p]));
        alternatives.push_back(f_and_all(parts));
    }
    return f_or_all(alternatives);
}

class GraphToFormula {
public:
    GraphToFormula(const Graph& f, const TreeDecomposition& td, std::uint32_t p) : f_(f), td_(td), p_(p) {}

    // Subtree given by its node set, rooted at r, with labels u.
    Formula build(const std::vector<std::size_t>& nodes, std::size_t r, const std::vector<Vertex>& u, std::uint32_t m) {
        auto key = std::make_tuple(nodes, r, u, m);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        Formula out = compute(nodes, r, u, m);
        memo_.emplace(std::move(key), out);
        return out;
    }

private:
    Formula single_bag(const std::vector<Vertex>& u, std::uint32_t m) {
        std::vector<Formula> parts;
        for (std::uint32_t i = 0; i < u.size(); ++i)
            for (std::uint32_t j = i + 1; j < u.size(); ++j) {
                if (u[i] == u[j]) parts.push_back(f_eq(i + 1, j + 1));
                if (f_.has_edge(u[i], u[j])) parts.push_back(f_edge(i + 1, j + 1));
            }
        Formula one = f_and_all(parts);
        if (m == 1 % p_) return one;
        if (m == 0) return f_not(one);
        return f_false();
    }

    std::vector<std::size_t> in_set(const std::vector<std::size_t>& nodes, std::size_t t) const {
        std::vector<std::size_t> out;
        for (Vertex s : td_.tree.neighbors(static_cast<Vertex>(t)))
            if (std::binary_search(nodes.begin(), nodes.end(), s)) out.push_back(s);
        return out;
    }

    // Nodes reachable from s inside `nodes` without passing through r.
    std::vector<std::size_t> branch(const std::vector<std::size_t>& nodes, std::size_t r, std::size_t s) const {
        std::vector<std::size_t> out{s}, stack{s};
        while (!stack.empty()) {
            std::size_t t = stack.back();
            stack.pop_back();
            for (std::size_t x : in_set(nodes, t))
                if (x != r && std::find(out.begin(), out.end(), x) == out.end()) {
                    out.push_back(x);
                    stack.push_back(x);
                }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    Formula compute(const std::vector<std::size_t>& nodes, std::size_t r, const std::vector<Vertex>& u, std::uint32_t m) {
        if (nodes.size() == 1) return single_bag(u, m);
        auto children = in_set(nodes, r);
        if (children.size() == 1) {
            const std::size_t s = children[0];
            const auto& br = td_.bags[r];
            const auto& bs = td_.bags[s];
            std::vector<Vertex> gone, fresh;
            std::set_difference(br.begin(), br.end(), bs.begin(), bs.end(), std::back_inserter(gone));
            std::set_difference(bs.begin(), bs.end(), br.begin(), br.end(), std::back_inserter(fresh));
            if (gone.size() != 1 || fresh.size() != 1) throw std::invalid_argument("adjacent bags do not share k vertices");
            const auto l = static_cast<std::uint32_t>(std::find(u.begin(), u.end(), gone[0]) - u.begin()) + 1;
            std::vector<Vertex> v = u;
            v[l - 1] = fresh[0];
            std::vector<std::size_t> rest = nodes;
            rest.erase(std::find(rest.begin(), rest.end(), r));
            std::vector<Formula> chi(p_);
            for (std::uint32_t i = 0; i < p_; ++i) chi[i] = build(rest, s, v, i);
            std::vector<Formula> alternatives;
            for (std::uint32_t m1 = 0; m1 < p_; ++m1)
                for (std::uint32_t m2 = 0; m2 < p_; ++m2) {
                    if (static_cast<std::uint64_t>(m1) * m2 % p_ != m) continue;
                    alternatives.push_back(f_and(single_bag(u, m1), counting_sum(chi, l, m2, p_)));
                }
            return f_or_all(alternatives);
        }
        // Several children: one glued factor per branch.
        std::vector<std::vector<std::size_t>> parts;
        for (std::size_t s : children) {
            auto b = branch(nodes, r, s);
            b.insert(std::lower_bound(b.begin(), b.end(), r), r);
            parts.push_back(std::move(b));
        }
        std::vector<Formula> alternatives;
        std::vector<std::uint32_t> ms(parts.size(), 0);
        auto rec = [&](auto&& self, std::size_t j, std::uint64_t prod) -> void {
            if (j == parts.size()) {
                if (prod % p_ != m) return;
                std::vector<Formula> conj;
                for (std::size_t t = 0; t < parts.size(); ++t) conj.push_back(build(parts[t], r, u, ms[t]));
                alternatives.push_back(f_and_all(conj));
                return;
            }
            for (std::uint32_t x = 0; x < p_; ++x) {
                ms[j] = x;
                self(self, j + 1, prod * x % p_);
            }
        };
        rec(rec, 0, 1);
        return f_or_all(alternatives);
    }

    const Graph& f_;
    const TreeDecomposition& td_;
    std::uint32_t p_;
    std::map<std::tuple<std::vector<std::size_t>, std::size_t, std::vector<Vertex>, std::uint32_t>, Formula> memo_;
};

} // namespace

Formula graph_to_formula(const LabelledGraph& f, const TwkDecomposition& d, std::uint32_t m, std::uint32_t p) {
    require_prime(p);
    if (m >= p) throw std::invalid_argument("graph_to_formula: m not reduced mod p");
    if (f.arity() == 0) throw std::invalid_argument("graph_to_formula: no labels");
    const std::size_t k = f.arity() - 1;
    std::string err = twk_error(f, d, k);
    if (!err.empty()) throw std::invalid_argument("graph_to_formula: " + err);
    std::vector<std::size_t> nodes(d.td.bags.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) nodes[i] = i;
    return GraphToFormula(f.graph, d.td, p).build(nodes, d.root, f.labels, m);
}

std::optional<std::pair<LabelledGraph, TwkDecomposition>> label_for_twk(const Graph& f, std::size_t k) {
    const std::size_t n = f.num_vertices();
    if (n == 0) return std::nullopt;
    if (n <= k + 1) {
        LabelledGraph g{f, {}};
        for (std::size_t i = 0; i <= k; ++i) g.labels.push_back(static_cast<Vertex>(std::min(i, n - 1)));
        auto d = twk_decomposition(g, k);
        if (!d) return std::nullopt;
        return std::make_pair(std::move(g), std::move(*d));
    }
    auto td = exact_tree_decomposition(f, k);
    if (!td) return std::nullopt;
    // Grow small bags from their neighbours (or absorb contained
    // neighbours) until every bag has k+1 vertices.
    std::vector<std::vector<Vertex>> bags = td->bags;
    std::vector<std::vector<std::size_t>> adj(bags.size());
    for (const Edge& e : td->tree.edges()) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    std::vector<char> alive(bags.size(), 1);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t b = 0; b < bags.size(); ++b) {
            if (!alive[b] || bags[b].size() >= k + 1) continue;
            for (std::size_t c : adj[b]) {
                std::vector<Vertex> extra;
                std::set_difference(bags[c].begin(), bags[c].end(), bags[b].begin(), bags[b].end(),
                                    std::back_inserter(extra));
                if (extra.empty()) {
                    // bag c is inside bag b: contract c into b.
                    for (std::size_t x : adj[c])
                        if (x != b) {
                            std::replace(adj[x].begin(), adj[x].end(), c, b);
                            adj[b].push_back(x);
                        }
                    adj[b].erase(std::remove(adj[b].begin(), adj[b].end(), c), adj[b].end());
                    adj[c].clear();
                    alive[c] = 0;
                } else {
                    bags[b].insert(std::lower_bound(bags[b].begin(), bags[b].end(), extra[0]), extra[0]);
                }
                changed = true;
                break;
            }
        }
    }
    std::vector<std::size_t> id(bags.size(), 0);
    std::vector<std::vector<Vertex>> out_bags;
    for (std::size_t b = 0; b < bags.size(); ++b)
        if (alive[b]) {
            id[b] = out_bags.size();
            out_bags.push_back(bags[b]);
        }
    std::vector<Edge> edges;
    for (std::size_t b = 0; b < bags.size(); ++b)
        if (alive[b])
            for (std::size_t c : adj[b])
                if (b < c) edges.emplace_back(static_cast<Vertex>(id[b]), static_cast<Vertex>(id[c]));
    TreeDecomposition padded{Graph(out_bags.size(), edges), out_bags};
    LabelledGraph g{f, out_bags[0]};
    return std::make_pair(g, normalize_to_twk(g, padded, k));
}

Formula hom_sentence(const Graph& f, std::size_t k, std::uint32_t m, std::uint32_t p) {
    require_prime(p);
    auto labelled = label_for_twk(f, k);
    if (!labelled) throw std::invalid_argument("hom_sentence: pattern has treewidth above k");
    std::vector<Formula> level(p);
    for (std::uint32_t i = 0; i < p; ++i) level[i] = graph_to_formula(labelled->first, labelled->second, i, p);
    // Quantify x_{k+1}, then x_k, ..., then x_1.
    for (std::size_t l = k + 1; l-- > 0;) {
        std::vector<Formula> next(p);
        for (std::uint32_t i = 0; i < p; ++i) next[i] = counting_sum(level, static_cast<std::uint32_t>(l + 1), i, p);
        level = std::move(next);
    }
    return level[m % p];
}

std::optional<SentenceWitness> sentence_equivalence_probe(const Graph& g, const Graph& h, std::uint32_t p,
                                                          std::size_t k, std::size_t budget) {
    require_prime(p);
    auto found = find_distinguisher(g, h, GraphFamily::treewidth_at_most(k), budget, p);
    if (!found) return std::nullopt;
    mpz_class r = found->hom_g % p;
    SentenceWitness w{found->f, static_cast<std::uint32_t>(r.get_ui()), nullptr};
    w.sentence = hom_sentence(w.pattern, k, w.residue, p);
    if (!model_check(w.sentence, g, {}, p) || model_check(w.sentence, h, {}, p))
        throw std::logic_error("sentence_equivalence_probe: constructed sentence does not separate the graphs");
    return w;
}

} // namespace homlab
