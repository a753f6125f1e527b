#include "homlab/tree_decomposition.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <unordered_map>

#include "homlab/caps.hpp"

namespace homlab {

std::size_t TreeDecomposition::width() const {
    std::size_t w = 0;
    for (const auto& b : bags) w = std::max(w, b.size());
    return w == 0 ? 0 : w - 1;
}

std::string tree_decomposition_error(const Graph& f, const TreeDecomposition& td) {
    const std::size_t t = td.tree.num_vertices();
    if (td.bags.size() != t) return "bag count differs from tree size";
    if (t == 0) return f.num_vertices() == 0 ? "" : "empty decomposition of a nonempty graph";
    if (td.tree.num_edges() + 1 != t || !is_connected(td.tree)) return "decomposition tree is not a tree";
    std::vector<std::vector<std::size_t>> where(f.num_vertices());
    for (std::size_t i = 0; i < t; ++i) {
        for (std::size_t j = 0; j < td.bags[i].size(); ++j) {
            Vertex v = td.bags[i][j];
            if (v >= f.num_vertices()) return "bag contains a non-vertex";
            if (j > 0 && td.bags[i][j - 1] >= v) return "bag is not sorted and duplicate-free";
            where[v].push_back(i);
        }
    }
    for (Vertex v = 0; v < f.num_vertices(); ++v)
        if (where[v].empty()) return "vertex " + std::to_string(v) + " is in no bag";
    for (const Edge& e : f.edges()) {
        bool covered = false;
        for (std::size_t i : where[e.u])
            if (std::binary_search(td.bags[i].begin(), td.bags[i].end(), e.v)) covered = true;
        if (!covered) return "edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " is in no bag";
    }
    for (Vertex v = 0; v < f.num_vertices(); ++v) {
        std::vector<Vertex> nodes(where[v].begin(), where[v].end());
        if (!is_connected(td.tree.induced(nodes))) return "bags of vertex " + std::to_string(v) + " are disconnected";
    }
    return "";
}

bool is_tree_decomposition(const Graph& f, const TreeDecomposition& td) { return tree_decomposition_error(f, td).empty(); }

TreeDecomposition decomposition_from_elimination(const Graph& f, const std::vector<Vertex>& order) {
    const std::size_t n = f.num_vertices();
    TreeDecomposition td;
    if (n == 0) return td;
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    for (const Edge& e : f.edges()) adj[e.u][e.v] = adj[e.v][e.u] = 1;
    std::vector<std::size_t> pos(n);
    for (std::size_t i = 0; i < n; ++i) pos[order[i]] = i;
    std::vector<Edge> tree_edges;
    std::vector<std::vector<Vertex>> bags(n);
    std::vector<std::size_t> parent(n, SIZE_MAX);
    for (std::size_t i = 0; i < n; ++i) {
        const Vertex v = order[i];
        std::vector<Vertex> later;
        for (Vertex w = 0; w < n; ++w)
            if (adj[v][w] && pos[w] > i) later.push_back(w);
        for (Vertex a : later)
            for (Vertex b : later)
                if (a != b) adj[a][b] = 1;
        bags[i] = later;
        bags[i].push_back(v);
        std::sort(bags[i].begin(), bags[i].end());
        if (!later.empty()) {
            std::size_t first = n;
            for (Vertex w : later) first = std::min(first, pos[w]);
            parent[i] = first;
        }
    }
    // Roots of separate components hang off the last bag.
    for (std::size_t i = 0; i + 1 < n; ++i)
        tree_edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(parent[i] == SIZE_MAX ? n - 1 : parent[i]));
    td.tree = Graph(n, tree_edges);
    td.bags = std::move(bags);
    return td;
}

namespace {

using Mask = std::uint32_t;

// Vertices outside s reachable from v through vertices of s.
Mask fill_neighbors(const std::vector<Mask>& adj, Mask s, Vertex v) {
    Mask seen = Mask{1} << v, frontier = Mask{1} << v, out = 0;
    while (frontier) {
        Vertex x = static_cast<Vertex>(std::countr_zero(frontier));
        frontier &= frontier - 1;
        Mask nb = adj[x] & ~seen;
        seen |= nb;
        out |= nb & ~s;
        frontier |= nb & s;
    }
    return out;
}

std::vector<Vertex> min_fill_order(const Graph& f) {
    const std::size_t n = f.num_vertices();
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    for (const Edge& e : f.edges()) adj[e.u][e.v] = adj[e.v][e.u] = 1;
    std::vector<char> gone(n, 0);
    std::vector<Vertex> order;
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t best_fill = SIZE_MAX;
        Vertex best = 0;
        for (Vertex v = 0; v < n; ++v) {
            if (gone[v]) continue;
            std::vector<Vertex> nb;
            for (Vertex w = 0; w < n; ++w)
                if (!gone[w] && adj[v][w]) nb.push_back(w);
            std::size_t fill = 0;
            for (std::size_t a = 0; a < nb.size(); ++a)
                for (std::size_t b = a + 1; b < nb.size(); ++b)
                    if (!adj[nb[a]][nb[b]]) ++fill;
            if (fill < best_fill) {
                best_fill = fill;
                best = v;
            }
        }
        for (Vertex a = 0; a < n; ++a)
            for (Vertex b = 0; b < n; ++b)
                if (a != b && !gone[a] && !gone[b] && adj[best][a] && adj[best][b]) adj[a][b] = 1;
        gone[best] = 1;
        order.push_back(best);
    }
    return order;
}

std::size_t order_width(const Graph& f, const std::vector<Vertex>& order) {
    return decomposition_from_elimination(f, order).width();
}

} // namespace

std::optional<TreeDecomposition> exact_tree_decomposition(const Graph& f, std::size_t max_width) {
    const std::size_t n = f.num_vertices();
    if (n > caps().tw_vertices || n > 31) throw CapExceeded("tw_vertices", n, caps().tw_vertices);
    if (n == 0) return TreeDecomposition{};
    std::vector<Mask> adj(n, 0);
    for (const Edge& e : f.edges()) {
        adj[e.u] |= Mask{1} << e.v;
        adj[e.v] |= Mask{1} << e.u;
    }
    const Mask all = n == 32 ? ~Mask{0} : (Mask{1} << n) - 1;
    std::vector<Vertex> best_order = min_fill_order(f);
    std::size_t best = order_width(f, best_order);
    // Search only for orders strictly better than `best`, and never above max_width.
    std::size_t bound = std::min(best, max_width + 1);
    std::unordered_map<Mask, std::size_t> memo;  // eliminated set -> smallest width reaching it
    std::vector<Vertex> cur;
    std::function<void(Mask, std::size_t)> dfs = [&](Mask s, std::size_t width) {
        if (s == all) {
            if (width < bound) {
                bound = width;
                best = width;
                best_order = cur;
            }
            return;
        }
        auto it = memo.find(s);
        if (it != memo.end() && it->second <= width) return;
        memo[s] = width;
        // Lower bound: minimum degree of the remaining fill graph.
        std::size_t lb = width;
        std::vector<std::pair<std::size_t, Vertex>> cand;
        for (Vertex v = 0; v < n; ++v) {
            if (s >> v & 1) continue;
            std::size_t d = static_cast<std::size_t>(std::popcount(fill_neighbors(adj, s, v)));
            cand.emplace_back(d, v);
        }
        std::sort(cand.begin(), cand.end());
        lb = std::max(lb, cand.front().first);
        if (lb >= bound) return;
        for (auto [d, v] : cand) {
            std::size_t w = std::max(width, d);
            if (w >= bound) break;
            // A vertex whose fill degree is at most the current width can be
            // eliminated first without loss (it is at most as costly now as later).
            cur.push_back(v);
            dfs(s | (Mask{1} << v), w);
            cur.pop_back();
            if (d <= width) break;
        }
    };
    dfs(0, 0);
    if (best > max_width) return std::nullopt;
    TreeDecomposition td = decomposition_from_elimination(f, best_order);
    if (!is_tree_decomposition(f, td) || td.width() != best)
        throw std::logic_error("elimination decomposition is invalid");
    return td;
}

std::size_t treewidth(const Graph& f) {
    return exact_tree_decomposition(f, f.num_vertices())->width();
}

namespace {

std::vector<Vertex> label_set(const LabelledGraph& f) {
    std::vector<Vertex> s = f.labels;
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

std::string rooted_common(const LabelledGraph& f, const TwkDecomposition& d, std::size_t k) {
    if (f.arity() != k + 1) return "label arity is not k+1";
    std::string err = tree_decomposition_error(f.graph, d.td);
    if (!err.empty()) return err;
    if (d.root >= d.td.bags.size()) return "root is not a node";
    if (d.td.bags[d.root] != label_set(f)) return "root bag differs from the label set";
    return "";
}

} // namespace

std::string rooted_decomposition_error(const LabelledGraph& f, const TwkDecomposition& d, std::size_t k) {
    std::string err = rooted_common(f, d, k);
    if (!err.empty()) return err;
    if (d.td.width() > k) return "width exceeds k";
    return "";
}

std::string twk_error(const LabelledGraph& f, const TwkDecomposition& d, std::size_t k) {
    std::string err = rooted_common(f, d, k);
    if (!err.empty()) return err;
    if (d.td.tree.num_vertices() >= 2) {
        for (const auto& b : d.td.bags)
            if (b.size() != k + 1) return "bag of size " + std::to_string(b.size()) + " in a multi-bag decomposition";
        for (const Edge& e : d.td.tree.edges()) {
            std::vector<Vertex> common;
            std::set_intersection(d.td.bags[e.u].begin(), d.td.bags[e.u].end(), d.td.bags[e.v].begin(),
                                  d.td.bags[e.v].end(), std::back_inserter(common));
            if (common.size() != k) return "adjacent bags share " + std::to_string(common.size()) + " vertices";
        }
    }
    return "";
}

TwkDecomposition normalize_to_twk(const LabelledGraph& f, const TreeDecomposition& td_in, std::size_t k) {
    f.validate();
    if (f.arity() != k + 1) throw std::invalid_argument("label arity is not k+1");
    if (!is_tree_decomposition(f.graph, td_in)) throw std::invalid_argument("not a tree decomposition");
    if (td_in.width() > k) throw std::invalid_argument("decomposition width exceeds k");
    const auto labels = label_set(f);
    const std::size_t n = f.graph.num_vertices();
    if (labels.size() < k + 1) {
        // Repeated labels: only the single-bag shape is available.
        if (n != labels.size()) throw std::invalid_argument("repeated labels and unlabelled vertices: not in TW^k");
        TwkDecomposition d{{Graph(1), {labels}}, 0};
        return d;
    }
    TreeDecomposition td = td_in;
    auto holds_labels = [&](const std::vector<Vertex>& b) {
        return std::includes(b.begin(), b.end(), labels.begin(), labels.end());
    };
    std::size_t root = SIZE_MAX;
    for (std::size_t i = 0; i < td.bags.size(); ++i)
        if (holds_labels(td.bags[i])) {
            root = i;
            break;
        }
    if (root == SIZE_MAX) {
        std::vector<Edge> e(f.graph.edges().begin(), f.graph.edges().end());
        for (std::size_t a = 0; a < labels.size(); ++a)
            for (std::size_t b = a + 1; b < labels.size(); ++b) e.emplace_back(labels[a], labels[b]);
        auto re = exact_tree_decomposition(Graph(n, e), k);
        if (!re) throw std::invalid_argument("labels cannot share a bag of a width-k decomposition");
        td = std::move(*re);
        for (std::size_t i = 0; i < td.bags.size(); ++i)
            if (holds_labels(td.bags[i])) {
                root = i;
                break;
            }
    }
    // Rooted adjacency, BFS order from the root.
    const std::size_t t = td.bags.size();
    std::vector<std::size_t> parent(t, SIZE_MAX), order{root};
    std::vector<char> seen(t, 0);
    seen[root] = 1;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (Vertex c : td.tree.neighbors(static_cast<Vertex>(order[i])))
            if (!seen[c]) {
                seen[c] = 1;
                parent[c] = order[i];
                order.push_back(c);
            }
    // Pad top-down from the parent bag; the root bag is exactly the labels.
    std::vector<std::vector<Vertex>> bag = td.bags;
    bag[root] = labels;
    for (std::size_t i = 1; i < order.size(); ++i) {
        const std::size_t c = order[i];
        for (Vertex x : bag[parent[c]]) {
            if (bag[c].size() >= k + 1) break;
            if (!std::binary_search(bag[c].begin(), bag[c].end(), x)) {
                bag[c].insert(std::lower_bound(bag[c].begin(), bag[c].end(), x), x);
            }
        }
    }
    // Rebuild: contract children equal to their parent, subdivide edges
    // whose bags overlap in fewer than k vertices.
    std::vector<std::vector<Vertex>> out_bags{labels};
    std::vector<Edge> out_edges;
    std::vector<std::size_t> image(t, 0);
    image[root] = 0;
    for (std::size_t i = 1; i < order.size(); ++i) {
        const std::size_t c = order[i];
        const std::size_t pimg = image[parent[c]];
        const auto& pb = out_bags[pimg];
        if (bag[c] == pb) {
            image[c] = pimg;
            continue;
        }
        std::vector<Vertex> drop, add;
        std::set_difference(pb.begin(), pb.end(), bag[c].begin(), bag[c].end(), std::back_inserter(drop));
        std::set_difference(bag[c].begin(), bag[c].end(), pb.begin(), pb.end(), std::back_inserter(add));
        std::size_t prev = pimg;
        std::vector<Vertex> cur = pb;
        // Swap one vertex per step; the last step reaches bag[c].
        for (std::size_t s = 0; s < drop.size(); ++s) {
            cur.erase(std::find(cur.begin(), cur.end(), drop[s]));
            cur.insert(std::lower_bound(cur.begin(), cur.end(), add[s]), add[s]);
            out_bags.push_back(cur);
            out_edges.emplace_back(static_cast<Vertex>(prev), static_cast<Vertex>(out_bags.size() - 1));
            prev = out_bags.size() - 1;
        }
        image[c] = prev;
    }
    TwkDecomposition d{{Graph(out_bags.size(), out_edges), std::move(out_bags)}, 0};
    std::string err = twk_error(f, d, k);
    if (!err.empty()) throw std::logic_error("normalize_to_twk produced an invalid decomposition: " + err);
    return d;
}

std::optional<TwkDecomposition> twk_decomposition(const LabelledGraph& f, std::size_t k) {
    if (f.arity() != k + 1) return std::nullopt;
    auto labels = label_set(f);
    const std::size_t n = f.graph.num_vertices();
    if (labels.size() < k + 1) {
        if (n != labels.size()) return std::nullopt;
        return TwkDecomposition{{Graph(1), {labels}}, 0};
    }
    std::vector<Edge> e(f.graph.edges().begin(), f.graph.edges().end());
    for (std::size_t a = 0; a < labels.size(); ++a)
        for (std::size_t b = a + 1; b < labels.size(); ++b) e.emplace_back(labels[a], labels[b]);
    auto td = exact_tree_decomposition(Graph(n, e), k);
    if (!td) return std::nullopt;
    // td is also a decomposition of f itself.
    return normalize_to_twk(f, *td, k);
}

} // namespace homlab
