#include "homlab/nice.hpp"

#include <algorithm>
#include <functional>
#include <limits>

#include "homlab/caps.hpp"

namespace homlab {

namespace {

std::size_t upow(std::size_t b, std::size_t e) {
    std::size_t r = 1;
    for (std::size_t i = 0; i < e; ++i) r *= b;
    return r;
}

} // namespace

std::size_t nice_planar_vertex_count(std::size_t n) {
    std::size_t tree = 1, level = 1;
    for (std::size_t depth = 1; depth <= 4 * n; ++depth) {
        level *= depth == 1 ? 2 * n : 2 * n - 1;
        tree += level;
    }
    const std::size_t leaves = 2 * n * upow(2 * n - 1, 4 * n - 1);
    return tree + (2 * n - 1) * leaves;
}

NiceWitness build_nice_planar(std::size_t n) {
    if (n == 0) throw std::invalid_argument("build_nice_planar needs n >= 1");
    if (n > caps().nice_max_n) throw CapExceeded("nice_max_n", n, caps().nice_max_n);
    NiceWitness out;
    out.params = {n, 2 * n, 2 * n, n};
    std::vector<Edge> edges;
    std::vector<Vertex> level{0};
    Vertex next = 1;
    for (std::size_t depth = 1; depth <= 4 * n; ++depth) {
        std::vector<Vertex> children;
        const std::size_t fan = depth == 1 ? 2 * n : 2 * n - 1;
        for (Vertex p : level)
            for (std::size_t k = 0; k < fan; ++k) {
                edges.emplace_back(p, next);
                children.push_back(next++);
            }
        level = std::move(children);
    }
    out.tree_vertices = next;
    out.leaves = level.size();
    const std::size_t rows = 2 * n, cols = level.size();
    // Row 0 of the grid is the leaf row; rows 1.. are new vertices.
    auto cell = [&](std::size_t r, std::size_t c) -> Vertex {
        return r == 0 ? level[c] : static_cast<Vertex>(out.tree_vertices + (r - 1) * cols + c);
    };
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            if (c + 1 < cols) edges.emplace_back(cell(r, c), cell(r, c + 1));
            if (r + 1 < rows) edges.emplace_back(cell(r, c), cell(r + 1, c));
        }
    out.graph = Graph(out.tree_vertices + (rows - 1) * cols, edges);
    out.witness_vertex = 0;
    return out;
}

std::optional<std::size_t> shortest_cycle_through(const Graph& g, Vertex x) {
    constexpr std::size_t inf = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> dist(g.num_vertices(), inf);
    std::vector<Vertex> branch(g.num_vertices(), 0);
    std::vector<Vertex> queue{x};
    dist[x] = 0;
    for (Vertex y : g.neighbors(x)) {
        dist[y] = 1;
        branch[y] = y;
        queue.push_back(y);
    }
    std::size_t best = inf;
    for (std::size_t i = 1; i < queue.size(); ++i) {
        Vertex a = queue[i];
        for (Vertex b : g.neighbors(a)) {
            if (b == x) continue;
            if (dist[b] == inf) {
                dist[b] = dist[a] + 1;
                branch[b] = branch[a];
                queue.push_back(b);
            } else if (branch[b] != branch[a]) {
                best = std::min(best, dist[a] + dist[b] + 1);
            }
        }
    }
    if (best == inf) return std::nullopt;
    return best;
}

std::optional<bool> is_induced_grid_subgraph(const Graph& g, std::size_t height) {
    const std::size_t n = g.num_vertices();
    if (n == 0) return true;
    if (height == 0) return false;
    for (const auto& comp : connected_components(g))
        if (comp.size() > caps().grid_component) return std::nullopt;
    for (Vertex v = 0; v < n; ++v)
        if (g.degree(v) > 4) return false;
    // Components can be placed far apart, so test each separately.
    for (const auto& comp : connected_components(g)) {
        Graph c = g.induced(comp);
        const std::size_t m = c.num_vertices();
        const std::size_t width = 2 * m + 1;
        // BFS order so every vertex after the first has a placed neighbour.
        std::vector<Vertex> order{0}, parent(m, 0);
        std::vector<char> seen(m, 0);
        seen[0] = 1;
        for (std::size_t i = 0; i < order.size(); ++i)
            for (Vertex w : c.neighbors(order[i]))
                if (!seen[w]) {
                    seen[w] = 1;
                    parent[w] = order[i];
                    order.push_back(w);
                }
        std::vector<std::int64_t> row(m), col(m);
        std::vector<std::int64_t> occupant(height * width, -1);
        std::function<bool(std::size_t)> place = [&](std::size_t idx) -> bool {
            if (idx == m) return true;
            const Vertex v = order[idx];
            std::vector<std::pair<std::int64_t, std::int64_t>> cand;
            if (idx == 0) {
                for (std::size_t r = 0; r < height; ++r) cand.emplace_back(r, static_cast<std::int64_t>(m));
            } else {
                const Vertex p = parent[v];
                const std::int64_t dr[4] = {1, -1, 0, 0}, dc[4] = {0, 0, 1, -1};
                for (int k = 0; k < 4; ++k) cand.emplace_back(row[p] + dr[k], col[p] + dc[k]);
            }
            for (auto [r, cc] : cand) {
                if (r < 0 || r >= static_cast<std::int64_t>(height) || cc < 0 || cc >= static_cast<std::int64_t>(width))
                    continue;
                if (occupant[r * width + cc] >= 0) continue;
                bool ok = true;
                for (std::size_t j = 0; j < idx && ok; ++j) {
                    const Vertex u = order[j];
                    const bool grid_adj = std::abs(row[u] - r) + std::abs(col[u] - cc) == 1;
                    ok = grid_adj == c.has_edge(u, v);
                }
                if (!ok) continue;
                row[v] = r;
                col[v] = cc;
                occupant[r * width + cc] = v;
                if (place(idx + 1)) return true;
                occupant[r * width + cc] = -1;
            }
            return false;
        };
        if (!place(0)) return false;
    }
    return true;
}

NiceVerdict check_nice(const Graph& g, Vertex w, const NiceParams& prm) {
    NiceVerdict v;
    const std::size_t n = g.num_vertices();
    if (w >= n) throw std::invalid_argument("witness vertex out of range");
    const auto dist = bfs_distances(g, w);
    std::vector<Vertex> ball;
    for (Vertex x = 0; x < n; ++x)
        if (dist[x] <= prm.r) ball.push_back(x);

    for (Vertex x : ball)
        if (g.degree(x) < prm.d) {
            v.status = NiceStatus::not_nice;
            v.failed_condition = 1;
            v.reason = "vertex " + std::to_string(x) + " has degree " + std::to_string(g.degree(x));
            return v;
        }
    for (Vertex x : ball) {
        auto len = shortest_cycle_through(g, x);
        if (len && *len < prm.g) {
            v.status = NiceStatus::not_nice;
            v.failed_condition = 2;
            v.reason = "cycle of length " + std::to_string(*len) + " through vertex " + std::to_string(x);
            return v;
        }
    }
    if (prm.c > caps().nice_max_c) {
        v.reason = "c exceeds the nice_max_c cap";
        return v;
    }
    // Number of subsets of size <= c.
    std::size_t subsets = 0;
    {
        std::size_t binom = 1;
        for (std::size_t s = 0; s <= prm.c && s <= n; ++s) {
            subsets += binom;
            if (subsets > caps().nice_subsets) {
                v.reason = "vertex subsets exceed the nice_subsets cap";
                return v;
            }
            binom = binom * (n - s) / (s + 1);
        }
    }
    bool capped = false;
    std::vector<Vertex> removed;
    std::vector<char> is_removed(n, 0);
    std::function<bool(Vertex)> visit = [&](Vertex start) -> bool {
        // Examine G - removed.
        std::vector<Vertex> keep;
        for (Vertex x = 0; x < n; ++x)
            if (!is_removed[x]) keep.push_back(x);
        Graph rest = g.induced(keep);
        std::vector<std::size_t> comp_of(n, SIZE_MAX);
        auto comps = connected_components(rest);
        for (std::size_t ci = 0; ci < comps.size(); ++ci)
            for (Vertex y : comps[ci]) comp_of[keep[y]] = ci;
        std::size_t ball_comp = SIZE_MAX;
        for (Vertex x : ball) {
            if (is_removed[x]) continue;
            if (ball_comp == SIZE_MAX) ball_comp = comp_of[x];
            if (comp_of[x] != ball_comp) {
                v.status = NiceStatus::not_nice;
                v.failed_condition = 3;
                v.reason = "removing " + std::to_string(removed.size()) + " vertices separates the ball";
                return false;
            }
        }
        std::size_t bad = 0;
        for (const auto& comp : comps) {
            auto grid = is_induced_grid_subgraph(rest.induced(comp), removed.size());
            if (!grid)
                capped = true;
            else if (!*grid)
                ++bad;
        }
        if (bad > 1) {
            v.status = NiceStatus::not_nice;
            v.failed_condition = 4;
            v.reason = "removing " + std::to_string(removed.size()) + " vertices leaves " + std::to_string(bad) +
                       " non-grid components";
            return false;
        }
        if (removed.size() == prm.c) return true;
        for (Vertex x = start; x < n; ++x) {
            removed.push_back(x);
            is_removed[x] = 1;
            bool ok = visit(x + 1);
            is_removed[x] = 0;
            removed.pop_back();
            if (!ok) return false;
        }
        return true;
    };
    if (!visit(0)) return v;
    if (capped) {
        v.status = NiceStatus::inconclusive;
        v.reason = "a component exceeds the grid_component cap";
        return v;
    }
    v.status = NiceStatus::nice;
    return v;
}

} // namespace homlab
