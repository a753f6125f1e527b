#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace homlab {

using Vertex = std::uint32_t;

/// Undirected edge in canonical form (u < v).
struct Edge {
    Vertex u = 0;
    Vertex v = 0;

    Edge() = default;
    Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

    auto operator<=>(const Edge&) const = default;
};

/// Finite simple undirected graph on the dense vertex set {0, ..., n-1}.
///
/// Immutable once constructed.  Neighbour lists are sorted, the edge list is
/// sorted lexicographically, and a bitset adjacency matrix is kept alongside
/// for the counting kernels.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t n);
    /// Throws std::invalid_argument on a loop or an out-of-range endpoint.
    /// Duplicate edges collapse.
    Graph(std::size_t n, std::span<const Edge> edges);
    Graph(std::size_t n, std::initializer_list<std::pair<Vertex, Vertex>> edges);

    std::size_t num_vertices() const noexcept { return adj_.size(); }
    std::size_t num_edges() const noexcept { return edges_.size(); }
    std::span<const Edge> edges() const noexcept { return edges_; }
    std::span<const Vertex> neighbors(Vertex v) const { return adj_[v]; }
    std::size_t degree(Vertex v) const { return adj_[v].size(); }
    bool has_edge(Vertex a, Vertex b) const {
        return (bits_[a * words_ + b / 64] >> (b % 64)) & 1u;
    }

    /// Number of 64-bit words per adjacency row.
    std::size_t words() const noexcept { return words_; }
    std::span<const std::uint64_t> adjacency_row(Vertex v) const {
        return {bits_.data() + v * words_, words_};
    }

    /// Image under the bijection old -> perm[old].
    Graph relabel(std::span<const Vertex> perm) const;
    /// Induced subgraph; vertex i of the result is vertices[i].
    Graph induced(std::span<const Vertex> vertices) const;

    bool operator==(const Graph& other) const {
        return num_vertices() == other.num_vertices() && edges_ == other.edges_;
    }

private:
    std::vector<std::vector<Vertex>> adj_;
    std::vector<Edge> edges_;
    std::vector<std::uint64_t> bits_;
    std::size_t words_ = 0;
};

/// Graph with a tuple of distinguished vertices (repetitions allowed).
struct LabelledGraph {
    Graph graph;
    std::vector<Vertex> labels;

    std::size_t arity() const noexcept { return labels.size(); }
    /// Throws std::invalid_argument if a label is not a vertex.
    void validate() const;
    bool operator==(const LabelledGraph&) const = default;
};

/// Graph with a total order on its vertices, listed smallest first.
struct OrderedGraph {
    Graph graph;
    std::vector<Vertex> order;

    /// Vertex-id order.
    explicit OrderedGraph(Graph g);
    OrderedGraph(Graph g, std::vector<Vertex> order);

    /// rank()[v] is the position of v in the order.
    std::vector<std::size_t> rank() const;
};

// Named graphs.
Graph complete_graph(std::size_t n);
Graph empty_graph(std::size_t n);
Graph path_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
/// Centre 0 with `leaves` pendant vertices.
Graph star_graph(std::size_t leaves);
Graph complete_bipartite_graph(std::size_t a, std::size_t b);
Graph petersen_graph();

/// Vertex (a, x) gets id a * |V(h)| + x; (a,x)~(b,y) iff a~b and x~y.
Graph categorical_product(const Graph& g, const Graph& h);
/// k-fold categorical power, k >= 1.
Graph categorical_power(const Graph& g, std::size_t k);
Graph disjoint_union(const Graph& g, const Graph& h);

/// Vertex maps from the two factors into a glued graph.
struct GlueMaps {
    std::vector<Vertex> left;
    std::vector<Vertex> right;
};

/// Gluing product with its vertex maps; nullopt when the identification
/// would create a loop (an edge between two identified vertices).
std::optional<std::pair<LabelledGraph, GlueMaps>> try_glue(const LabelledGraph& f, const LabelledGraph& k);

/// Disjoint union with label i of f identified with label i of k.  Merged
/// vertices are renumbered by their smallest original id (f first).
/// Throws std::invalid_argument on arity mismatch and std::domain_error when
/// the identification forces a loop.
LabelledGraph glue(const LabelledGraph& f, const LabelledGraph& k);

/// Edgeless graph on `arity` distinct labelled vertices (unit of glue).
LabelledGraph glue_unit(std::size_t arity);

std::vector<std::vector<Vertex>> connected_components(const Graph& g);
bool is_connected(const Graph& g);
/// BFS distances from `source`; unreachable vertices get SIZE_MAX.
std::vector<std::size_t> bfs_distances(const Graph& g, Vertex source);

} // namespace homlab
