#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "homlab/graph.hpp"

namespace homlab {

struct NiceParams {
    std::size_t r = 0, d = 0, g = 0, c = 0;
};

struct NiceWitness {
    Graph graph;
    Vertex witness_vertex = 0;
    NiceParams params;
    std::size_t tree_vertices = 0;
    std::size_t leaves = 0;
};

/// Complete tree of depth 4n whose root has 2n children and whose other
/// internal vertices have 2n-1 children, with a grid of height 2n whose
/// first row is the row of leaves.  Witness vertex is the root (id 0).
/// Refuses n above the nice_max_n cap.
NiceWitness build_nice_planar(std::size_t n);

/// Closed form: tree vertices plus the grid rows below the leaves.
std::size_t nice_planar_vertex_count(std::size_t n);

enum class NiceStatus { nice, not_nice, inconclusive };

struct NiceVerdict {
    NiceStatus status = NiceStatus::inconclusive;
    /// Violated condition (1-4) for not_nice; 0 otherwise.
    int failed_condition = 0;
    std::string reason;
};

/// Evaluates the four (r,d,g,c)-niceness conditions for the ball around w.
/// Conditions 3 and 4 enumerate all vertex subsets of size <= c; when a cap
/// would be exceeded the verdict is inconclusive, never a silent no.
NiceVerdict check_nice(const Graph& g, Vertex w, const NiceParams& params);

/// Length of a shortest cycle through x, nullopt if none.
std::optional<std::size_t> shortest_cycle_through(const Graph& g, Vertex x);

/// Whether g is an induced subgraph of a grid with `height` rows (and any
/// width).  nullopt when g exceeds the grid_component cap.
std::optional<bool> is_induced_grid_subgraph(const Graph& g, std::size_t height);

} // namespace homlab
