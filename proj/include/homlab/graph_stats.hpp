#pragma once

#include <cstddef>
#include <optional>

#include "homlab/graph.hpp"

namespace homlab {

struct StructuralStats {
    std::size_t min_degree = 0;
    /// Length of a shortest cycle; nullopt for forests.
    std::optional<std::size_t> girth;
    bool is_planar = true;
    std::size_t vertex_connectivity = 0;
};

StructuralStats structural_stats(const Graph& g);

std::optional<std::size_t> girth(const Graph& g);
bool is_planar(const Graph& g);
/// Minimum number of vertices whose removal disconnects g (n-1 for K_n,
/// 0 for disconnected or single-vertex graphs).
std::size_t vertex_connectivity(const Graph& g);
/// Maximum number of internally vertex-disjoint s-t paths (s, t non-adjacent).
std::size_t local_vertex_connectivity(const Graph& g, Vertex s, Vertex t);

} // namespace homlab
