#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "homlab/graph.hpp"

namespace homlab {

using Permutation = std::vector<Vertex>;

/// Vertex-coloured complete digraph whose arcs carry colours (0 = no arc).
///
/// Every finite relational structure handled here (graphs, CFI* structures
/// with their relations and preorder) is encoded this way: the arc colour of
/// (x, y) identifies the set of binary relations containing (x, y), and the
/// vertex colour the unary information.
struct ColoredDigraph {
    std::size_t n = 0;
    std::vector<std::uint32_t> vertex_color;
    std::vector<std::uint32_t> arc;  ///< n * n, row-major

    ColoredDigraph() = default;
    explicit ColoredDigraph(std::size_t n_) : n(n_), vertex_color(n_, 0), arc(n_ * n_, 0) {}

    std::uint32_t at(Vertex x, Vertex y) const { return arc[x * n + y]; }
    std::uint32_t& at(Vertex x, Vertex y) { return arc[x * n + y]; }

    bool operator==(const ColoredDigraph&) const = default;
};

/// Edges become arcs of colour 1 in both directions.
ColoredDigraph to_digraph(const Graph& g);
/// As to_digraph; vertex colour encodes the set of label positions at v.
ColoredDigraph to_digraph(const LabelledGraph& g);

/// True iff map is a bijection a -> b preserving vertex and arc colours.
bool is_isomorphism(const ColoredDigraph& a, const ColoredDigraph& b, const Permutation& map);
bool is_isomorphism(const Graph& a, const Graph& b, const Permutation& map);
bool is_automorphism(const Graph& g, const Permutation& perm);

Permutation compose(const Permutation& first, const Permutation& then);
Permutation inverse(const Permutation& p);
bool is_identity(const Permutation& p);
/// Order of p as a group element.
std::uint64_t permutation_order(const Permutation& p);
Permutation power(const Permutation& p, std::uint64_t e);

} // namespace homlab
