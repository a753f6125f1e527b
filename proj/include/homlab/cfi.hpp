#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include <json.hpp>

#include "homlab/graph.hpp"
#include "homlab/group.hpp"
#include "homlab/structure.hpp"

namespace homlab {

/// CFI[Gamma, base, U]: vertices (u, S) with S in Gamma^{E(u)} and
/// sum S = U(u); (u,S) ~ (v,T) iff uv in E(base) and S(uv) + T(uv) = 0.
///
/// S is indexed by the incident edges of u in increasing neighbour order.
/// Vertices are numbered by origin, then lexicographically by S.
class CfiGraph {
public:
    /// Throws std::invalid_argument for a disconnected or empty base, or a
    /// U vector that does not match the base.
    CfiGraph(FiniteAbelianGroup gamma, Graph base, GroupVector u_vector);

    const Graph& graph() const noexcept { return graph_; }
    const Graph& base() const noexcept { return base_; }
    const FiniteAbelianGroup& gamma() const noexcept { return gamma_; }
    const GroupVector& u_vector() const noexcept { return u_; }

    std::size_t num_vertices() const noexcept { return origin_.size(); }
    Vertex origin(Vertex x) const { return origin_[x]; }
    const std::vector<Vertex>& origins() const noexcept { return origin_; }
    const GroupVector& s_vector(Vertex x) const { return s_[x]; }
    /// Position of neighbour v in the neighbour list of u (the slot of uv in S).
    std::size_t slot(Vertex u, Vertex v) const;
    /// Id of (u, S); nullopt if sum S != U(u).
    std::optional<Vertex> vertex_of(Vertex u, const GroupVector& s) const;
    /// First vertex with origin u; vertices of V_u are contiguous.
    Vertex first_of(Vertex u) const { return offset_[u]; }
    std::size_t size_of(Vertex u) const { return offset_[u + 1] - offset_[u]; }

    nlohmann::json to_json() const;

private:
    FiniteAbelianGroup gamma_;
    Graph base_;
    GroupVector u_;
    std::vector<Vertex> origin_;
    std::vector<GroupVector> s_;
    std::vector<Vertex> offset_;
    Graph graph_;
};

CfiGraph build_cfi(const FiniteAbelianGroup& gamma, const Graph& base, const GroupVector& u_vector);
/// Closed form sum_u |Gamma|^(deg u - 1).
std::size_t cfi_vertex_count(const FiniteAbelianGroup& gamma, const Graph& base);

struct CfiIsomorphism {
    Permutation map;
    CfiGraph target;
};

/// phi(u,S) = (u, S + j e_uv), phi(v,T) = (v, T - j e_uv), identity
/// elsewhere; an isomorphism onto CFI[Gamma, base, U + j u - j v].  j
/// defaults to the all-ones element.  Throws std::invalid_argument if uv is
/// not a base edge; the map is verified before it is returned.
CfiIsomorphism twist_isomorphism(const CfiGraph& cfi, Vertex u, Vertex v,
                                 const std::optional<GroupElement>& j = std::nullopt);

/// Composition of twists along the walk u_1..u_m moving j from u_1 to u_m;
/// onto CFI[Gamma, base, U - j u_1 + j u_m].  For a closed walk this is an
/// automorphism.  Throws std::invalid_argument for an invalid walk.
CfiIsomorphism path_isomorphism(const CfiGraph& cfi, const std::vector<Vertex>& walk, const GroupElement& j);

/// Explicit isomorphism CFI[Gamma,G,U] -> CFI[Gamma,G,U'] when sum U =
/// sum U', moving the differences to the root along a BFS spanning tree.
std::optional<Permutation> cfi_isomorphism(const CfiGraph& a, const CfiGraph& b);

/// CFI*[Z_{2^i}, base, U]: the CFI graph with its preorder and relations.
struct CfiStructure {
    CfiGraph cfi;
    std::vector<Vertex> base_order;
    unsigned i = 1;
    /// Keyed by the ordered base pair (u, v) with uv an edge; pairs in V_u^2.
    std::map<std::pair<Vertex, Vertex>, std::vector<std::pair<Vertex, Vertex>>> n_rel;
    std::map<std::pair<Vertex, Vertex>, std::vector<std::pair<Vertex, Vertex>>> c_rel;
    /// i_rel[j]: unordered pairs {x, y}, stored with x < y.
    std::vector<std::vector<std::pair<Vertex, Vertex>>> i_rel;

    /// (u,S) <= (v,T) iff u <= v in the base order.
    bool preceq(Vertex x, Vertex y) const;
};

CfiStructure build_cfi_star(unsigned i, const OrderedGraph& base, const GroupVector& u_vector);

/// Digraph encodings of two structures over the same base with a shared
/// arc-colour dictionary (vertex colour = rank of the origin, arc colour =
/// set of relations containing the pair).
std::pair<ColoredDigraph, ColoredDigraph> to_digraphs(const CfiStructure& a, const CfiStructure& b);
ColoredDigraph to_digraph(const CfiStructure& s);

/// Verified isomorphism preserving all relations and the preorder.
std::optional<Permutation> is_isomorphic(const CfiStructure& a, const CfiStructure& b);

nlohmann::json to_json(const CfiStructure& s);

} // namespace homlab
