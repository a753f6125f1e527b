#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "homlab/graph.hpp"

namespace homlab {

/// Hereditary graph classes searched for distinguishing patterns.
struct GraphFamily {
    enum class Kind { all, treewidth, planar };
    Kind kind = Kind::all;
    std::size_t k = 0;  ///< width bound for Kind::treewidth

    static GraphFamily all() { return {Kind::all, 0}; }
    static GraphFamily treewidth_at_most(std::size_t k) { return {Kind::treewidth, k}; }
    static GraphFamily planar() { return {Kind::planar, 0}; }
    /// "all", "planar", "tw<=2" / "tw2".
    static GraphFamily parse(const std::string& text);
    std::string to_string() const;
};

bool in_family(const Graph& f, const GraphFamily& family);

/// Canonically relabelled representative of the isomorphism class of g.
Graph canonical_representative(const Graph& g);

/// One representative per isomorphism class of connected graphs with 1..max_n
/// vertices in the family, ordered by (vertices, edges, canonical form).
/// Generated by adding one vertex at a time, which reaches every connected
/// graph of a hereditary class through a non-cut vertex.
const std::vector<Graph>& connected_graphs(std::size_t max_n, const GraphFamily& family = GraphFamily::all());

/// Representatives of all graphs on exactly n vertices, connected or not.
const std::vector<Graph>& all_graphs(std::size_t n);

struct Distinguisher {
    Graph f;
    mpz_class hom_g;
    mpz_class hom_h;
};

/// First pattern in connected_graphs(max_size, family) whose hom counts into
/// g and h differ (as residues when a modulus is given).  nullopt only says
/// that no pattern up to max_size separates them.
std::optional<Distinguisher> find_distinguisher(const Graph& g, const Graph& h, const GraphFamily& family,
                                                std::size_t max_size,
                                                std::optional<std::uint32_t> modulus = std::nullopt);

} // namespace homlab
