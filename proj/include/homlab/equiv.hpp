#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "homlab/graph.hpp"
#include "homlab/refine.hpp"
#include "homlab/structure.hpp"

namespace homlab {

/// An isomorphism g -> h, verified edge-preserving in both directions.
std::optional<Permutation> is_isomorphic(const Graph& g, const Graph& h);
std::optional<Permutation> is_isomorphic(const ColoredDigraph& g, const ColoredDigraph& h);

struct AutomorphismList {
    std::vector<Permutation> perms;
    /// True: perms is the whole group.  False: perms generates it.
    bool complete = false;
    mpz_class group_order = 1;
};

/// Complete list for graphs up to the aut_complete_vertices cap, a strong
/// generating set above it.  Every returned permutation is verified.
AutomorphismList automorphisms(const Graph& g);
AutomorphismList automorphisms(const ColoredDigraph& g);

enum class SearchStatus { found, none_exists, not_found };

struct OrderPAutomorphism {
    SearchStatus status = SearchStatus::none_exists;
    std::optional<Permutation> sigma;
};

/// Lexicographically least automorphism of order exactly p among those
/// examined: all of them when the list is complete, otherwise powers of
/// seeded random products of generators.  none_exists is reported only when
/// p does not divide the group order.
OrderPAutomorphism find_order_p_automorphism(const Graph& g, std::uint32_t p, std::uint64_t seed = 0);

/// Iterated fixed-point subgraph of order-p automorphisms until none is
/// left.  Throws CapExceeded if an order-p automorphism is known to exist
/// but the search did not produce one.
Graph faben_jerrum_reduce(const Graph& g, std::uint32_t p);

struct WlResult {
    bool distinguished = false;
    /// Refinement rounds performed until the verdict was settled.
    std::size_t rounds = 0;
    /// Tuple colours in index order sum_i t_i n^(k-1-i), shared id space.
    std::vector<std::uint32_t> colors_g;
    std::vector<std::uint32_t> colors_h;
};

/// k = 1: colour refinement.  k >= 2: k-dimensional (folklore) WL on
/// k-tuples, initialised with the atomic type of each tuple.  The two graphs
/// are refined in lockstep with one signature dictionary, so colours are
/// comparable; the verdict compares colour histograms.
WlResult wl_refine(const Graph& g, const Graph& h, std::size_t k);

struct TupleOrbits {
    std::size_t n = 0;
    std::size_t arity = 0;
    /// Orbit id per tuple index, ids numbered by first occurrence.
    std::vector<std::uint32_t> orbit_of;
    std::size_t count = 0;
};

/// Orbits of c-tuples under the full automorphism group.
TupleOrbits tuple_orbits(const ColoredDigraph& s, std::size_t c);
TupleOrbits tuple_orbits(const Graph& g, std::size_t c);

} // namespace homlab
