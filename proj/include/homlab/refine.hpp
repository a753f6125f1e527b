#pragma once

// Colour refinement and individualisation-refinement search on coloured
// digraphs: isomorphism, automorphism generators, canonical forms.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "homlab/structure.hpp"

namespace homlab {

using Coloring = std::vector<std::uint32_t>;

/// Coarsest equitable refinement of the given colourings, computed jointly so
/// that colour ids are comparable across the graphs.  Ids are the ranks of the
/// refinement signatures in sorted order, hence invariant under relabelling.
std::vector<Coloring> refine_jointly(const std::vector<const ColoredDigraph*>& graphs, std::vector<Coloring> colors);
Coloring refine(const ColoredDigraph& g, Coloring colors);
Coloring refine(const ColoredDigraph& g);

std::optional<Permutation> find_isomorphism(const ColoredDigraph& a, const ColoredDigraph& b);
/// Same, with extra initial colourings that the isomorphism must respect.
std::optional<Permutation> find_isomorphism(const ColoredDigraph& a, const Coloring& ca, const ColoredDigraph& b,
                                            const Coloring& cb);

/// Every isomorphism a -> b; throws CapExceeded when more than `limit` exist.
std::vector<Permutation> all_isomorphisms(const ColoredDigraph& a, const ColoredDigraph& b, std::size_t limit);

struct AutomorphismGroup {
    /// Strong generating set relative to `base`.
    std::vector<Permutation> generators;
    std::vector<Vertex> base;
    mpz_class order = 1;
};

AutomorphismGroup automorphism_group(const ColoredDigraph& g);

struct CanonicalForm {
    /// labeling[v] is the canonical position of v.
    Permutation labeling;
    /// Equal for two digraphs iff they are isomorphic.
    std::vector<std::uint32_t> certificate;
};

/// Exhaustive over the search tree with twin pruning; throws CapExceeded
/// when the tree has more leaves than the automorphism-list cap.
CanonicalForm canonical_form(const ColoredDigraph& g);

/// Classes of vertices pairwise exchangeable by a transposition automorphism.
std::vector<std::uint32_t> twin_classes(const ColoredDigraph& g);

} // namespace homlab
