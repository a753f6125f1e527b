#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "homlab/enumerate.hpp"
#include "homlab/formula.hpp"
#include "homlab/graph.hpp"
#include "homlab/tree_decomposition.hpp"

namespace homlab {

/// phi_m(x_1..x_{k+1}) with (G, a) |= phi_m iff hom(f, (G, a)) = m mod p.
/// Built by recursion on the decomposition rooted at d.root: a single bag is
/// described by equalities and edges, a root with one child peels off the
/// vertex leaving the root bag with counting quantifiers, and a root with
/// several children splits f into glued factors.  Throws
/// std::invalid_argument unless d witnesses f in TW^k.
Formula graph_to_formula(const LabelledGraph& f, const TwkDecomposition& d, std::uint32_t m, std::uint32_t p);

/// (k+1)-labelling of f with a TW^k decomposition: the label tuple is a
/// padded bag.  nullopt if f has treewidth above k.
std::optional<std::pair<LabelledGraph, TwkDecomposition>> label_for_twk(const Graph& f, std::size_t k);

/// Sentence true in G iff hom(f, G) = m mod p, obtained by quantifying the
/// labels of label_for_twk(f, k) away one at a time.
Formula hom_sentence(const Graph& f, std::size_t k, std::uint32_t m, std::uint32_t p);

struct SentenceWitness {
    Graph pattern;
    std::uint32_t residue = 0;  ///< hom(pattern, g) mod p
    Formula sentence = nullptr;
};

/// Searches treewidth <= k patterns of up to `budget` vertices whose hom
/// counts into g and h differ mod p and turns the first one into a sentence.
/// The sentence is model-checked on both graphs before it is returned.
std::optional<SentenceWitness> sentence_equivalence_probe(const Graph& g, const Graph& h, std::uint32_t p,
                                                          std::size_t k, std::size_t budget);

} // namespace homlab
