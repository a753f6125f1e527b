#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "homlab/cfi.hpp"
#include "homlab/graph.hpp"
#include "homlab/group.hpp"
#include "homlab/int_matrix.hpp"
#include "homlab/tree_decomposition.hpp"

namespace homlab {

/// Bitset over V(g) per vertex of f, g.words() words each.
using CandidateSets = std::vector<std::vector<std::uint64_t>>;

/// hom(f, g) by backtracking.  Connected components of f are counted
/// separately and multiplied; within a component, candidates for the next
/// vertex are the intersection of the adjacency rows of its placed
/// neighbours.
mpz_class hom_count_brute(const Graph& f, const Graph& g);

/// Homomorphisms h with h(x) in allowed[x] for every x.
mpz_class hom_count_restricted(const Graph& f, const Graph& g, const CandidateSets& allowed);

/// Homomorphisms with h(f.labels[i]) = g.labels[i].  Throws
/// std::invalid_argument on an arity mismatch.
mpz_class hom_count_labelled(const LabelledGraph& f, const LabelledGraph& g);

/// All homomorphisms f -> g as image vectors, lexicographic in
/// (h(0), h(1), ...).  Throws CapExceeded("hom_psi") beyond `limit`.
std::vector<std::vector<Vertex>> list_homomorphisms(const Graph& f, const Graph& g, std::size_t limit);

/// The linear system whose solutions over Gamma are the homomorphisms
/// F -> CFI lying over psi.  Column (a, s) is the variable for the s-th
/// incident edge of psi(a); rows are one per vertex of f (sum over the
/// columns of a equals U(psi(a))) followed by one per edge ab of f
/// (x_{a,ψ(a)ψ(b)} + x_{b,ψ(b)ψ(a)} = 0).
struct HomSystem {
    IntMatrix a;
    GroupVector rhs;
    std::vector<std::pair<Vertex, std::size_t>> columns;
};

HomSystem hom_system(const Graph& f, const CfiGraph& cfi, const std::vector<Vertex>& psi);

struct PsiCount {
    std::vector<Vertex> psi;
    mpz_class count;
    /// A solution of the system, i.e. one homomorphism over psi, when count > 0.
    std::optional<std::vector<Vertex>> witness;
};

struct CfiHomCount {
    mpz_class total;
    std::vector<PsiCount> per_psi;  ///< in list_homomorphisms order
};

/// hom(f, CFI) as the sum over psi in Hom(f, base) of the solution counts
/// of hom_system.  Witness homomorphisms are re-checked against the CFI
/// graph.
CfiHomCount hom_count_cfi(const Graph& f, const CfiGraph& cfi);

/// Count of homomorphisms over psi by direct search (reference path).
mpz_class hom_count_over_psi(const Graph& f, const CfiGraph& cfi, const std::vector<Vertex>& psi);

/// Leaf-to-root DP over bag assignments.  With a modulus the DP runs in
/// residues and the result lies in [0, modulus).  Throws
/// std::invalid_argument if td is not a tree decomposition of f.
mpz_class hom_count_tw(const Graph& f, const TreeDecomposition& td, const Graph& g,
                       std::optional<std::uint32_t> modulus = std::nullopt);

} // namespace homlab
