#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "homlab/formula.hpp"
#include "homlab/graph.hpp"
#include "homlab/tree_decomposition.hpp"

namespace homlab {

struct CombinationTerm {
    std::uint32_t coefficient = 0;  ///< in [1, p)
    LabelledGraph graph;
    TwkDecomposition decomposition;
};

/// Finite F_p-linear combination of (k+1)-labelled graphs of width <= k.
///
/// Terms are keyed by the canonical form of the labelled graph, so
/// isomorphic terms merge and zero coefficients disappear.  Every term is
/// checked on insertion: graphs with distinct labels must carry a TW^k
/// decomposition, graphs with repeated labels a rooted decomposition of
/// width <= k (see rooted_decomposition_error).
class GraphCombination {
public:
    GraphCombination(std::uint32_t p, std::size_t k);

    /// 1 * I: edgeless graph on k+1 distinct labelled vertices.
    static GraphCombination unit(std::uint32_t p, std::size_t k);

    std::uint32_t p() const noexcept { return p_; }
    std::size_t k() const noexcept { return k_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool empty() const noexcept { return terms_.empty(); }
    std::vector<const CombinationTerm*> terms() const;

    /// Adds coefficient * graph.  A decomposition failing the checks above
    /// throws std::logic_error; exceeding the combination_terms cap throws
    /// CapExceeded.
    void add(std::uint32_t coefficient, LabelledGraph graph, TwkDecomposition decomposition);

    GraphCombination operator+(const GraphCombination& o) const;
    GraphCombination operator-(const GraphCombination& o) const;
    GraphCombination scaled(std::uint32_t c) const;
    /// Bilinear extension of the gluing product.  Pairs whose gluing would
    /// force a loop have no homomorphisms into any loop-free graph and are
    /// dropped.
    GraphCombination glue(const GraphCombination& o) const;

private:
    void check_compatible(const GraphCombination& o) const;

    std::uint32_t p_;
    std::size_t k_;
    std::map<std::vector<std::uint32_t>, CombinationTerm> terms_;
};

/// sum of alpha_i hom(F^i, g) mod p.  Throws std::invalid_argument on an
/// arity mismatch.
std::uint32_t eval_combination(const GraphCombination& q, const LabelledGraph& g);

/// Coefficients c_0..c_{p-1} of the polynomial over F_p that is 1 on x1 and 0
/// elsewhere.
std::vector<std::uint32_t> lagrange_indicator(const std::set<std::uint32_t>& x1, std::uint32_t p);

/// The indicator polynomial of x1 evaluated in the gluing algebra (powers by
/// repeated gluing, q^0 = I), so eval(r, G) = [eval(q, G) in x1].
GraphCombination interpolate(const GraphCombination& q, const std::set<std::uint32_t>& x1);

/// Combination r with eval(r, (G, a)) = [G, a |= phi] for every labelled G.
/// Throws std::invalid_argument when phi mentions a variable beyond x_{k+1}.
GraphCombination formula_to_combination(Formula phi, std::uint32_t p, std::size_t k);

} // namespace homlab
