#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "homlab/graph.hpp"

namespace homlab {

/// Formulas of the modular counting logic over variables x_1, x_2, ...
///
/// Nodes are hash-consed: structurally equal formulas are the same node, so
/// the large formulas produced by the translations stay small as DAGs and
/// model checking can memoise per node.  Nodes live for the whole process.
enum class FormulaKind : std::uint8_t { truth, eq, edge, negation, conjunction, disjunction, mod_exists };

struct FormulaNode {
    FormulaKind kind;
    /// eq/edge: the two variable indices.  mod_exists: var = i, count = j.
    std::uint32_t i = 0, j = 0;
    const FormulaNode* left = nullptr;
    const FormulaNode* right = nullptr;
    std::uint64_t id = 0;
    /// Bit v-1 set iff x_v occurs free.
    std::uint64_t free_vars = 0;
    /// Largest variable index occurring anywhere.
    std::uint32_t max_var = 0;
};

using Formula = const FormulaNode*;

Formula f_true();
/// !true
Formula f_false();
Formula f_eq(std::uint32_t i, std::uint32_t j);
Formula f_edge(std::uint32_t i, std::uint32_t j);
Formula f_not(Formula a);
Formula f_and(Formula a, Formula b);
Formula f_or(Formula a, Formula b);
/// Exists^c x_var: the number of witnesses for x_var is c mod p.
Formula f_mod_exists(std::uint32_t count, std::uint32_t var, Formula body);
/// Left-nested; the empty conjunction is true, the empty disjunction false.
Formula f_and_all(const std::vector<Formula>& parts);
Formula f_or_all(const std::vector<Formula>& parts);

/// Throws std::invalid_argument if a variable index is 0 or above max_var,
/// or a counting quantifier's count is not below p.
void validate_formula(Formula phi, std::uint32_t max_var, std::uint32_t p);

std::string to_string(Formula phi);
/// Grammar: true | false | x1=x2 | E(x1,x2) | !φ | (φ&ψ) | (φ|ψ) | E[c]x1.φ.
/// Whitespace is ignored.  Throws std::invalid_argument with the offset of
/// the first error.
Formula parse_formula(std::string_view text);

/// Number of distinct nodes reachable from phi.
std::size_t dag_size(Formula phi);
/// Quantifier depth.
std::size_t quantifier_depth(Formula phi);

/// Variable assignment: entry v-1 is the value of x_v, nullopt if unbound.
using Assignment = std::vector<std::optional<Vertex>>;

/// G, assignment |= phi with counting quantifiers read mod p.  Throws
/// std::invalid_argument if a free variable is unbound or a value is not a
/// vertex.
bool model_check(Formula phi, const Graph& g, const Assignment& assignment, std::uint32_t p);
/// Labels as the assignment x_i = labels[i-1].
bool model_check(Formula phi, const LabelledGraph& g, std::uint32_t p);

} // namespace homlab
