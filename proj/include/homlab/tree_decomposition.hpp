#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "homlab/graph.hpp"

namespace homlab {

/// Tree `tree` with a bag of vertices of the decomposed graph per node.
struct TreeDecomposition {
    Graph tree;
    std::vector<std::vector<Vertex>> bags;  ///< each sorted, duplicate-free

    /// max bag size - 1 (0 for an empty decomposition).
    std::size_t width() const;
};

/// Empty string if td is a tree decomposition of f, else the violated rule.
std::string tree_decomposition_error(const Graph& f, const TreeDecomposition& td);
bool is_tree_decomposition(const Graph& f, const TreeDecomposition& td);

/// Decomposition induced by eliminating vertices in `order`.
TreeDecomposition decomposition_from_elimination(const Graph& f, const std::vector<Vertex>& order);

/// Minimum-width decomposition if the treewidth is at most max_width, else
/// nullopt.  Branch and bound over elimination orders.  Throws CapExceeded
/// above the tw_vertices cap.
std::optional<TreeDecomposition> exact_tree_decomposition(const Graph& f, std::size_t max_width);
std::size_t treewidth(const Graph& f);

/// Decomposition of a (k+1)-labelled graph with a designated root bag.
struct TwkDecomposition {
    TreeDecomposition td;
    std::size_t root = 0;
};

/// Empty string iff d witnesses membership of f in TW^k: a root bag equal to
/// the label set and, when there are two or more bags, every bag of size
/// k+1 with adjacent bags sharing exactly k vertices.
std::string twk_error(const LabelledGraph& f, const TwkDecomposition& d, std::size_t k);

/// Weaker invariant for labelled graphs whose labels repeat (such graphs
/// cannot satisfy the bag-size rule with more than one bag): a tree
/// decomposition of width <= k with a root bag equal to the label set.
std::string rooted_decomposition_error(const LabelledGraph& f, const TwkDecomposition& d, std::size_t k);

/// Pads, contracts and subdivides td into a TW^k decomposition rooted at the
/// label set.  If no bag contains all labels, a decomposition of f plus a
/// clique on the labels is recomputed.  Throws std::invalid_argument when f
/// is not in TW^k.
TwkDecomposition normalize_to_twk(const LabelledGraph& f, const TreeDecomposition& td, std::size_t k);
/// Membership test; nullopt when f is not in TW^k.
std::optional<TwkDecomposition> twk_decomposition(const LabelledGraph& f, std::size_t k);

} // namespace homlab
