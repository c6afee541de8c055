#pragma once

#include "wlg/bilabeled.hpp"
#include "wlg/multigraph.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace wlg {

struct TreeDecomposition {
    std::vector<std::vector<int>> bags;
    std::vector<std::pair<int, int>> tree_edges;
    std::optional<int> root;

    std::string to_json() const;
    static TreeDecomposition from_json(const std::string& text);
};

// Checks the three tree-decomposition axioms and returns the width.
int validate(const MultiGraph& g, const TreeDecomposition& td);

struct TreewidthResult {
    int width = 0;
    TreeDecomposition witness;
};

// Exact treewidth by dynamic programming over elimination orderings
// (2^n states); multiplicities are ignored. Guarded at 10 vertices.
TreewidthResult exact_treewidth(const MultiGraph& g);

struct NiceNode {
    enum class Kind { Leaf, Introduce, Forget, Join };
    Kind kind = Kind::Leaf;
    int vertex = -1; // introduced/forgotten vertex
    std::vector<int> bag; // sorted
    std::vector<int> children;
};

struct NiceTreeDecomposition {
    std::vector<NiceNode> nodes;
    int root = -1;

    int width() const;
};

// Rooted expansion with empty root and leaf bags, one-vertex deltas and
// equal-bag binary joins; never increases the width.
NiceTreeDecomposition make_nice(const MultiGraph& g, const TreeDecomposition& td);

// Checks all nice-tree-decomposition invariants including the underlying
// decomposition axioms.
void validate_nice(const MultiGraph& g, const NiceTreeDecomposition& ntd);

// Compiles a nice tree decomposition of width <= k-1 into a term whose
// evaluation is g plus isolated vertices. Every edge of multiplicity m is
// emitted as m adjacency compositions at the forget node of its
// first-forgotten endpoint; joins re-align slots with a permutation graph
// before the Schur product.
TermPtr nice_td_to_term(const MultiGraph& g, const NiceTreeDecomposition& ntd, int k);

// Same compilation over adj-nei generators only; requires a simple graph and
// emits each vertex's pending edges in the single adj-nei step that forgets it.
TermPtr nice_td_to_simple_term(const MultiGraph& g, const NiceTreeDecomposition& ntd, int k);

} // namespace wlg
