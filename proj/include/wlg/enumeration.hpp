#pragma once

#include "wlg/multigraph.hpp"
#include "wlg/step_graphon.hpp"

#include <optional>
#include <vector>

namespace wlg {

struct EnumerationSpec {
    int max_vertices = 5;
    int max_edge_multiplicity = 3;
    int treewidth_bound = 1;
    bool simple_only = false;
    bool connected_only = true;
};

// One representative per isomorphism class, in ascending (vertex count,
// total edge multiplicity, canonical key) order; treewidth filtered exactly.
std::vector<MultiGraph> enumerate_patterns(const EnumerationSpec& spec);

// First enumerated pattern with distinct homomorphism densities in the two
// step graphons; the spec's treewidth bound should be k-1.
std::optional<MultiGraph> find_distinguisher(const StepGraphon& w1, const StepGraphon& w2,
                                             const EnumerationSpec& spec);

} // namespace wlg
