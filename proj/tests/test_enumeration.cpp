#include "wlg/enumeration.hpp"

#include "helpers.hpp"
#include "wlg/harness.hpp"
#include "wlg/operators.hpp"
#include "wlg/treedecomp.hpp"

#include <doctest.h>

using namespace wlg;
using namespace wlg::testing;

TEST_CASE("two-vertex multigraphs of treewidth one") {
    EnumerationSpec spec;
    spec.max_vertices = 2;
    spec.max_edge_multiplicity = 2;
    spec.treewidth_bound = 1;
    spec.simple_only = false;
    spec.connected_only = true;
    auto patterns = enumerate_patterns(spec);
    REQUIRE(patterns.size() == 3);
    CHECK(patterns[0].vertex_count() == 1);
    CHECK(patterns[1] == complete_graph(2));
    CHECK(patterns[2] == cycle_graph(2));
}

TEST_CASE("simple connected patterns up to three vertices") {
    EnumerationSpec spec;
    spec.max_vertices = 3;
    spec.max_edge_multiplicity = 1;
    spec.treewidth_bound = 1;
    spec.simple_only = true;
    spec.connected_only = true;
    auto forests = enumerate_patterns(spec);
    REQUIRE(forests.size() == 3); // K1, K2, P3

    spec.treewidth_bound = 2;
    auto with_triangle = enumerate_patterns(spec);
    REQUIRE(with_triangle.size() == 4);
    CHECK(multigraphs_isomorphic(with_triangle.back(), complete_graph(3)));
}

TEST_CASE("enumeration is duplicate-free and re-passes its filters") {
    EnumerationSpec spec;
    spec.max_vertices = 4;
    spec.max_edge_multiplicity = 2;
    spec.treewidth_bound = 1;
    spec.simple_only = false;
    spec.connected_only = true;
    auto patterns = enumerate_patterns(spec);
    for (std::size_t i = 0; i < patterns.size(); ++i) {
        CHECK(exact_treewidth(patterns[i]).width <= spec.treewidth_bound);
        CHECK(patterns[i].is_connected());
        for (std::size_t j = i + 1; j < patterns.size(); ++j)
            CHECK(!multigraphs_isomorphic(patterns[i], patterns[j]));
    }
    // Trees on 1..4 vertices with multiplicities up to 2: K1; K2, C2; P3 with
    // mults (1,1),(1,2),(2,2); P4 with 6 classes up to reversal plus the star
    // with 4 multisets.
    CHECK(patterns.size() == 1 + 2 + 3 + 10);
}

TEST_CASE("known simple-graph counts on four vertices") {
    EnumerationSpec spec;
    spec.max_vertices = 4;
    spec.max_edge_multiplicity = 1;
    spec.treewidth_bound = 3;
    spec.simple_only = true;
    spec.connected_only = false;
    // 1 + 2 + 4 + 11 graphs on exactly 1..4 vertices.
    CHECK(enumerate_patterns(spec).size() == 18);

    spec.connected_only = true;
    // 1 + 1 + 2 + 6 connected graphs.
    CHECK(enumerate_patterns(spec).size() == 10);
}

TEST_CASE("enumeration guards") {
    EnumerationSpec too_big;
    too_big.max_vertices = 7;
    CHECK(fails_with([&] { enumerate_patterns(too_big); }, "SizeLimitExceeded"));
    EnumerationSpec heavy;
    heavy.max_edge_multiplicity = 4;
    CHECK(fails_with([&] { enumerate_patterns(heavy); }, "SizeLimitExceeded"));
}

TEST_CASE("densities multiply over disjoint unions") {
    std::uint64_t state = 64;
    for (int trial = 0; trial < 6; ++trial) {
        StepGraphon w = random_step_graphon(state, 2 + static_cast<int>(draw(state, 3)));
        MultiGraph f1 = random_simple_graph(state, 1 + static_cast<int>(draw(state, 3)));
        MultiGraph f2 = random_simple_graph(state, 1 + static_cast<int>(draw(state, 3)));
        CHECK(hom_density_bruteforce(disjoint_union(f1, f2), w) ==
              hom_density_bruteforce(f1, w) * hom_density_bruteforce(f2, w));
    }
}

TEST_CASE("distinguisher search on the figure-1 pair") {
    EnumerationSpec spec;
    spec.max_vertices = 4;
    spec.max_edge_multiplicity = 3;
    spec.treewidth_bound = 1;
    spec.simple_only = false;
    spec.connected_only = true;
    auto witness = find_distinguisher(fig1_left(), fig1_right(), spec);
    REQUIRE(witness.has_value());
    CHECK(multigraphs_isomorphic(*witness, cycle_graph(2)));

    spec.treewidth_bound = 0; // only edgeless patterns: all densities are 1
    CHECK(!find_distinguisher(fig1_left(), fig1_right(), spec).has_value());
}

TEST_CASE("distinguisher for C6 versus two triangles at treewidth two") {
    EnumerationSpec spec;
    spec.max_vertices = 4;
    spec.max_edge_multiplicity = 1;
    spec.treewidth_bound = 2;
    spec.simple_only = true;
    spec.connected_only = true;
    StepGraphon c6 = graph_to_step_graphon(cycle_graph(6));
    StepGraphon cc = graph_to_step_graphon(disjoint_union(cycle_graph(3), cycle_graph(3)));
    auto witness = find_distinguisher(c6, cc, spec);
    REQUIRE(witness.has_value());
    CHECK(multigraphs_isomorphic(*witness, complete_graph(3)));
    CHECK(hom_density_bruteforce(*witness, c6).is_zero());
    CHECK(hom_density_bruteforce(*witness, cc) == Rational(1, 18));
}
