#include "wlg/lp.hpp"

#include "helpers.hpp"
#include "wlg/harness.hpp"
#include "wlg/linsys.hpp"
#include "wlg/refinement.hpp"

#include <doctest.h>

using namespace wlg;
using namespace wlg::testing;

namespace {

LinearSystem tiny(bool feasible_case) {
    LinearSystem sys;
    int x = sys.add_variable("x", true);
    sys.add_row({{x, Rational(1)}}, feasible_case ? Rational(1) : Rational(-1));
    return sys;
}

} // namespace

TEST_CASE("feasibility of one-variable systems") {
    FeasibilityResult good = feasible(tiny(true));
    CHECK(good.feasible);
    CHECK(good.witness[0] == Rational(1));
    CHECK(check_witness(tiny(true), good.witness));

    FeasibilityResult bad = feasible(tiny(false));
    CHECK(!bad.feasible);
}

TEST_CASE("free variables are supported") {
    LinearSystem sys;
    int x = sys.add_variable("x", false);
    int y = sys.add_variable("y", true);
    sys.add_row({{x, Rational(1)}, {y, Rational(1)}}, Rational(-3));
    FeasibilityResult r = feasible(sys);
    REQUIRE(r.feasible);
    CHECK(check_witness(sys, r.witness));
    CHECK(r.witness[0] <= Rational(-3));
}

TEST_CASE("presolve and pure simplex agree on random small systems") {
    std::uint64_t state = 2024;
    for (int trial = 0; trial < 60; ++trial) {
        LinearSystem sys;
        int vars = 2 + static_cast<int>(draw(state, 4));
        for (int v = 0; v < vars; ++v)
            sys.add_variable("v" + std::to_string(v), draw(state, 4) != 0);
        int rows = 1 + static_cast<int>(draw(state, 4));
        for (int r = 0; r < rows; ++r) {
            std::vector<LinTerm> terms;
            for (int v = 0; v < vars; ++v)
                if (draw(state, 2) == 0)
                    terms.push_back({v, Rational(static_cast<long long>(draw(state, 5)) - 2)});
            sys.add_row(std::move(terms),
                        Rational(static_cast<long long>(draw(state, 5)) - 2));
        }
        SolveOptions with, without;
        without.presolve = false;
        FeasibilityResult a = feasible(sys, with);
        FeasibilityResult b = feasible(sys, without);
        CHECK(a.feasible == b.feasible);
        if (a.feasible) {
            CHECK(check_witness(sys, a.witness));
            CHECK(check_witness(sys, b.witness));
        }
    }
}

TEST_CASE("partial isomorphism on the basic examples") {
    MultiGraph k2 = complete_graph(2);
    MultiGraph e2 = edgeless_graph(2);
    CHECK(is_partial_isomorphism(PartialMap{}, k2, k2));
    CHECK(is_partial_isomorphism(PartialMap{{{0, 0}, {1, 1}}}, k2, k2));
    CHECK(!is_partial_isomorphism(PartialMap{{{0, 0}, {1, 1}}}, k2, e2));
    CHECK(!is_partial_isomorphism(PartialMap{{{0, 0}, {0, 1}}}, k2, k2));
    CHECK(!is_partial_isomorphism(PartialMap{{{0, 1}, {1, 1}}}, k2, k2));
}

TEST_CASE("pair-set relaxation on the curated pairs") {
    MultiGraph c6 = cycle_graph(6);
    MultiGraph cc = disjoint_union(cycle_graph(3), cycle_graph(3));

    FeasibilityResult l2 = feasible(build_Lk(c6, cc, 2));
    CHECK(l2.feasible);

    FeasibilityResult l3 = feasible(build_Lk(c6, cc, 3));
    CHECK(!l3.feasible);

    FeasibilityResult self = feasible(build_Lk(complete_graph(3), complete_graph(3), 2));
    REQUIRE(self.feasible);
    CHECK(check_witness(build_Lk(complete_graph(3), complete_graph(3), 2), self.witness));

    CHECK(feasible(build_Lk(complete_graph(2), complete_graph(2), 2)).feasible);
    CHECK(!feasible(build_Lk(complete_graph(2), edgeless_graph(2), 2)).feasible);
}

TEST_CASE("doubly stochastic commutant on the curated pairs") {
    CHECK(feasible(build_doubly_stochastic_commutant(complete_graph(2), complete_graph(2)))
              .feasible);
    CHECK(feasible(build_doubly_stochastic_commutant(
                       cycle_graph(6), disjoint_union(cycle_graph(3), cycle_graph(3))))
              .feasible);
    CHECK(!feasible(build_doubly_stochastic_commutant(complete_graph(2), edgeless_graph(2)))
               .feasible);
}

TEST_CASE("doubly stochastic witnesses really are doubly stochastic") {
    MultiGraph c6 = cycle_graph(6);
    MultiGraph cc = disjoint_union(cycle_graph(3), cycle_graph(3));
    LinearSystem sys = build_doubly_stochastic_commutant(c6, cc);
    FeasibilityResult r = feasible(sys);
    REQUIRE(r.feasible);
    for (int v = 0; v < 6; ++v) {
        Rational row(0), col(0);
        for (int w = 0; w < 6; ++w) {
            row += r.witness[sys.variable_index("X[" + std::to_string(v) + "," +
                                                std::to_string(w) + "]")];
            col += r.witness[sys.variable_index("X[" + std::to_string(w) + "," +
                                                std::to_string(v) + "]")];
        }
        CHECK(row == Rational(1));
        CHECK(col == Rational(1));
    }
}

TEST_CASE("markov commutant of a graphon with itself is feasible") {
    std::uint64_t state = 404;
    StepGraphon w = random_step_graphon(state, 3);
    for (int k = 1; k <= 2; ++k) {
        MarkovSystem ms = build_markov_commutant(w, w, k);
        FeasibilityResult r = feasible(ms.system);
        REQUIRE(r.feasible);
        CHECK(is_markov_matrix(ms.witness_matrix(r.witness), w, w, k));
    }
}

TEST_CASE("markov commutant on the figure-1 pair") {
    const StepGraphon left = fig1_left();
    const StepGraphon right = fig1_right();

    MarkovCommutantOptions kernel;
    kernel.include_kernel_operator = true;
    kernel.permutation_invariant = true;
    MarkovSystem ms1 = build_markov_commutant(left, right, 1, kernel);
    FeasibilityResult r1 = feasible(ms1.system);
    REQUIRE(r1.feasible);
    Matrix s = ms1.witness_matrix(r1.witness);
    CHECK(is_markov_matrix(s, left, right, 1));
    // Kernel-operator commutation as matrices.
    MultiGraph k2 = complete_graph(2);
    BiLabeledGraph kernel_graph{k2, {0}, {1}};
    CHECK(matrices_equal(matrix_product(operator_matrix(kernel_graph, left), s),
                         matrix_product(s, operator_matrix(kernel_graph, right))));

    MarkovSystem ms2 = build_markov_commutant(left, right, 2);
    CHECK(!feasible(ms2.system).feasible);
}

TEST_CASE("step-down of the identity is the identity") {
    std::uint64_t state = 11;
    StepGraphon w = random_step_graphon(state, 3);
    Matrix identity = identity_matrix(9);
    Matrix down = step_down(identity, w, w, 2);
    CHECK(matrices_equal(down, identity_matrix(3)));
}

TEST_CASE("step-down of the swap operator is the rank-one averaging operator") {
    std::uint64_t state = 17;
    StepGraphon w = random_step_graphon(state, 3);
    Matrix swap = operator_matrix(make_generator(GenPermutation{2, {1, 0}}), w);
    Matrix down = step_down(swap, w, w, 2);
    // f goes to the constant <f> = sum mass(y) f(y).
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y)
            CHECK(down[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] ==
                  w.mass(y));
}

TEST_CASE("step-down laws on a feasible permutation-invariant witness") {
    std::uint64_t state = 3;
    StepGraphon w = random_step_graphon(state, 3);
    std::vector<int> perm{2, 0, 1};
    StepGraphon u = w.permuted(perm);

    MarkovCommutantOptions options;
    options.permutation_invariant = true;
    MarkovSystem ms = build_markov_commutant(u, w, 2, options);
    FeasibilityResult r = feasible(ms.system);
    REQUIRE(r.feasible);
    Matrix s = ms.witness_matrix(r.witness);

    Matrix down = step_down(s, u, w, 2);
    CHECK(is_markov_matrix(down, u, w, 1));

    // S(f tensor 1) = (S down f) tensor 1, as matrices: S . Intro = Intro . S down.
    Matrix intro_w = operator_matrix(make_generator(GenIntroduce{2, 1}), w);
    Matrix intro_u = operator_matrix(make_generator(GenIntroduce{2, 1}), u);
    CHECK(matrices_equal(matrix_product(s, intro_w), matrix_product(intro_u, down)));

    // Slot independence: both forget/introduce pairs give the same step-down.
    Matrix f0 = operator_matrix(make_generator(GenForget{2, 0}), u);
    Matrix i0 = operator_matrix(make_generator(GenIntroduce{2, 0}), w);
    CHECK(matrices_equal(matrix_product(matrix_product(f0, s), i0), down));

    // The hierarchy ends at the identity on the scalars.
    Matrix down0 = step_down(down, u, w, 1);
    CHECK(matrices_equal(down0, identity_matrix(1)));
}

TEST_CASE("witnesses always re-validate by substitution") {
    std::uint64_t state = 202;
    for (int trial = 0; trial < 5; ++trial) {
        int n = 2 + static_cast<int>(draw(state, 3));
        MultiGraph g = random_simple_graph(state, n);
        MultiGraph h = random_simple_graph(state, n);
        LinearSystem sys = build_Lk(g, h, 2);
        FeasibilityResult r = feasible(sys);
        if (r.feasible) CHECK(check_witness(sys, r.witness));
    }
}
