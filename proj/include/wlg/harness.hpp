#pragma once

#include "wlg/enumeration.hpp"
#include "wlg/lp.hpp"
#include "wlg/multigraph.hpp"
#include "wlg/refinement.hpp"
#include "wlg/step_graphon.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace wlg {

enum class Consistency { Consistent, PaperViolation, InconclusiveBudget };

std::string consistency_str(Consistency c);

// One cross-validated pair: per-characterization verdicts plus the overall
// classification. PaperViolation means two characterizations proved
// equivalent returned contradictory definite verdicts; InconclusiveBudget
// marks a reverse direction whose witness search ran out of budget.
struct EquivalenceReport {
    std::string pair_id;
    std::vector<std::pair<std::string, std::string>> verdicts;
    Consistency classification = Consistency::Consistent;
    std::string details;
    std::vector<std::string> warnings;

    std::string verdict(const std::string& name) const;
    std::string str() const;
};

struct GraphPair {
    std::string name;
    MultiGraph left;
    MultiGraph right;
};

struct GraphonPair {
    std::string name;
    StepGraphon left;
    StepGraphon right;
};

// A feasible Markov-commutant solution, kept for step-down validation.
struct MarkovWitness {
    std::string origin;
    StepGraphon left;
    StepGraphon right;
    int k = 1;
    bool permutation_invariant = false;
    Matrix matrix;
};

// Tree densities, colref fingerprints, stable-partition parameters
// and the doubly stochastic commutant, cross-checked per pair.
std::vector<EquivalenceReport> run_colref_suite(const std::vector<GraphPair>& pairs);

// Oblivious (k+1)-WL in graph mode against the level-(k+1) pair-set
// relaxation (hard biconditional), with a density check on enumerated
// patterns of treewidth at most k.
std::vector<EquivalenceReport> run_kwl_suite(const std::vector<GraphPair>& pairs, int k,
                                             std::vector<MarkovWitness>* collector = nullptr);

// Oblivious k-WL fingerprints against enumerated multigraph densities
// (forward hard, reverse budgeted) and the Markov commutant (warning-grade
// on these atomic spaces).
std::vector<EquivalenceReport> run_graphon_suite(const std::vector<GraphonPair>& pairs,
                                                 int k,
                                                 std::vector<MarkovWitness>* collector = nullptr);

// Simple k-WL fingerprints against enumerated simple-pattern densities.
std::vector<EquivalenceReport> run_simple_suite(const std::vector<GraphonPair>& pairs, int k);

struct Fig1Report {
    bool colref_equal = false;
    int owl2_first_differing_round = -1;
    Rational c2_left, c2_right;
    bool simple2_equal = false;
    bool simple3_equal = true;
    Rational k3_left, k3_right;
    bool markov1_feasible = false;
    Matrix markov1_witness;

    bool as_expected() const;
    std::string str() const;
};

// The built-in weighted counterexample pair: fractionally isomorphic, equal
// under simple 2-WL, separated by oblivious 2-WL and by the parallel edge.
Fig1Report counterexample_fig1();

// Seeded pair generators used by the harness CLI and the acceptance suite;
// reproducible across runs for a fixed seed.
std::vector<GraphPair> seeded_graph_pairs(std::uint64_t seed, int count, int max_vertices);
std::vector<GraphonPair> seeded_graphon_pairs(std::uint64_t seed, int count,
                                              int max_vertices);

MultiGraph random_simple_graph(std::uint64_t& state, int n);
StepGraphon random_step_graphon(std::uint64_t& state, int n);

// Stable-partition parameters of two step graphons match up to a class
// bijection (class masses and class-to-class weighted degrees).
bool same_stable_parameters(const StepGraphon& w1, const StepGraphon& w2);

} // namespace wlg
