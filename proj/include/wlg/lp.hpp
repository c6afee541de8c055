#pragma once

#include "wlg/linsys.hpp"
#include "wlg/multigraph.hpp"
#include "wlg/operators.hpp"
#include "wlg/step_graphon.hpp"

#include <string>
#include <utility>
#include <vector>

namespace wlg {

// A set of (left vertex, right vertex) pairs, stored sorted.
struct PartialMap {
    std::vector<std::pair<int, int>> pairs;

    explicit PartialMap(std::vector<std::pair<int, int>> p = {});
    int size() const { return static_cast<int>(pairs.size()); }
    std::string str() const;
};

// Functional in both directions and preserving both adjacency and
// non-adjacency over simple graphs.
bool is_partial_isomorphism(const PartialMap& map, const MultiGraph& g, const MultiGraph& h);

// The linear relaxation of isomorphism with a variable per pair set of size
// at most k: two-sided marginal constraints, X_empty = 1, zero pins for sets
// that are not partial isomorphisms, everything nonnegative.
LinearSystem build_Lk(const MultiGraph& g, const MultiGraph& h, int k);

// Doubly stochastic X with AX = XB over simple graphs.
LinearSystem build_doubly_stochastic_commutant(const MultiGraph& g, const MultiGraph& h);

using Matrix = std::vector<std::vector<Rational>>;

struct MarkovCommutantOptions {
    bool permutation_invariant = false;
    // Adds commutation with the one-input one-output single-edge operator
    // (the kernel operator itself); only meaningful at k = 1, where it turns
    // the system into the fractional-isomorphism analog for weighted graphs.
    bool include_kernel_operator = false;
};

struct MarkovSystem {
    LinearSystem system;
    int left_size = 0;  // n
    int right_size = 0; // m
    int k = 1;

    std::size_t left_dim() const;  // n^k
    std::size_t right_dim() const; // m^k
    int variable(std::size_t row, std::size_t col) const;
    Matrix witness_matrix(const std::vector<Rational>& witness) const;
};

// Entrywise-nonnegative S with S1 = 1, adjoint-of-S applied to 1 equal to 1
// (weighted column sums), and commutation with every generator operator of
// the level-k family on both sides.
MarkovSystem build_markov_commutant(const StepGraphon& u, const StepGraphon& w, int k,
                                    const MarkovCommutantOptions& options = {});

// forget(k) o S o introduce(k): one level down the operator hierarchy.
Matrix step_down(const Matrix& s, const StepGraphon& u, const StepGraphon& w, int k);

// Markov-operator contract for a matrix from level-k tuples of w to level-k
// tuples of u: nonnegative entries, unit row sums, mass-weighted column sums
// matching the target masses.
bool is_markov_matrix(const Matrix& s, const StepGraphon& u, const StepGraphon& w, int k);

Matrix matrix_product(const Matrix& a, const Matrix& b);
bool matrices_equal(const Matrix& a, const Matrix& b);
Matrix identity_matrix(std::size_t dim);

} // namespace wlg
