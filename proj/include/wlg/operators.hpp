#pragma once

#include "wlg/bilabeled.hpp"
#include "wlg/rational.hpp"
#include "wlg/step_graphon.hpp"

#include <vector>

namespace wlg {

// Dense rational tensor indexed by [n]^k in row-major order (coordinate 0 is
// most significant); k = 0 is a scalar. Stands in for functions on X^k.
class KTensor {
public:
    KTensor(int k, int n); // zero tensor
    static KTensor constant(int k, int n, const Rational& value);
    static KTensor ones(int k, int n) { return constant(k, n, Rational(1)); }

    int arity() const { return k_; }
    int ground_size() const { return n_; }
    std::size_t size() const { return values_.size(); }

    const Rational& at(std::size_t flat) const { return values_[flat]; }
    Rational& at(std::size_t flat) { return values_[flat]; }
    const Rational& at(const std::vector<int>& coords) const { return values_[flatten(coords)]; }
    Rational& at(const std::vector<int>& coords) { return values_[flatten(coords)]; }

    std::size_t flatten(const std::vector<int>& coords) const;
    std::vector<int> unflatten(std::size_t flat) const;

    friend bool operator==(const KTensor&, const KTensor&) = default;

private:
    int k_;
    int n_;
    std::vector<Rational> values_;
};

// mu^{(x) k}-weighted inner product: sum over [n]^k of f*g*prod(mass).
Rational inner_product(const KTensor& f, const KTensor& g, const StepGraphon& w);

// Weight of a tuple under the product measure.
Rational tuple_mass(const StepGraphon& w, const std::vector<int>& coords);

// Homomorphism density of a multigraph pattern: sum over all vertex maps of
// prod(mass) * prod(weight^multiplicity).
Rational hom_density_bruteforce(const MultiGraph& pattern, const StepGraphon& w);

// Homomorphism function of a bi-labeled graph without outputs.
KTensor hom_function(const BiLabeledGraph& f, const StepGraphon& w);

// The graphon operator of a bi-labeled graph applied to a tensor: input
// coordinates stay free, all other vertices are summed with their masses.
KTensor apply_operator(const BiLabeledGraph& f, const StepGraphon& w, const KTensor& arg);

// Evaluates a term to its homomorphism function by structural recursion
// (all-one leaf, operator application, pointwise product).
KTensor eval_term_hom(const TermPtr& t, const StepGraphon& w);

// <1, eval_term_hom(t, w)>.
Rational term_density(const TermPtr& t, const StepGraphon& w);

// Materializes the operator of an M^{k,l} graph as an n^k x n^l matrix acting
// by M*f, mass weights absorbed; square for the M^{k,k} generator families.
std::vector<std::vector<Rational>> operator_matrix(const BiLabeledGraph& f,
                                                   const StepGraphon& w);

} // namespace wlg
