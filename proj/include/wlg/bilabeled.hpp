#pragma once

#include "wlg/multigraph.hpp"

#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace wlg {

// Multigraph with vectors of input and output labeled vertices. Entries of
// each vector are pairwise distinct; one vertex may carry one label of each
// kind. All indices are 0-based internally, 1-based in the text formats.
struct BiLabeledGraph {
    MultiGraph graph;
    std::vector<int> inputs;
    std::vector<int> outputs;

    int input_arity() const { return static_cast<int>(inputs.size()); }
    int output_arity() const { return static_cast<int>(outputs.size()); }

    void validate() const;
    std::string to_json() const;
    static BiLabeledGraph from_json(const std::string& text);
};

// Generator families. One(k) is the k-input all-one graph; Neighbor, Adjacency,
// AdjNei, Permutation and NonObliviousSimple live in M^{k,k}; Introduce is in
// M^{k,k-1} and Forget in M^{k-1,k}.
struct GenOne { int k; };
struct GenNeighbor { int k; int j; };
struct GenAdjacency { int k; int i; int j; };
struct GenIntroduce { int k; int j; };
struct GenForget { int k; int j; };
struct GenPermutation { int k; std::vector<int> perm; }; // slot i of result <- slot perm[i]
struct GenAdjNei { int k; int j; std::vector<int> incident; }; // edges i-j for i in incident, then replace j
struct GenNonObliviousSimple { int k; int j1; std::vector<int> incident; int j2; };

using Generator = std::variant<GenOne, GenNeighbor, GenAdjacency, GenIntroduce, GenForget,
                               GenPermutation, GenAdjNei, GenNonObliviousSimple>;

BiLabeledGraph make_generator(const Generator& g);

// Arity of the generator as an element of M^{in,out}.
int generator_input_arity(const Generator& g);
int generator_output_arity(const Generator& g);
std::string generator_str(const Generator& g);

// Gluing outputs of a to inputs of b; parallel edges accumulate.
BiLabeledGraph compose(const BiLabeledGraph& a, const BiLabeledGraph& b);
// Input-wise gluing of two graphs without outputs.
BiLabeledGraph schur(const BiLabeledGraph& a, const BiLabeledGraph& b);
BiLabeledGraph transpose(const BiLabeledGraph& g);

// Edge-multiplicity-preserving bijection mapping labels positionally;
// brute force with degree pruning, guarded at 10 vertices.
bool are_isomorphic(const BiLabeledGraph& a, const BiLabeledGraph& b);

// Term language: the closure of the all-one graph under composition with
// M^{k,k} generators and the Schur product.
class Term;
using TermPtr = std::shared_ptr<const Term>;

class Term {
public:
    struct One { int k; };
    struct Compose { Generator gen; TermPtr rest; };
    struct Schur { TermPtr left; TermPtr right; };

    static TermPtr one(int k);
    static TermPtr compose(Generator gen, TermPtr rest);
    static TermPtr schur(TermPtr left, TermPtr right);

    const std::variant<One, Compose, Schur>& node() const { return node_; }
    int arity() const { return arity_; }

private:
    explicit Term(std::variant<One, Compose, Schur> node, int arity)
        : node_(std::move(node)), arity_(arity) {}
    std::variant<One, Compose, Schur> node_;
    int arity_;
};

BiLabeledGraph eval_term(const TermPtr& t);
// Neighbor steps nest one level deeper; adjacency and permutation steps are free.
int height(const TermPtr& t);

// S-expression format: (one k) | (comp GEN TERM) | (schur TERM TERM) with
// GEN ::= (N k j) | (A k i j) | (P k p1 ... pk) | (S k j (V...)); 1-based.
std::string term_to_string(const TermPtr& t);
TermPtr parse_term(const std::string& text);

} // namespace wlg
