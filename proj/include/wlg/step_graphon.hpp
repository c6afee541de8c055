#pragma once

#include "wlg/multigraph.hpp"
#include "wlg/rational.hpp"

#include <string>
#include <vector>

namespace wlg {

// Finite stand-in for a graphon: vertex masses summing to one and a
// symmetric weight matrix with entries in [0,1]. Diagonal entries may be
// nonzero (weighted loops on the target side are allowed).
class StepGraphon {
public:
    StepGraphon(std::vector<Rational> masses, std::vector<std::vector<Rational>> weights);

    int size() const { return static_cast<int>(masses_.size()); }
    const Rational& mass(int x) const { return masses_[x]; }
    const std::vector<Rational>& masses() const { return masses_; }
    const Rational& weight(int x, int y) const { return weights_[x][y]; }

    bool is_zero_one() const;     // all weights in {0,1}
    bool is_loop_free() const;    // zero diagonal
    bool has_uniform_masses() const;

    StepGraphon permuted(const std::vector<int>& perm) const;

    std::string to_json() const;

    friend bool operator==(const StepGraphon&, const StepGraphon&) = default;

private:
    std::vector<Rational> masses_;
    std::vector<std::vector<Rational>> weights_;
};

// Parses the {"masses":[...],"weights":[[...]]} document with rationals as
// strings "p/q" or "p". Every invariant is checked; zero masses are rejected
// with their own error code.
StepGraphon parse_step_graphon(const std::string& text);

// Embeds a simple graph as a step graphon: uniform masses, 0/1 weights.
StepGraphon graph_to_step_graphon(const MultiGraph& g);

// Same vertex set, every multiplicity collapsed to 1.
MultiGraph simplify_multigraph(const MultiGraph& g);

// The two weighted graphs of the introduction's counterexample: the triangle
// and its degree-averaged companion with constant weight 2/3.
StepGraphon fig1_left();
StepGraphon fig1_right();

} // namespace wlg
