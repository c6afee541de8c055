#pragma once

#include "wlg/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace wlg {

struct LinTerm {
    int var = 0;
    Rational coeff;
};

// One equality constraint: sum of terms = rhs.
struct LinRow {
    std::vector<LinTerm> terms; // sorted by var, coefficients nonzero
    Rational rhs;
};

// Exact rational feasibility problem: equality constraints plus per-variable
// nonnegativity flags.
class LinearSystem {
public:
    int add_variable(const std::string& name, bool nonneg = true);
    int variable_index(const std::string& name) const; // -1 when absent
    int variable_count() const { return static_cast<int>(names_.size()); }
    const std::string& variable_name(int var) const { return names_[var]; }
    bool nonneg(int var) const { return nonneg_[var] != 0; }

    // Merges duplicate variables and drops zero coefficients.
    void add_row(std::vector<LinTerm> terms, Rational rhs);
    const std::vector<LinRow>& rows() const { return rows_; }

private:
    std::vector<std::string> names_;
    std::map<std::string, int> index_;
    std::vector<char> nonneg_;
    std::vector<LinRow> rows_;
};

struct FeasibilityResult {
    bool feasible = false;
    std::vector<Rational> witness; // per variable, when feasible
    std::size_t pivots = 0;
    bool decided_by_presolve = false;
};

enum class PivotRule {
    // Dantzig pricing with the lexicographic leaving rule; stall-free and
    // guaranteed to terminate.
    LexicographicDantzig,
    // Bland's smallest-index rule throughout; the textbook anti-cycling
    // reference, much slower on degenerate systems.
    Bland,
};

struct SolveOptions {
    bool presolve = true;
    PivotRule rule = PivotRule::LexicographicDantzig;
    std::size_t max_pivots = 5'000'000;
};

// Exact phase-1 simplex over rationals with an anti-cycling pivot rule,
// preceded by exact presolve (forcing rows, singleton substitutions) and
// sparse rank reduction. Every Feasible verdict carries a witness that
// re-validates by substitution.
FeasibilityResult feasible(const LinearSystem& system, const SolveOptions& options = {});

// Exact substitution check of a full witness vector.
bool check_witness(const LinearSystem& system, const std::vector<Rational>& witness);

} // namespace wlg
