#include "wlg/linsys.hpp"

#include "wlg/error.hpp"

#include <algorithm>
#include <numeric>

namespace wlg {

int LinearSystem::add_variable(const std::string& name, bool nonneg) {
    auto it = index_.find(name);
    if (it != index_.end()) return it->second;
    int var = static_cast<int>(names_.size());
    index_.emplace(name, var);
    names_.push_back(name);
    nonneg_.push_back(nonneg ? 1 : 0);
    return var;
}

int LinearSystem::variable_index(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? -1 : it->second;
}

void LinearSystem::add_row(std::vector<LinTerm> terms, Rational rhs) {
    std::sort(terms.begin(), terms.end(),
              [](const LinTerm& a, const LinTerm& b) { return a.var < b.var; });
    std::vector<LinTerm> merged;
    for (LinTerm& t : terms) {
        require(t.var >= 0 && t.var < variable_count(), "VertexOutOfRange",
                "row references an unknown variable");
        if (!merged.empty() && merged.back().var == t.var)
            merged.back().coeff += t.coeff;
        else
            merged.push_back(std::move(t));
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const LinTerm& t) { return t.coeff.is_zero(); }),
                 merged.end());
    rows_.push_back(LinRow{std::move(merged), std::move(rhs)});
}

bool check_witness(const LinearSystem& system, const std::vector<Rational>& witness) {
    if (static_cast<int>(witness.size()) != system.variable_count()) return false;
    for (int v = 0; v < system.variable_count(); ++v)
        if (system.nonneg(v) && witness[v] < Rational(0)) return false;
    for (const LinRow& row : system.rows()) {
        Rational total(0);
        for (const LinTerm& t : row.terms) total += t.coeff * witness[t.var];
        if (total != row.rhs) return false;
    }
    return true;
}

namespace {

using SparseRow = std::pair<std::vector<LinTerm>, Rational>; // terms sorted by var, = rhs

// a -= factor * b, keeping terms sorted and nonzero. The factor is taken by
// value: callers pass coefficients living inside `a`.
void axpy(SparseRow& a, const Rational factor, const SparseRow& b) {
    std::vector<LinTerm> out;
    out.reserve(a.first.size() + b.first.size());
    std::size_t i = 0, j = 0;
    while (i < a.first.size() || j < b.first.size()) {
        if (j == b.first.size() ||
            (i < a.first.size() && a.first[i].var < b.first[j].var)) {
            out.push_back(a.first[i++]);
        } else if (i == a.first.size() || b.first[j].var < a.first[i].var) {
            out.push_back({b.first[j].var, -factor * b.first[j].coeff});
            if (out.back().coeff.is_zero()) out.pop_back();
            ++j;
        } else {
            Rational c = a.first[i].coeff - factor * b.first[j].coeff;
            if (!c.is_zero()) out.push_back({a.first[i].var, std::move(c)});
            ++i;
            ++j;
        }
    }
    a.first = std::move(out);
    a.second -= factor * b.second;
}

struct Presolve {
    const LinearSystem& system;
    std::vector<std::optional<Rational>> fixed;
    bool infeasible = false;

    explicit Presolve(const LinearSystem& sys)
        : system(sys), fixed(sys.variable_count()) {}

    bool fix(int var, const Rational& value) {
        if (system.nonneg(var) && value < Rational(0)) {
            infeasible = true;
            return false;
        }
        if (fixed[var]) {
            if (*fixed[var] != value) infeasible = true;
            return false;
        }
        fixed[var] = value;
        return true;
    }

    void run() {
        bool changed = true;
        while (changed && !infeasible) {
            changed = false;
            for (const LinRow& row : system.rows()) {
                Rational rhs = row.rhs;
                std::vector<const LinTerm*> open;
                for (const LinTerm& t : row.terms) {
                    if (fixed[t.var])
                        rhs -= t.coeff * *fixed[t.var];
                    else
                        open.push_back(&t);
                }
                if (open.empty()) {
                    if (!rhs.is_zero()) infeasible = true;
                    continue;
                }
                if (open.size() == 1) {
                    changed |= fix(open[0]->var, rhs / open[0]->coeff);
                    continue;
                }
                // Forcing rows: a one-signed combination of nonnegative
                // variables pins them all at zero or is contradictory.
                bool all_nonneg = std::all_of(open.begin(), open.end(),
                                              [&](const LinTerm* t) {
                                                  return system.nonneg(t->var);
                                              });
                if (!all_nonneg) continue;
                bool all_pos = std::all_of(open.begin(), open.end(), [](const LinTerm* t) {
                    return t->coeff > Rational(0);
                });
                bool all_neg = std::all_of(open.begin(), open.end(), [](const LinTerm* t) {
                    return t->coeff < Rational(0);
                });
                if (all_pos && rhs.is_zero()) {
                    for (const LinTerm* t : open) changed |= fix(t->var, Rational(0));
                } else if (all_pos && rhs < Rational(0)) {
                    infeasible = true;
                } else if (all_neg && rhs.is_zero()) {
                    for (const LinTerm* t : open) changed |= fix(t->var, Rational(0));
                } else if (all_neg && rhs > Rational(0)) {
                    infeasible = true;
                }
                if (infeasible) return;
            }
        }
    }
};

// Integer-preserving phase-1 tableau: every row shares the denominator
// `denom` (the magnitude of the current basis determinant), entries stay
// integral through pivots and the single division per update is exact.
struct Simplex {
    std::vector<std::vector<BigInt>> rows; // m x (total_cols + 1), last entry = rhs
    std::vector<BigInt> objective;         // scaled reduced costs, last = -value
    std::vector<int> basis;                // per row, column index
    BigInt denom = 1;
    int structural_cols = 0;
    int total_cols = 0;
    std::size_t pivots = 0;

    static BigInt exact_div(const BigInt& num, const BigInt& den) {
        BigInt q, r;
        boost::multiprecision::divide_qr(num, den, q, r);
        require(r.is_zero(), "InternalError", "integer pivot division was not exact");
        return q;
    }

    // The factor is taken by value: callers pass entries of `row` itself.
    void update_row(std::vector<BigInt>& row, const BigInt factor,
                    const std::vector<BigInt>& pivot_row, const BigInt& p) {
        for (int c = 0; c <= total_cols; ++c) {
            if (pivot_row[c].is_zero()) {
                if (!row[c].is_zero()) row[c] = exact_div(row[c] * p, denom);
            } else {
                row[c] = exact_div(row[c] * p - factor * pivot_row[c], denom);
            }
        }
    }

    void pivot(int row, int col) {
        const BigInt p = rows[row][col]; // > 0
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (static_cast<int>(r) == row) continue;
            update_row(rows[r], rows[r][col], rows[row], p);
        }
        update_row(objective, objective[col], rows[row], p);
        denom = p;
        basis[row] = col;
        ++pivots;
    }

    // Lexicographic comparison of rows a and b scaled by their (positive)
    // pivot-column entries: rhs first, then the columns left to right. The
    // shared denominator cancels.
    bool lex_smaller(int a, int b, int col) const {
        const BigInt& pa = rows[a][col];
        const BigInt& pb = rows[b][col];
        BigInt lhs = rows[a][total_cols] * pb;
        BigInt rhs = rows[b][total_cols] * pa;
        if (lhs != rhs) return lhs < rhs;
        for (int c = 0; c < total_cols; ++c) {
            lhs = rows[a][c] * pb;
            rhs = rows[b][c] * pa;
            if (lhs != rhs) return lhs < rhs;
        }
        return false; // proportional rows cannot occur among independent rows
    }

    void solve(std::size_t max_pivots, PivotRule rule) {
        const BigInt zero(0);
        for (;;) {
            require(pivots <= max_pivots, "PivotLimitExceeded",
                    "simplex exceeded the pivot budget");
            int entering = -1;
            if (rule == PivotRule::Bland) {
                for (int c = 0; c < structural_cols; ++c)
                    if (objective[c] < zero) {
                        entering = c;
                        break;
                    }
            } else {
                for (int c = 0; c < structural_cols; ++c)
                    if (objective[c] < zero &&
                        (entering < 0 || objective[c] < objective[entering]))
                        entering = c;
            }
            if (entering < 0) return; // optimal

            int leaving = -1;
            if (rule == PivotRule::Bland) {
                for (std::size_t r = 0; r < rows.size(); ++r) {
                    if (rows[r][entering] <= zero) continue;
                    if (leaving < 0) {
                        leaving = static_cast<int>(r);
                        continue;
                    }
                    BigInt lhs = rows[r][total_cols] * rows[leaving][entering];
                    BigInt rhs = rows[leaving][total_cols] * rows[r][entering];
                    if (lhs < rhs || (lhs == rhs && basis[r] < basis[leaving]))
                        leaving = static_cast<int>(r);
                }
            } else {
                for (std::size_t r = 0; r < rows.size(); ++r) {
                    if (rows[r][entering] <= zero) continue;
                    if (leaving < 0 || lex_smaller(static_cast<int>(r), leaving, entering))
                        leaving = static_cast<int>(r);
                }
            }
            // The phase-1 objective is bounded below by zero.
            require(leaving >= 0, "InternalError", "unbounded phase-1 objective");
            pivot(leaving, entering);
        }
    }
};

} // namespace

FeasibilityResult feasible(const LinearSystem& system, const SolveOptions& options) {
    FeasibilityResult result;

    Presolve presolve(system);
    if (options.presolve) presolve.run();
    if (presolve.infeasible) {
        result.decided_by_presolve = true;
        return result;
    }

    // Compact the unfixed variables; split free ones into two nonnegative
    // columns.
    const int n = system.variable_count();
    std::vector<int> column_of(n, -1), negative_column_of(n, -1);
    int cols = 0;
    for (int v = 0; v < n; ++v) {
        if (presolve.fixed[v]) continue;
        column_of[v] = cols++;
        if (!system.nonneg(v)) negative_column_of[v] = cols++;
    }

    // Residual rows in sparse form, then rank reduction by leading column.
    std::map<int, SparseRow> pivot_rows;
    for (const LinRow& row : system.rows()) {
        SparseRow r;
        r.second = row.rhs;
        std::vector<LinTerm> terms;
        for (const LinTerm& t : row.terms) {
            if (presolve.fixed[t.var]) {
                r.second -= t.coeff * *presolve.fixed[t.var];
                continue;
            }
            terms.push_back({column_of[t.var], t.coeff});
            if (negative_column_of[t.var] >= 0)
                terms.push_back({negative_column_of[t.var], -t.coeff});
        }
        std::sort(terms.begin(), terms.end(),
                  [](const LinTerm& a, const LinTerm& b) { return a.var < b.var; });
        r.first = std::move(terms);
        while (!r.first.empty()) {
            auto it = pivot_rows.find(r.first.front().var);
            if (it == pivot_rows.end()) break;
            axpy(r, r.first.front().coeff, it->second);
        }
        if (r.first.empty()) {
            if (!r.second.is_zero()) {
                result.decided_by_presolve = true; // inconsistent before any pivot
                return result;
            }
            continue;
        }
        const Rational lead = r.first.front().coeff;
        for (LinTerm& t : r.first) t.coeff /= lead;
        r.second /= lead;
        pivot_rows.emplace(r.first.front().var, std::move(r));
    }

    const int m = static_cast<int>(pivot_rows.size());
    std::vector<Rational> solution(cols, Rational(0));
    if (m > 0) {
        Simplex simplex;
        simplex.structural_cols = cols;
        simplex.total_cols = cols + m;
        simplex.rows.assign(m, std::vector<BigInt>(cols + m + 1, BigInt(0)));
        simplex.objective.assign(cols + m + 1, BigInt(0));
        simplex.basis.resize(m);
        int i = 0;
        for (const auto& [lead, row] : pivot_rows) {
            // Scale the row to integers; artificial coefficients stay 1, so
            // the artificial basis is the identity and denom starts at 1.
            BigInt scale(1);
            for (const LinTerm& t : row.first)
                scale = boost::multiprecision::lcm(scale, t.coeff.denominator());
            scale = boost::multiprecision::lcm(scale, row.second.denominator());
            Rational factor(row.second < Rational(0) ? -scale : scale, BigInt(1));
            for (const LinTerm& t : row.first) {
                Rational value = t.coeff * factor;
                simplex.rows[i][t.var] = value.numerator();
            }
            Rational rhs_value = row.second * factor;
            simplex.rows[i][cols + m] = rhs_value.numerator();
            simplex.rows[i][cols + i] = 1;
            simplex.basis[i] = cols + i;
            ++i;
        }
        // Phase-1 objective: minimize the artificial sum.
        for (int r = 0; r < m; ++r)
            for (int c = 0; c <= simplex.total_cols; ++c) {
                if (c >= cols && c < cols + m) continue;
                simplex.objective[c] -= simplex.rows[r][c];
            }
        simplex.solve(options.max_pivots, options.rule);
        result.pivots = simplex.pivots;
        // -objective[last] is the scaled achieved artificial sum.
        if (!simplex.objective[simplex.total_cols].is_zero()) return result;
        for (int r = 0; r < m; ++r)
            if (simplex.basis[r] < cols)
                solution[simplex.basis[r]] =
                    Rational(simplex.rows[r][cols + m], simplex.denom);
    }

    result.feasible = true;
    result.witness.assign(n, Rational(0));
    for (int v = 0; v < n; ++v) {
        if (presolve.fixed[v]) {
            result.witness[v] = *presolve.fixed[v];
        } else {
            result.witness[v] = solution[column_of[v]];
            if (negative_column_of[v] >= 0)
                result.witness[v] -= solution[negative_column_of[v]];
        }
    }
    require(check_witness(system, result.witness), "InternalError",
            "feasible verdict produced a witness that fails substitution");
    return result;
}

} // namespace wlg
