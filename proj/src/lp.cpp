#include "wlg/lp.hpp"

#include "wlg/bilabeled.hpp"
#include "wlg/error.hpp"

#include <algorithm>
#include <sstream>

namespace wlg {

PartialMap::PartialMap(std::vector<std::pair<int, int>> p) : pairs(std::move(p)) {
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
}

std::string PartialMap::str() const {
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < pairs.size(); ++i)
        os << (i ? "," : "") << "(" << pairs[i].first << "," << pairs[i].second << ")";
    os << "}";
    return os.str();
}

bool is_partial_isomorphism(const PartialMap& map, const MultiGraph& g, const MultiGraph& h) {
    for (std::size_t i = 0; i < map.pairs.size(); ++i)
        for (std::size_t j = i + 1; j < map.pairs.size(); ++j) {
            const auto& [v1, w1] = map.pairs[i];
            const auto& [v2, w2] = map.pairs[j];
            if (v1 == v2 || w1 == w2) return false; // not a well-defined injection
            if (g.adjacent(v1, v2) != h.adjacent(w1, w2)) return false;
        }
    return true;
}

namespace {

std::string pair_set_name(const std::vector<std::pair<int, int>>& pairs) {
    std::ostringstream os;
    os << "X{";
    for (std::size_t i = 0; i < pairs.size(); ++i)
        os << (i ? "," : "") << pairs[i].first << ":" << pairs[i].second;
    os << "}";
    return os.str();
}

// All subsets of V(G) x V(H) with at most k pairs, in size-then-lex order.
std::vector<std::vector<std::pair<int, int>>> enumerate_pair_sets(int n, int m, int k) {
    std::vector<std::pair<int, int>> cells;
    for (int v = 0; v < n; ++v)
        for (int w = 0; w < m; ++w) cells.emplace_back(v, w);
    std::vector<std::vector<std::pair<int, int>>> out;
    std::vector<std::pair<int, int>> current;
    const auto recurse = [&](auto&& self, std::size_t from, int remaining) -> void {
        out.push_back(current);
        if (remaining == 0) return;
        for (std::size_t c = from; c < cells.size(); ++c) {
            current.push_back(cells[c]);
            self(self, c + 1, remaining - 1);
            current.pop_back();
        }
    };
    recurse(recurse, 0, k);
    std::stable_sort(out.begin(), out.end(),
                     [](const auto& a, const auto& b) { return a.size() < b.size(); });
    return out;
}

} // namespace

LinearSystem build_Lk(const MultiGraph& g, const MultiGraph& h, int k) {
    require(g.is_simple() && h.is_simple(), "NotSimple",
            "the pair-set relaxation is defined over simple graphs");
    require(k >= 1, "SizeLimitExceeded", "k must be positive");
    const int n = g.vertex_count();
    const int m = h.vertex_count();

    double budget = 1;
    for (int s = 1; s <= k; ++s) budget *= static_cast<double>(n) * m;
    require(budget <= 2e6, "SizeLimitExceeded", "pair-set budget exceeded");

    auto sets = enumerate_pair_sets(n, m, k);
    LinearSystem system;
    for (const auto& pairs : sets) system.add_variable(pair_set_name(pairs), true);

    const int empty_var = system.variable_index("X{}");
    system.add_row({{empty_var, Rational(1)}}, Rational(1));

    for (const auto& pairs : sets) {
        const int var = system.variable_index(pair_set_name(pairs));
        if (static_cast<int>(pairs.size()) <= k - 1) {
            // Two-sided marginals; a summand with (v,w) already in the set is
            // the set itself.
            for (int w = 0; w < m; ++w) {
                std::vector<LinTerm> terms;
                for (int v = 0; v < n; ++v) {
                    auto extended = pairs;
                    extended.emplace_back(v, w);
                    std::sort(extended.begin(), extended.end());
                    extended.erase(std::unique(extended.begin(), extended.end()),
                                   extended.end());
                    terms.push_back({system.variable_index(pair_set_name(extended)),
                                     Rational(1)});
                }
                terms.push_back({var, Rational(-1)});
                system.add_row(std::move(terms), Rational(0));
            }
            for (int v = 0; v < n; ++v) {
                std::vector<LinTerm> terms;
                for (int w = 0; w < m; ++w) {
                    auto extended = pairs;
                    extended.emplace_back(v, w);
                    std::sort(extended.begin(), extended.end());
                    extended.erase(std::unique(extended.begin(), extended.end()),
                                   extended.end());
                    terms.push_back({system.variable_index(pair_set_name(extended)),
                                     Rational(1)});
                }
                terms.push_back({var, Rational(-1)});
                system.add_row(std::move(terms), Rational(0));
            }
        }
        if (!is_partial_isomorphism(PartialMap(pairs), g, h))
            system.add_row({{var, Rational(1)}}, Rational(0));
    }
    return system;
}

LinearSystem build_doubly_stochastic_commutant(const MultiGraph& g, const MultiGraph& h) {
    require(g.is_simple() && h.is_simple(), "NotSimple",
            "the doubly stochastic commutant is defined over simple graphs");
    const int n = g.vertex_count();
    const int m = h.vertex_count();
    LinearSystem system;
    const auto var = [&](int v, int w) {
        return v * m + w; // added in this order below
    };
    for (int v = 0; v < n; ++v)
        for (int w = 0; w < m; ++w)
            system.add_variable("X[" + std::to_string(v) + "," + std::to_string(w) + "]",
                                true);
    for (int v = 0; v < n; ++v) {
        std::vector<LinTerm> terms;
        for (int w = 0; w < m; ++w) terms.push_back({var(v, w), Rational(1)});
        system.add_row(std::move(terms), Rational(1));
    }
    for (int w = 0; w < m; ++w) {
        std::vector<LinTerm> terms;
        for (int v = 0; v < n; ++v) terms.push_back({var(v, w), Rational(1)});
        system.add_row(std::move(terms), Rational(1));
    }
    // (AX)_{vw} = (XB)_{vw}
    for (int v = 0; v < n; ++v)
        for (int w = 0; w < m; ++w) {
            std::vector<LinTerm> terms;
            for (int u = 0; u < n; ++u)
                if (g.adjacent(v, u)) terms.push_back({var(u, w), Rational(1)});
            for (int u = 0; u < m; ++u)
                if (h.adjacent(u, w)) terms.push_back({var(v, u), Rational(-1)});
            system.add_row(std::move(terms), Rational(0));
        }
    return system;
}

std::size_t MarkovSystem::left_dim() const {
    std::size_t d = 1;
    for (int i = 0; i < k; ++i) d *= static_cast<std::size_t>(left_size);
    return d;
}

std::size_t MarkovSystem::right_dim() const {
    std::size_t d = 1;
    for (int i = 0; i < k; ++i) d *= static_cast<std::size_t>(right_size);
    return d;
}

int MarkovSystem::variable(std::size_t row, std::size_t col) const {
    return static_cast<int>(row * right_dim() + col);
}

Matrix MarkovSystem::witness_matrix(const std::vector<Rational>& witness) const {
    Matrix s(left_dim(), std::vector<Rational>(right_dim(), Rational(0)));
    for (std::size_t r = 0; r < left_dim(); ++r)
        for (std::size_t c = 0; c < right_dim(); ++c)
            s[r][c] = witness[static_cast<std::size_t>(variable(r, c))];
    return s;
}

namespace {

std::vector<Matrix> family_matrices(const StepGraphon& w, int k,
                                    const MarkovCommutantOptions& options) {
    std::vector<Matrix> mats;
    for (int j = 0; j < k; ++j)
        mats.push_back(operator_matrix(make_generator(GenNeighbor{k, j}), w));
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            mats.push_back(operator_matrix(make_generator(GenAdjacency{k, i, j}), w));
    if (options.include_kernel_operator) {
        require(k == 1, "ShapeMismatch", "the kernel operator option applies at k = 1");
        MultiGraph edge(2);
        edge.add_edge(0, 1);
        mats.push_back(operator_matrix(BiLabeledGraph{edge, {0}, {1}}, w));
    }
    if (options.permutation_invariant) {
        for (int j = 0; j + 1 < k; ++j) {
            std::vector<int> perm(k);
            for (int i = 0; i < k; ++i) perm[i] = i;
            std::swap(perm[j], perm[j + 1]);
            mats.push_back(operator_matrix(make_generator(GenPermutation{k, perm}), w));
        }
    }
    return mats;
}

std::size_t tuple_count(int n, int k) {
    std::size_t d = 1;
    for (int i = 0; i < k; ++i) d *= static_cast<std::size_t>(n);
    return d;
}

Rational flat_tuple_mass(const StepGraphon& w, std::size_t flat, int k) {
    Rational mass(1);
    for (int i = 0; i < k; ++i) {
        mass *= w.mass(static_cast<int>(flat % static_cast<std::size_t>(w.size())));
        flat /= static_cast<std::size_t>(w.size());
    }
    return mass;
}

} // namespace

MarkovSystem build_markov_commutant(const StepGraphon& u, const StepGraphon& w, int k,
                                    const MarkovCommutantOptions& options) {
    require(k >= 1 && k <= 3, "SizeLimitExceeded", "markov commutant supports k in 1..3");
    MarkovSystem ms;
    ms.left_size = u.size();
    ms.right_size = w.size();
    ms.k = k;
    const std::size_t nd = ms.left_dim();
    const std::size_t md = ms.right_dim();
    require(nd * md <= 20000, "SizeLimitExceeded", "markov commutant variable budget");

    for (std::size_t r = 0; r < nd; ++r)
        for (std::size_t c = 0; c < md; ++c)
            ms.system.add_variable("S[" + std::to_string(r) + "|" + std::to_string(c) + "]",
                                   true);

    // S 1 = 1: unit row sums.
    for (std::size_t r = 0; r < nd; ++r) {
        std::vector<LinTerm> terms;
        for (std::size_t c = 0; c < md; ++c)
            terms.push_back({ms.variable(r, c), Rational(1)});
        ms.system.add_row(std::move(terms), Rational(1));
    }
    // S* 1 = 1 for the weighted inner products: mass-weighted column sums.
    for (std::size_t c = 0; c < md; ++c) {
        std::vector<LinTerm> terms;
        for (std::size_t r = 0; r < nd; ++r)
            terms.push_back({ms.variable(r, c), flat_tuple_mass(u, r, k)});
        ms.system.add_row(std::move(terms), flat_tuple_mass(w, c, k));
    }

    const std::vector<Matrix> left = family_matrices(u, k, options);
    const std::vector<Matrix> right = family_matrices(w, k, options);
    for (std::size_t f = 0; f < left.size(); ++f) {
        const Matrix& mu = left[f];
        const Matrix& mw = right[f];
        for (std::size_t r = 0; r < nd; ++r)
            for (std::size_t c = 0; c < md; ++c) {
                std::vector<LinTerm> terms;
                for (std::size_t z = 0; z < nd; ++z)
                    if (!mu[r][z].is_zero())
                        terms.push_back({ms.variable(z, c), mu[r][z]});
                for (std::size_t z = 0; z < md; ++z)
                    if (!mw[z][c].is_zero())
                        terms.push_back({ms.variable(r, z), -mw[z][c]});
                ms.system.add_row(std::move(terms), Rational(0));
            }
    }
    return ms;
}

Matrix step_down(const Matrix& s, const StepGraphon& u, const StepGraphon& w, int k) {
    require(k >= 1, "ShapeMismatch", "step_down needs k >= 1");
    const std::size_t nd = tuple_count(u.size(), k);
    const std::size_t md = tuple_count(w.size(), k);
    require(s.size() == nd, "ShapeMismatch", "step_down row count mismatch");
    for (const auto& row : s)
        require(row.size() == md, "ShapeMismatch", "step_down column count mismatch");

    const Matrix forget = operator_matrix(make_generator(GenForget{k, k - 1}), u);
    const Matrix introduce = operator_matrix(make_generator(GenIntroduce{k, k - 1}), w);
    return matrix_product(matrix_product(forget, s), introduce);
}

bool is_markov_matrix(const Matrix& s, const StepGraphon& u, const StepGraphon& w, int k) {
    const std::size_t nd = tuple_count(u.size(), k);
    const std::size_t md = tuple_count(w.size(), k);
    if (s.size() != nd) return false;
    for (const auto& row : s)
        if (row.size() != md) return false;
    for (std::size_t r = 0; r < nd; ++r) {
        Rational sum(0);
        for (std::size_t c = 0; c < md; ++c) {
            if (s[r][c] < Rational(0)) return false;
            sum += s[r][c];
        }
        if (sum != Rational(1)) return false;
    }
    for (std::size_t c = 0; c < md; ++c) {
        Rational sum(0);
        for (std::size_t r = 0; r < nd; ++r) sum += flat_tuple_mass(u, r, k) * s[r][c];
        if (sum != flat_tuple_mass(w, c, k)) return false;
    }
    return true;
}

Matrix matrix_product(const Matrix& a, const Matrix& b) {
    require(!a.empty() && !b.empty() && a[0].size() == b.size(), "ShapeMismatch",
            "matrix product shape mismatch");
    Matrix out(a.size(), std::vector<Rational>(b[0].size(), Rational(0)));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k2 = 0; k2 < b.size(); ++k2) {
            if (a[i][k2].is_zero()) continue;
            for (std::size_t j = 0; j < b[0].size(); ++j)
                if (!b[k2][j].is_zero()) out[i][j] += a[i][k2] * b[k2][j];
        }
    return out;
}

bool matrices_equal(const Matrix& a, const Matrix& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return false;
    return true;
}

Matrix identity_matrix(std::size_t dim) {
    Matrix m(dim, std::vector<Rational>(dim, Rational(0)));
    for (std::size_t i = 0; i < dim; ++i) m[i][i] = Rational(1);
    return m;
}

} // namespace wlg
