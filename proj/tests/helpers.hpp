#pragma once

#include "wlg/bilabeled.hpp"
#include "wlg/error.hpp"
#include "wlg/harness.hpp"
#include "wlg/operators.hpp"
#include "wlg/step_graphon.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <string>
#include <vector>

namespace wlg::testing {

inline bool fails_with(const std::function<void()>& fn, const std::string& code) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code() == code;
    }
    return false;
}

inline std::uint64_t next_random(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline std::uint64_t draw(std::uint64_t& state, std::uint64_t bound) {
    return next_random(state) % bound;
}

inline Rational random_rational(std::uint64_t& state, long long max_den = 5) {
    long long den = 1 + static_cast<long long>(draw(state, static_cast<std::uint64_t>(max_den)));
    long long num = static_cast<long long>(draw(state, 2 * static_cast<std::uint64_t>(den) + 1)) -
                    den; // in [-1, 1]
    return Rational(num, den);
}

inline KTensor random_tensor(std::uint64_t& state, int k, int n) {
    KTensor t(k, n);
    for (std::size_t i = 0; i < t.size(); ++i) t.at(i) = random_rational(state);
    return t;
}

// Canonical key of an evaluated term: input vertices are pinned positionally,
// the unlabeled rest is minimized over permutations.
inline std::string bilabeled_canonical_key(const BiLabeledGraph& g) {
    const int n = g.graph.vertex_count();
    require(n <= 9, "SizeLimitExceeded", "canonical key limited to 9 vertices");
    std::vector<int> fixed(n, -1);
    for (int i = 0; i < g.input_arity(); ++i) fixed[g.inputs[i]] = i;
    std::vector<int> loose;
    for (int v = 0; v < n; ++v)
        if (fixed[v] < 0) loose.push_back(v);
    std::sort(loose.begin(), loose.end());
    std::string best;
    bool first = true;
    std::vector<int> position(n, -1);
    do {
        for (int v = 0; v < n; ++v) position[v] = fixed[v];
        for (std::size_t i = 0; i < loose.size(); ++i)
            position[loose[i]] = g.input_arity() + static_cast<int>(i);
        std::string key(static_cast<std::size_t>(n) * n, '0');
        for (const Edge& e : g.graph.edges()) {
            int a = position[e.u], b = position[e.v];
            key[static_cast<std::size_t>(std::min(a, b)) * n + std::max(a, b)] =
                static_cast<char>('0' + e.multiplicity);
        }
        if (first || key < best) {
            best = std::move(key);
            first = false;
        }
    } while (std::next_permutation(loose.begin(), loose.end()));
    return std::to_string(n) + "/" + std::to_string(g.input_arity()) + ":" + best;
}

// All terms over the neighbor/adjacency family with the given height and AST
// node budget, deduplicated by the isomorphism type of their evaluation.
inline std::vector<TermPtr> enumerate_terms(int k, int max_height, int max_nodes,
                                            int max_eval_vertices = 7) {
    std::vector<std::vector<TermPtr>> by_size(static_cast<std::size_t>(max_nodes) + 1);
    std::set<std::string> seen;
    const auto admit = [&](int size, const TermPtr& t) {
        if (height(t) > max_height) return;
        BiLabeledGraph ev = eval_term(t);
        if (ev.graph.vertex_count() > max_eval_vertices) return;
        std::string key = bilabeled_canonical_key(ev);
        if (seen.insert(std::move(key)).second)
            by_size[static_cast<std::size_t>(size)].push_back(t);
    };
    admit(1, Term::one(k));
    for (int size = 2; size <= max_nodes; ++size) {
        for (const TermPtr& t : by_size[static_cast<std::size_t>(size) - 1]) {
            for (int j = 0; j < k; ++j) admit(size, Term::compose(GenNeighbor{k, j}, t));
            for (int i = 0; i < k; ++i)
                for (int j = i + 1; j < k; ++j)
                    admit(size, Term::compose(GenAdjacency{k, i, j}, t));
        }
        for (int left = 1; left + 1 <= size - 1; ++left) {
            int right = size - 1 - left;
            for (const TermPtr& a : by_size[static_cast<std::size_t>(left)])
                for (const TermPtr& b : by_size[static_cast<std::size_t>(right)])
                    admit(size, Term::schur(a, b));
        }
    }
    std::vector<TermPtr> all;
    for (const auto& bucket : by_size) all.insert(all.end(), bucket.begin(), bucket.end());
    return all;
}

// Random bi-labeled graph in M^{in,out} assembled from generator
// compositions; `steps` extra square generators are mixed in.
inline BiLabeledGraph random_bilabeled(std::uint64_t& state, int in_arity, int out_arity,
                                       int steps = 1) {
    require(in_arity >= 1, "SizeLimitExceeded", "need at least one input");
    const auto square_gen = [&](int k) -> BiLabeledGraph {
        switch (draw(state, k >= 2 ? 3 : 1)) {
        case 1:
            return make_generator(
                GenAdjacency{k, 0, 1 + static_cast<int>(draw(state, static_cast<std::uint64_t>(k) - 1))});
        case 2: {
            std::vector<int> perm(k);
            std::iota(perm.begin(), perm.end(), 0);
            std::swap(perm[0], perm[static_cast<std::size_t>(draw(state, static_cast<std::uint64_t>(k)))]);
            return make_generator(GenPermutation{k, perm});
        }
        default:
            return make_generator(GenNeighbor{k, static_cast<int>(draw(state, static_cast<std::uint64_t>(k)))});
        }
    };
    BiLabeledGraph acc = square_gen(in_arity);
    int cur = in_arity;
    int remaining_steps = steps;
    while (cur != out_arity || remaining_steps > 0) {
        if (cur > out_arity) {
            int j = static_cast<int>(draw(state, static_cast<std::uint64_t>(cur)));
            acc = compose(acc, make_generator(GenIntroduce{cur, j}));
            --cur;
        } else if (cur < out_arity) {
            int j = static_cast<int>(draw(state, static_cast<std::uint64_t>(cur) + 1));
            acc = compose(acc, make_generator(GenForget{cur + 1, j}));
            ++cur;
        } else {
            if (cur == 0) break; // nothing further composes on the right
            acc = compose(acc, square_gen(cur));
            --remaining_steps;
        }
    }
    return acc;
}

} // namespace wlg::testing
