#include "wlg/enumeration.hpp"

#include "wlg/error.hpp"
#include "wlg/operators.hpp"
#include "wlg/treedecomp.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <tuple>

namespace wlg {

namespace {

using MultVec = std::vector<int>; // multiplicity per vertex pair, slots in (u,v) order

std::vector<std::pair<int, int>> pair_slots(int n) {
    std::vector<std::pair<int, int>> slots;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) slots.emplace_back(u, v);
    return slots;
}

// For every permutation of [n], the induced permutation of pair slots.
std::vector<std::vector<int>> slot_permutations(int n) {
    const auto slots = pair_slots(n);
    std::vector<int> slot_index(n * n, -1);
    for (std::size_t s = 0; s < slots.size(); ++s)
        slot_index[slots[s].first * n + slots[s].second] = static_cast<int>(s);

    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<int>> maps;
    do {
        std::vector<int> map(slots.size());
        for (std::size_t s = 0; s < slots.size(); ++s) {
            int a = perm[slots[s].first], b = perm[slots[s].second];
            if (a > b) std::swap(a, b);
            map[s] = slot_index[a * n + b];
        }
        maps.push_back(std::move(map));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return maps;
}

MultVec apply_map(const MultVec& m, const std::vector<int>& map) {
    MultVec out(m.size());
    for (std::size_t s = 0; s < m.size(); ++s) out[map[s]] = m[s];
    return out;
}

MultVec canonical_over(const MultVec& m, const std::vector<std::vector<int>>& maps) {
    MultVec best = m;
    MultVec candidate(m.size());
    for (const auto& map : maps) {
        for (std::size_t s = 0; s < m.size(); ++s) candidate[map[s]] = m[s];
        if (candidate < best) best = candidate;
    }
    return best;
}

MultiGraph to_graph(int n, const MultVec& m) {
    const auto slots = pair_slots(n);
    MultiGraph g(n);
    for (std::size_t s = 0; s < slots.size(); ++s)
        if (m[s] > 0) g.add_edge(slots[s].first, slots[s].second, m[s]);
    return g;
}

std::string key_of(int n, const MultVec& m) {
    std::string key = std::to_string(n) + ":";
    for (int v : m) key.push_back(static_cast<char>('0' + v));
    return key;
}

} // namespace

std::vector<MultiGraph> enumerate_patterns(const EnumerationSpec& spec) {
    require(spec.max_vertices >= 1 && spec.max_vertices <= 6, "SizeLimitExceeded",
            "pattern enumeration supports 1..6 vertices");
    require(spec.max_edge_multiplicity >= 1 && spec.max_edge_multiplicity <= 3,
            "SizeLimitExceeded", "edge multiplicities are capped at 3");
    const int max_mult = spec.simple_only ? 1 : spec.max_edge_multiplicity;

    std::vector<std::tuple<int, int, std::string, MultiGraph>> found;
    for (int n = 1; n <= spec.max_vertices; ++n) {
        const auto maps = slot_permutations(n);
        const std::size_t slot_count = pair_slots(n).size();

        // Canonical simple supports first; treewidth and connectivity are
        // support properties, so both filters apply here.
        std::set<MultVec> supports;
        MultVec mask(slot_count, 0);
        for (;;) {
            MultVec canon = canonical_over(mask, maps);
            if (!supports.count(canon)) {
                MultiGraph g = to_graph(n, canon);
                bool ok = !spec.connected_only || g.is_connected();
                if (ok && (g.edges().empty()
                               ? 0 <= spec.treewidth_bound
                               : exact_treewidth(g).width <= spec.treewidth_bound))
                    supports.insert(std::move(canon));
            }
            std::size_t s = 0;
            while (s < slot_count && mask[s] == 1) mask[s++] = 0;
            if (s == slot_count) break;
            mask[s] = 1;
        }

        for (const MultVec& support : supports) {
            std::vector<int> edge_slots;
            for (std::size_t s = 0; s < slot_count; ++s)
                if (support[s]) edge_slots.push_back(static_cast<int>(s));
            // Assignments of multiplicities are deduplicated over the
            // automorphisms of the support only.
            std::vector<std::vector<int>> aut;
            for (const auto& map : maps)
                if (apply_map(support, map) == support) aut.push_back(map);

            std::vector<int> mult(edge_slots.size(), 1);
            std::set<MultVec> reps;
            for (;;) {
                MultVec full(slot_count, 0);
                for (std::size_t e = 0; e < edge_slots.size(); ++e)
                    full[edge_slots[e]] = mult[e];
                MultVec canon = canonical_over(full, aut);
                if (reps.insert(canon).second) {
                    MultiGraph g = to_graph(n, canon);
                    found.emplace_back(n, g.total_multiplicity(), key_of(n, canon),
                                       std::move(g));
                }
                if (edge_slots.empty()) break;
                std::size_t e = 0;
                while (e < edge_slots.size() && mult[e] == max_mult) mult[e++] = 1;
                if (e == edge_slots.size()) break;
                ++mult[e];
            }
        }
    }
    std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
        return std::tie(std::get<0>(a), std::get<1>(a), std::get<2>(a)) <
               std::tie(std::get<0>(b), std::get<1>(b), std::get<2>(b));
    });
    std::vector<MultiGraph> patterns;
    patterns.reserve(found.size());
    for (auto& entry : found) patterns.push_back(std::move(std::get<3>(entry)));
    return patterns;
}

std::optional<MultiGraph> find_distinguisher(const StepGraphon& w1, const StepGraphon& w2,
                                             const EnumerationSpec& spec) {
    for (const MultiGraph& pattern : enumerate_patterns(spec))
        if (hom_density_bruteforce(pattern, w1) != hom_density_bruteforce(pattern, w2))
            return pattern;
    return std::nullopt;
}

} // namespace wlg
