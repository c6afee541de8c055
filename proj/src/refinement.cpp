#include "wlg/refinement.hpp"

#include "wlg/error.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace wlg {

std::string Algorithm::str() const {
    switch (kind) {
    case Kind::ColorRefinement:
        return "colref";
    case Kind::ObliviousKWL:
        return "owl(" + std::to_string(k) + "," +
               (mode == ModeFlag::Graphon ? std::string("graphon") : std::string("graph")) +
               ")";
    case Kind::SimpleKWL:
        return "simple(" + std::to_string(k) + ")";
    }
    return "?";
}

namespace {

constexpr std::size_t kTupleGuard = 4096;

std::size_t power(int n, int k) {
    std::size_t s = 1;
    for (int i = 0; i < k; ++i) s *= static_cast<std::size_t>(n);
    return s;
}

// Sorted association list over color ids with exact values, zero entries
// dropped: the canonical encoding of a finite measure on colors.
std::string measure_str(std::map<int, Rational>& acc) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [color, value] : acc) {
        if (value.is_zero()) continue;
        os << (first ? "" : ",") << color << ":" << value.str();
        first = false;
    }
    return os.str();
}

struct TupleSpace {
    int k;
    int n;
    std::size_t count;
    std::vector<std::size_t> stride; // stride[j] for coordinate j

    TupleSpace(int k, int n) : k(k), n(n), count(power(n, k)), stride(k, 1) {
        for (int j = k - 2; j >= 0; --j)
            stride[j] = stride[j + 1] * static_cast<std::size_t>(n);
    }
    int coord(std::size_t flat, int j) const {
        return static_cast<int>(flat / stride[j] % static_cast<std::size_t>(n));
    }
    std::size_t substitute(std::size_t flat, int j, int y) const {
        return flat + (static_cast<std::size_t>(y) - coord(flat, j)) * stride[j];
    }
};

struct JointRun {
    const std::vector<const StepGraphon*>& ws;
    Algorithm algo;
    ColorTable& table;
    int k;
    std::vector<TupleSpace> spaces;
    std::vector<std::vector<int>> colors; // per graphon, per tuple
    std::vector<Coloring> colorings;
    std::vector<Fingerprint> fingerprints;

    JointRun(const std::vector<const StepGraphon*>& ws, const Algorithm& algo,
             ColorTable& table)
        : ws(ws), algo(algo), table(table),
          k(algo.kind == Algorithm::Kind::ColorRefinement ? 1 : algo.k) {
        require(k >= 1 && k <= 4, "SizeLimitExceeded", "refinement supports k in 1..4");
        for (const StepGraphon* w : ws) {
            require(power(w->size(), k) <= kTupleGuard, "SizeLimitExceeded",
                    "tuple space exceeds the refinement guard");
            if (algo.kind == Algorithm::Kind::ObliviousKWL && algo.mode == ModeFlag::Graph)
                require(w->is_zero_one() && w->is_loop_free() && w->has_uniform_masses(),
                        "ModeViolation",
                        "graph mode needs a 0/1 loop-free uniform-mass step graphon");
            spaces.emplace_back(k, w->size());
            colors.emplace_back(power(w->size(), k), 0);
        }
        colorings.resize(ws.size());
        fingerprints.resize(ws.size());
        for (std::size_t g = 0; g < ws.size(); ++g) {
            colorings[g].k = k;
            colorings[g].n = ws[g]->size();
        }
    }

    std::string initial_descriptor(std::size_t g, std::size_t flat) const {
        const StepGraphon& w = *ws[g];
        const TupleSpace& space = spaces[g];
        std::ostringstream os;
        switch (algo.kind) {
        case Algorithm::Kind::ColorRefinement:
            os << "cr0";
            break;
        case Algorithm::Kind::SimpleKWL:
            os << "s0";
            break;
        case Algorithm::Kind::ObliviousKWL:
            if (algo.mode == ModeFlag::Graphon) {
                // Pairwise weights only; no equality pattern at graphon scale.
                os << "o0";
                for (int i = 0; i < k; ++i)
                    for (int j = i + 1; j < k; ++j)
                        os << "|" << w.weight(space.coord(flat, i), space.coord(flat, j)).str();
            } else {
                // Full atomic type including the equality pattern.
                os << "g0";
                for (int i = 0; i < k; ++i)
                    for (int j = 0; j < k; ++j) {
                        int xi = space.coord(flat, i), xj = space.coord(flat, j);
                        os << "|" << (xi == xj ? "2" : w.weight(xi, xj).str());
                    }
            }
            break;
        }
        return os.str();
    }

    std::string round_descriptor(std::size_t g, std::size_t flat) const {
        const StepGraphon& w = *ws[g];
        const TupleSpace& space = spaces[g];
        const std::vector<int>& prev = colors[g];
        std::ostringstream os;
        os << prev[flat];
        switch (algo.kind) {
        case Algorithm::Kind::ColorRefinement: {
            std::map<int, Rational> acc;
            int x = space.coord(flat, 0);
            for (int y = 0; y < w.size(); ++y)
                acc[prev[static_cast<std::size_t>(y)]] += w.mass(y) * w.weight(x, y);
            os << "#" << measure_str(acc);
            break;
        }
        case Algorithm::Kind::ObliviousKWL: {
            for (int j = 0; j < k; ++j) {
                std::map<int, Rational> acc;
                for (int y = 0; y < w.size(); ++y) {
                    std::size_t sub = space.substitute(flat, j, y);
                    if (algo.mode == ModeFlag::Graphon)
                        acc[prev[sub]] += w.mass(y);
                    else
                        acc[prev[sub]] += Rational(1); // plain counts
                }
                os << "#" << measure_str(acc);
            }
            break;
        }
        case Algorithm::Kind::SimpleKWL: {
            // One weighted substitution measure per (j, V) with V avoiding j.
            for (int j = 0; j < k; ++j) {
                for (unsigned vs = 0; vs < (1u << k); ++vs) {
                    if (vs >> j & 1u) continue;
                    std::map<int, Rational> acc;
                    for (int y = 0; y < w.size(); ++y) {
                        Rational value = w.mass(y);
                        for (int i = 0; i < k && !value.is_zero(); ++i)
                            if (vs >> i & 1u) value *= w.weight(space.coord(flat, i), y);
                        if (value.is_zero()) continue;
                        acc[prev[space.substitute(flat, j, y)]] += value;
                    }
                    os << "#" << measure_str(acc);
                }
            }
            break;
        }
        }
        return os.str();
    }

    std::vector<std::pair<Rational, int>> round_multiset(std::size_t g) const {
        std::map<int, Rational> by_color;
        const TupleSpace& space = spaces[g];
        for (std::size_t flat = 0; flat < space.count; ++flat) {
            Rational mass(1);
            for (int j = 0; j < k; ++j) mass *= ws[g]->mass(space.coord(flat, j));
            by_color[colors[g][flat]] += mass;
        }
        std::vector<std::pair<Rational, int>> multiset;
        for (const auto& [color, mass] : by_color) multiset.emplace_back(mass, color);
        std::sort(multiset.begin(), multiset.end(),
                  [](const auto& a, const auto& b) {
                      return a.second != b.second ? a.second < b.second : a.first < b.first;
                  });
        return multiset;
    }

    int distinct_colors() const {
        std::set<int> all;
        for (const auto& cs : colors) all.insert(cs.begin(), cs.end());
        return static_cast<int>(all.size());
    }

    void record_round() {
        for (std::size_t g = 0; g < ws.size(); ++g) {
            colorings[g].rounds.push_back(colors[g]);
            fingerprints[g].rounds.push_back(round_multiset(g));
        }
    }

    void run() {
        for (std::size_t g = 0; g < ws.size(); ++g)
            for (std::size_t flat = 0; flat < spaces[g].count; ++flat)
                colors[g][flat] = table.intern(initial_descriptor(g, flat));
        record_round();

        std::size_t total_tuples = 0;
        for (const auto& space : spaces) total_tuples += space.count;
        int previous_count = distinct_colors();
        for (std::size_t round = 0; round <= total_tuples; ++round) {
            std::vector<std::vector<int>> next(ws.size());
            for (std::size_t g = 0; g < ws.size(); ++g) {
                next[g].resize(spaces[g].count);
                for (std::size_t flat = 0; flat < spaces[g].count; ++flat)
                    next[g][flat] = table.intern(round_descriptor(g, flat));
            }
            colors = std::move(next);
            record_round();
            int count = distinct_colors();
            if (count == previous_count) {
                for (auto& c : colorings) c.stabilized = true;
                return;
            }
            previous_count = count;
        }
        fail("InternalError", "refinement failed to stabilize within the tuple bound");
    }
};

} // namespace

std::vector<RefinementResult> refine_joint(const std::vector<const StepGraphon*>& ws,
                                           const Algorithm& algo, ColorTable& table) {
    JointRun run(ws, algo, table);
    run.run();
    std::vector<RefinementResult> results;
    for (std::size_t g = 0; g < ws.size(); ++g)
        results.push_back({std::move(run.colorings[g]), std::move(run.fingerprints[g])});
    return results;
}

RefinementResult color_refinement(const StepGraphon& w) {
    ColorTable table;
    return std::move(refine_joint({&w}, Algorithm::colref(), table)[0]);
}

RefinementResult oblivious_kwl(const StepGraphon& w, int k, ModeFlag mode) {
    ColorTable table;
    return std::move(refine_joint({&w}, Algorithm::owl(k, mode), table)[0]);
}

RefinementResult simple_kwl(const StepGraphon& w, int k) {
    ColorTable table;
    return std::move(refine_joint({&w}, Algorithm::simple(k), table)[0]);
}

CompareResult compare_fingerprints(const StepGraphon& w1, const StepGraphon& w2,
                                   const Algorithm& algo) {
    ColorTable table;
    auto results = refine_joint({&w1, &w2}, algo, table);
    CompareResult cmp;
    cmp.left = std::move(results[0].fingerprint);
    cmp.right = std::move(results[1].fingerprint);
    cmp.equal = true;
    const int rounds = static_cast<int>(cmp.left.rounds.size());
    for (int r = 0; r < rounds; ++r) {
        if (cmp.left.rounds[r] != cmp.right.rounds[r]) {
            cmp.equal = false;
            cmp.first_differing_round = r;
            break;
        }
    }
    return cmp;
}

std::vector<int> tuple_coordinates(std::size_t flat, int k, int n) {
    std::vector<int> coords(k, 0);
    for (int i = k; i-- > 0;) {
        coords[i] = static_cast<int>(flat % static_cast<std::size_t>(n));
        flat /= static_cast<std::size_t>(n);
    }
    return coords;
}

std::size_t tuple_substitute(std::size_t flat, int k, int n, int j, int y) {
    TupleSpace space(k, n);
    require(j >= 0 && j < k && y >= 0 && y < n, "VertexOutOfRange", "bad substitution");
    return space.substitute(flat, j, y);
}

std::vector<std::vector<std::size_t>> stable_partition(const Coloring& coloring) {
    require(coloring.stabilized, "NotStabilized",
            "stable partitions need a stabilized coloring");
    std::map<int, std::vector<std::size_t>> classes;
    const std::vector<int>& final = coloring.final_colors();
    for (std::size_t flat = 0; flat < final.size(); ++flat)
        classes[final[flat]].push_back(flat);
    std::vector<std::vector<std::size_t>> partition;
    for (auto& [color, members] : classes) partition.push_back(std::move(members));
    std::sort(partition.begin(), partition.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return partition;
}

KTensor condexp(const std::vector<std::vector<std::size_t>>& partition, const KTensor& f,
                const StepGraphon& w) {
    require(f.ground_size() == w.size(), "ShapeMismatch", "condexp ground size mismatch");
    std::size_t covered = 0;
    for (const auto& cls : partition) covered += cls.size();
    require(covered == f.size(), "ShapeMismatch",
            "partition must cover the tuple space exactly");
    KTensor result(f.arity(), f.ground_size());
    std::vector<char> seen(f.size(), 0);
    for (const auto& cls : partition) {
        Rational mass(0), total(0);
        for (std::size_t flat : cls) {
            require(flat < f.size() && !seen[flat], "ShapeMismatch",
                    "partition classes must be disjoint tuple indices");
            seen[flat] = 1;
            Rational m = tuple_mass(w, f.unflatten(flat));
            mass += m;
            total += m * f.at(flat);
        }
        Rational average = total / mass; // masses are strictly positive
        for (std::size_t flat : cls) result.at(flat) = average;
    }
    return result;
}

} // namespace wlg
