#pragma once

#include "wlg/operators.hpp"
#include "wlg/rational.hpp"
#include "wlg/step_graphon.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace wlg {

enum class ModeFlag { Graphon, Graph };

// The three refinement algorithms. Graph mode is only valid for 0/1 loop-free
// step graphons with uniform masses (embeddings of simple graphs).
struct Algorithm {
    enum class Kind { ColorRefinement, ObliviousKWL, SimpleKWL };
    Kind kind = Kind::ColorRefinement;
    int k = 1;
    ModeFlag mode = ModeFlag::Graphon;

    static Algorithm colref() { return {Kind::ColorRefinement, 1, ModeFlag::Graphon}; }
    static Algorithm owl(int k, ModeFlag mode) { return {Kind::ObliviousKWL, k, mode}; }
    static Algorithm simple(int k) { return {Kind::SimpleKWL, k, ModeFlag::Graphon}; }

    std::string str() const;
};

// Interning store mapping canonical color descriptors to dense ids. Ids are
// stable within one run; cross-object comparisons always share one table.
class ColorTable {
public:
    int intern(const std::string& descriptor) {
        auto [it, inserted] = ids_.emplace(descriptor, static_cast<int>(ids_.size()));
        return it->second;
    }
    int size() const { return static_cast<int>(ids_.size()); }

private:
    std::map<std::string, int> ids_;
};

struct Coloring {
    int k = 1;
    int n = 0;
    // rounds[r][flat tuple index] = color id; the last round repeats the
    // stable partition and carries the stable signatures.
    std::vector<std::vector<int>> rounds;
    bool stabilized = false;

    int round_count() const { return static_cast<int>(rounds.size()); }
    const std::vector<int>& final_colors() const { return rounds.back(); }
};

// Per-round sorted multiset of (class mass, color id); masses are exact
// product-measure masses and sum to 1 in every round.
struct Fingerprint {
    std::vector<std::vector<std::pair<Rational, int>>> rounds;

    const std::vector<std::pair<Rational, int>>& terminal() const { return rounds.back(); }
    friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

struct RefinementResult {
    Coloring coloring;
    Fingerprint fingerprint;
};

// Joint refinement of several step graphons against one shared color table;
// the single-object entry points below wrap it.
std::vector<RefinementResult> refine_joint(const std::vector<const StepGraphon*>& ws,
                                           const Algorithm& algo, ColorTable& table);

RefinementResult color_refinement(const StepGraphon& w);
RefinementResult oblivious_kwl(const StepGraphon& w, int k, ModeFlag mode);
RefinementResult simple_kwl(const StepGraphon& w, int k);

struct CompareResult {
    bool equal = false;
    int first_differing_round = -1; // -1 when equal
    Fingerprint left;
    Fingerprint right;
};

CompareResult compare_fingerprints(const StepGraphon& w1, const StepGraphon& w2,
                                   const Algorithm& algo);

// Color classes of the final round, listed as flat tuple indices; classes
// ordered by smallest member.
std::vector<std::vector<std::size_t>> stable_partition(const Coloring& coloring);

// Coordinates of a flat [n]^k tuple index (coordinate 0 most significant),
// and the index of the tuple with coordinate j replaced by y.
std::vector<int> tuple_coordinates(std::size_t flat, int k, int n);
std::size_t tuple_substitute(std::size_t flat, int k, int n, int j, int y);

// Class-wise weighted average of f; the orthogonal projection onto
// partition-measurable tensors.
KTensor condexp(const std::vector<std::vector<std::size_t>>& partition, const KTensor& f,
                const StepGraphon& w);

} // namespace wlg
