#include "wlg/harness.hpp"

#include "wlg/error.hpp"
#include "wlg/operators.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace wlg {

std::string consistency_str(Consistency c) {
    switch (c) {
    case Consistency::Consistent:
        return "Consistent";
    case Consistency::PaperViolation:
        return "PaperViolation";
    case Consistency::InconclusiveBudget:
        return "InconclusiveBudget";
    }
    return "?";
}

std::string EquivalenceReport::verdict(const std::string& name) const {
    for (const auto& [key, value] : verdicts)
        if (key == name) return value;
    return "";
}

std::string EquivalenceReport::str() const {
    std::ostringstream os;
    os << pair_id << ": " << consistency_str(classification);
    for (const auto& [key, value] : verdicts) os << " | " << key << "=" << value;
    if (!details.empty()) os << " | " << details;
    for (const std::string& w : warnings) os << "\n  warning: " << w;
    return os.str();
}

// ---- seeded generation -----------------------------------------------------

namespace {

std::uint64_t next_random(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::uint64_t draw(std::uint64_t& state, std::uint64_t bound) {
    return next_random(state) % bound;
}

} // namespace

MultiGraph random_simple_graph(std::uint64_t& state, int n) {
    MultiGraph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (draw(state, 2) == 0) g.add_edge(u, v);
    return g;
}

StepGraphon random_step_graphon(std::uint64_t& state, int n) {
    std::vector<long long> parts(n);
    long long total = 0;
    for (int i = 0; i < n; ++i) {
        parts[i] = 1 + static_cast<long long>(draw(state, 4));
        total += parts[i];
    }
    std::vector<Rational> masses;
    for (int i = 0; i < n; ++i) masses.emplace_back(parts[i], total);
    std::vector<std::vector<Rational>> weights(n, std::vector<Rational>(n, Rational(0)));
    for (int x = 0; x < n; ++x)
        for (int y = x; y < n; ++y) {
            long long den = 1 + static_cast<long long>(draw(state, 4));
            long long num = static_cast<long long>(draw(state, static_cast<std::uint64_t>(den) + 1));
            weights[x][y] = weights[y][x] = Rational(num, den);
        }
    return StepGraphon(std::move(masses), std::move(weights));
}

namespace {

std::vector<int> random_permutation(std::uint64_t& state, int n) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = n - 1; i > 0; --i)
        std::swap(perm[i], perm[static_cast<int>(draw(state, static_cast<std::uint64_t>(i) + 1))]);
    return perm;
}

StepGraphon averaged_graphon(const StepGraphon& w) {
    Rational avg(0);
    for (int x = 0; x < w.size(); ++x)
        for (int y = 0; y < w.size(); ++y) avg += w.mass(x) * w.mass(y) * w.weight(x, y);
    std::vector<std::vector<Rational>> weights(w.size(),
                                               std::vector<Rational>(w.size(), avg));
    return StepGraphon(w.masses(), std::move(weights));
}

} // namespace

std::vector<GraphPair> seeded_graph_pairs(std::uint64_t seed, int count, int max_vertices) {
    require(max_vertices >= 2, "SizeLimitExceeded", "need at least two vertices");
    std::uint64_t state = seed;
    std::vector<GraphPair> pairs;
    for (int i = 0; i < count; ++i) {
        const int kind = static_cast<int>(draw(state, 5));
        std::string name;
        if (kind <= 1) {
            int n = 2 + static_cast<int>(draw(state, static_cast<std::uint64_t>(max_vertices) - 1));
            MultiGraph g = random_simple_graph(state, n);
            MultiGraph h = random_simple_graph(state, n);
            name = "rnd" + std::to_string(i) + ":indep:n" + std::to_string(n);
            pairs.push_back({name, std::move(g), std::move(h)});
        } else if (kind <= 3) {
            // Isomorphic copies keep the feasible branch exercised; sizes stay
            // small because these are the expensive relaxation solves.
            int cap = std::min(max_vertices, draw(state, 8) == 0 ? 5 : 4);
            int n = 2 + static_cast<int>(draw(state, static_cast<std::uint64_t>(cap) - 1));
            MultiGraph g = random_simple_graph(state, n);
            MultiGraph h = g.relabeled(random_permutation(state, n));
            name = "rnd" + std::to_string(i) + ":perm:n" + std::to_string(n);
            pairs.push_back({name, std::move(g), std::move(h)});
        } else {
            int n = 2 + static_cast<int>(draw(state, static_cast<std::uint64_t>(max_vertices) - 1));
            MultiGraph g = random_simple_graph(state, n);
            int u = static_cast<int>(draw(state, static_cast<std::uint64_t>(n)));
            int v = static_cast<int>(draw(state, static_cast<std::uint64_t>(n)));
            if (u == v) v = (v + 1) % n;
            MultiGraph h(n);
            for (const Edge& e : g.edges())
                if (!((e.u == std::min(u, v) && e.v == std::max(u, v))))
                    h.add_edge(e.u, e.v);
            if (!g.adjacent(u, v)) h.add_edge(u, v);
            name = "rnd" + std::to_string(i) + ":flip:n" + std::to_string(n);
            pairs.push_back({name, std::move(g), std::move(h)});
        }
    }
    return pairs;
}

std::vector<GraphonPair> seeded_graphon_pairs(std::uint64_t seed, int count,
                                              int max_vertices) {
    require(max_vertices >= 2, "SizeLimitExceeded", "need at least two vertices");
    std::uint64_t state = seed ^ 0xA5A5A5A5A5A5A5A5ull;
    std::vector<GraphonPair> pairs;
    for (int i = 0; i < count; ++i) {
        const int kind = static_cast<int>(draw(state, 5));
        int n = 2 + static_cast<int>(draw(state, static_cast<std::uint64_t>(max_vertices) - 1));
        StepGraphon w = random_step_graphon(state, n);
        if (kind <= 1) {
            StepGraphon u = random_step_graphon(state, n);
            pairs.push_back({"rnd" + std::to_string(i) + ":indep:n" + std::to_string(n),
                             std::move(w), std::move(u)});
        } else if (kind <= 3) {
            StepGraphon u = w.permuted(random_permutation(state, n));
            pairs.push_back({"rnd" + std::to_string(i) + ":perm:n" + std::to_string(n),
                             std::move(w), std::move(u)});
        } else {
            StepGraphon u = averaged_graphon(w);
            pairs.push_back({"rnd" + std::to_string(i) + ":avg:n" + std::to_string(n),
                             std::move(w), std::move(u)});
        }
    }
    return pairs;
}

// ---- stable-partition parameters -------------------------------------------

bool same_stable_parameters(const StepGraphon& w1, const StepGraphon& w2) {
    const auto parameters = [](const StepGraphon& w) {
        RefinementResult r = color_refinement(w);
        auto partition = stable_partition(r.coloring);
        const std::size_t c = partition.size();
        std::vector<Rational> masses(c, Rational(0));
        std::vector<std::vector<Rational>> degrees(c, std::vector<Rational>(c, Rational(0)));
        for (std::size_t a = 0; a < c; ++a) {
            for (std::size_t x : partition[a]) masses[a] += w.mass(static_cast<int>(x));
            for (std::size_t b = 0; b < c; ++b) {
                Rational value(0);
                for (std::size_t y : partition[b])
                    value += w.mass(static_cast<int>(y)) *
                             w.weight(static_cast<int>(partition[a][0]), static_cast<int>(y));
                degrees[a][b] = value;
                // Stability: the class-to-class degree is class-constant.
                for (std::size_t x : partition[a]) {
                    Rational check(0);
                    for (std::size_t y : partition[b])
                        check += w.mass(static_cast<int>(y)) *
                                 w.weight(static_cast<int>(x), static_cast<int>(y));
                    require(check == value, "InternalError",
                            "stable partition is not degree-constant");
                }
            }
        }
        return std::pair(std::move(masses), std::move(degrees));
    };

    auto [m1, d1] = parameters(w1);
    auto [m2, d2] = parameters(w2);
    if (m1.size() != m2.size()) return false;
    const std::size_t c = m1.size();
    std::vector<std::size_t> sigma(c);
    std::iota(sigma.begin(), sigma.end(), std::size_t{0});
    do {
        bool ok = true;
        for (std::size_t a = 0; a < c && ok; ++a) ok = m1[a] == m2[sigma[a]];
        for (std::size_t a = 0; a < c && ok; ++a)
            for (std::size_t b = 0; b < c && ok; ++b) ok = d1[a][b] == d2[sigma[a]][sigma[b]];
        if (ok) return true;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return false;
}

// ---- suites ----------------------------------------------------------------

namespace {

std::optional<MultiGraph> first_density_difference(const std::vector<MultiGraph>& patterns,
                                                   const StepGraphon& w1,
                                                   const StepGraphon& w2) {
    for (const MultiGraph& pattern : patterns)
        if (hom_density_bruteforce(pattern, w1) != hom_density_bruteforce(pattern, w2))
            return pattern;
    return std::nullopt;
}

void attach_density_checks(EquivalenceReport& report, bool fingerprints_equal,
                           const std::vector<MultiGraph>& patterns, const StepGraphon& w1,
                           const StepGraphon& w2) {
    std::optional<MultiGraph> witness = first_density_difference(patterns, w1, w2);
    if (fingerprints_equal) {
        if (witness) {
            report.classification = Consistency::PaperViolation;
            report.details = "equal fingerprints but densities differ on " +
                             witness->to_json();
            report.verdicts.emplace_back("densities", "DIFFER");
        } else {
            report.verdicts.emplace_back("densities", "EQUAL-ON-SET");
        }
    } else {
        if (witness) {
            report.verdicts.emplace_back("densities",
                                         "DIFFER(" + witness->to_json() + ")");
        } else {
            report.verdicts.emplace_back("densities", "EQUAL-ON-SET");
            if (report.classification == Consistency::Consistent)
                report.classification = Consistency::InconclusiveBudget;
        }
    }
}

void markov_check(EquivalenceReport& report, const StepGraphon& u, const StepGraphon& w,
                  int k, bool fingerprints_equal, std::vector<MarkovWitness>* collector) {
    if (u.size() > 4 || w.size() > 4 || k > 2) return;
    for (bool perm_invariant : {false, true}) {
        MarkovCommutantOptions options;
        options.permutation_invariant = perm_invariant;
        MarkovSystem ms = build_markov_commutant(u, w, k, options);
        FeasibilityResult fr = feasible(ms.system);
        const std::string label = perm_invariant ? "markov-perm" : "markov";
        report.verdicts.emplace_back(label, fr.feasible ? "FEASIBLE" : "INFEASIBLE");
        if (fr.feasible != fingerprints_equal)
            report.warnings.push_back(
                label + " feasibility (" + (fr.feasible ? "yes" : "no") +
                ") diverges from fingerprint equality (" +
                (fingerprints_equal ? "yes" : "no") +
                ") on this atomic pair; left=" + u.to_json() + " right=" + w.to_json());
        if (fr.feasible && perm_invariant && collector)
            collector->push_back({report.pair_id, u, w, k, true, ms.witness_matrix(fr.witness)});
    }
    const std::string a = report.verdict("markov");
    const std::string b = report.verdict("markov-perm");
    if (a != b)
        report.warnings.push_back("permutation-invariance flag changes feasibility: " + a +
                                  " vs " + b);
}

} // namespace

std::vector<EquivalenceReport> run_colref_suite(const std::vector<GraphPair>& pairs) {
    EnumerationSpec tree_spec;
    tree_spec.max_vertices = 5;
    tree_spec.max_edge_multiplicity = 1;
    tree_spec.treewidth_bound = 1;
    tree_spec.simple_only = true;
    tree_spec.connected_only = true;
    const std::vector<MultiGraph> trees = enumerate_patterns(tree_spec);

    std::vector<EquivalenceReport> reports;
    for (const GraphPair& pair : pairs) {
        require(pair.left.vertex_count() == pair.right.vertex_count(), "ShapeMismatch",
                "graph suites compare graphs on equally many vertices");
        EquivalenceReport report;
        report.pair_id = "colref:" + pair.name;
        const StepGraphon w1 = graph_to_step_graphon(pair.left);
        const StepGraphon w2 = graph_to_step_graphon(pair.right);

        const bool equal = compare_fingerprints(w1, w2, Algorithm::colref()).equal;
        report.verdicts.emplace_back("fingerprint", equal ? "EQUAL" : "DIFFER");

        const bool ds =
            feasible(build_doubly_stochastic_commutant(pair.left, pair.right)).feasible;
        report.verdicts.emplace_back("doubly-stochastic", ds ? "FEASIBLE" : "INFEASIBLE");

        const bool params = same_stable_parameters(w1, w2);
        report.verdicts.emplace_back("parameters", params ? "EQUAL" : "DIFFER");

        if (equal != ds) {
            report.classification = Consistency::PaperViolation;
            report.details = "fingerprint equality and fractional isomorphism disagree";
        } else if (equal != params) {
            report.classification = Consistency::PaperViolation;
            report.details = "fingerprint equality and partition parameters disagree";
        }
        attach_density_checks(report, equal, trees, w1, w2);
        reports.push_back(std::move(report));
    }
    return reports;
}

std::vector<EquivalenceReport> run_kwl_suite(const std::vector<GraphPair>& pairs, int k,
                                             std::vector<MarkovWitness>* collector) {
    require(k >= 1 && k <= 2, "SizeLimitExceeded", "the graph suite supports k in {1,2}");
    EnumerationSpec spec;
    spec.max_vertices = 4;
    spec.max_edge_multiplicity = 1;
    spec.treewidth_bound = k;
    spec.simple_only = true;
    spec.connected_only = true;
    const std::vector<MultiGraph> patterns = enumerate_patterns(spec);

    std::vector<EquivalenceReport> reports;
    for (const GraphPair& pair : pairs) {
        require(pair.left.vertex_count() == pair.right.vertex_count(), "ShapeMismatch",
                "graph suites compare graphs on equally many vertices");
        EquivalenceReport report;
        report.pair_id = "kwl" + std::to_string(k) + ":" + pair.name;
        const StepGraphon w1 = graph_to_step_graphon(pair.left);
        const StepGraphon w2 = graph_to_step_graphon(pair.right);

        const bool equal =
            compare_fingerprints(w1, w2, Algorithm::owl(k + 1, ModeFlag::Graph)).equal;
        report.verdicts.emplace_back("fingerprint", equal ? "EQUAL" : "DIFFER");

        const bool lk = feasible(build_Lk(pair.left, pair.right, k + 1)).feasible;
        report.verdicts.emplace_back("pair-set-lp", lk ? "FEASIBLE" : "INFEASIBLE");

        if (equal != lk) {
            report.classification = Consistency::PaperViolation;
            report.details = "oblivious " + std::to_string(k + 1) +
                             "-WL equality and level-" + std::to_string(k + 1) +
                             " relaxation feasibility disagree";
        }
        attach_density_checks(report, equal, patterns, w1, w2);

        // The graphon-side characterization on the embedded pair, within the
        // commutant budget: warning-grade on these atom-carrying spaces.
        const bool graphon_equal =
            compare_fingerprints(w1, w2, Algorithm::owl(k + 1, ModeFlag::Graphon)).equal;
        markov_check(report, w1, w2, k + 1, graphon_equal, collector);
        reports.push_back(std::move(report));
    }
    return reports;
}

std::vector<EquivalenceReport> run_graphon_suite(const std::vector<GraphonPair>& pairs,
                                                 int k,
                                                 std::vector<MarkovWitness>* collector) {
    require(k >= 1 && k <= 2, "SizeLimitExceeded", "the graphon suite supports k in {1,2}");
    EnumerationSpec spec;
    spec.max_vertices = 4;
    spec.max_edge_multiplicity = 3;
    spec.treewidth_bound = k - 1;
    spec.simple_only = false;
    spec.connected_only = false;
    const std::vector<MultiGraph> patterns = enumerate_patterns(spec);

    std::vector<EquivalenceReport> reports;
    for (const GraphonPair& pair : pairs) {
        EquivalenceReport report;
        report.pair_id = "graphon" + std::to_string(k) + ":" + pair.name;
        const bool equal =
            compare_fingerprints(pair.left, pair.right, Algorithm::owl(k, ModeFlag::Graphon))
                .equal;
        report.verdicts.emplace_back("fingerprint", equal ? "EQUAL" : "DIFFER");
        attach_density_checks(report, equal, patterns, pair.left, pair.right);
        markov_check(report, pair.left, pair.right, k, equal, collector);
        reports.push_back(std::move(report));
    }
    return reports;
}

std::vector<EquivalenceReport> run_simple_suite(const std::vector<GraphonPair>& pairs,
                                                int k) {
    require(k >= 1 && k <= 3, "SizeLimitExceeded", "the simple suite supports k in 1..3");
    EnumerationSpec spec;
    spec.max_vertices = 4;
    spec.max_edge_multiplicity = 1;
    spec.treewidth_bound = k - 1;
    spec.simple_only = true;
    spec.connected_only = false;
    const std::vector<MultiGraph> patterns = enumerate_patterns(spec);

    std::vector<EquivalenceReport> reports;
    for (const GraphonPair& pair : pairs) {
        EquivalenceReport report;
        report.pair_id = "simple" + std::to_string(k) + ":" + pair.name;
        const bool equal =
            compare_fingerprints(pair.left, pair.right, Algorithm::simple(k)).equal;
        report.verdicts.emplace_back("fingerprint", equal ? "EQUAL" : "DIFFER");
        attach_density_checks(report, equal, patterns, pair.left, pair.right);
        reports.push_back(std::move(report));
    }
    return reports;
}

bool Fig1Report::as_expected() const {
    return colref_equal && owl2_first_differing_round == 0 && c2_left == Rational(2, 3) &&
           c2_right == Rational(4, 9) && simple2_equal && !simple3_equal &&
           k3_left == Rational(2, 9) && k3_right == Rational(8, 27) && markov1_feasible;
}

std::string Fig1Report::str() const {
    std::ostringstream os;
    os << "figure-1 pair\n";
    os << "  color refinement:      " << (colref_equal ? "EQUAL" : "DIFFER") << "\n";
    os << "  markov commutant k=1:  " << (markov1_feasible ? "FEASIBLE" : "INFEASIBLE")
       << "\n";
    os << "  oblivious 2-WL:        DIFFER at round " << owl2_first_differing_round << "\n";
    os << "  t(C2, left/right):     " << c2_left.str() << " vs " << c2_right.str() << "\n";
    os << "  simple 2-WL:           " << (simple2_equal ? "EQUAL" : "DIFFER") << "\n";
    os << "  simple 3-WL:           " << (simple3_equal ? "EQUAL" : "DIFFER") << "\n";
    os << "  t(K3, left/right):     " << k3_left.str() << " vs " << k3_right.str() << "\n";
    os << "  verdicts as expected:  " << (as_expected() ? "yes" : "NO");
    return os.str();
}

Fig1Report counterexample_fig1() {
    const StepGraphon left = fig1_left();
    const StepGraphon right = fig1_right();
    Fig1Report report;
    report.colref_equal = compare_fingerprints(left, right, Algorithm::colref()).equal;
    CompareResult owl2 =
        compare_fingerprints(left, right, Algorithm::owl(2, ModeFlag::Graphon));
    report.owl2_first_differing_round = owl2.equal ? -1 : owl2.first_differing_round;
    report.c2_left = hom_density_bruteforce(cycle_graph(2), left);
    report.c2_right = hom_density_bruteforce(cycle_graph(2), right);
    report.simple2_equal = compare_fingerprints(left, right, Algorithm::simple(2)).equal;
    report.simple3_equal = compare_fingerprints(left, right, Algorithm::simple(3)).equal;
    report.k3_left = hom_density_bruteforce(complete_graph(3), left);
    report.k3_right = hom_density_bruteforce(complete_graph(3), right);

    MarkovCommutantOptions options;
    options.permutation_invariant = true;
    options.include_kernel_operator = true;
    MarkovSystem ms = build_markov_commutant(left, right, 1, options);
    FeasibilityResult fr = feasible(ms.system);
    report.markov1_feasible = fr.feasible;
    if (fr.feasible) report.markov1_witness = ms.witness_matrix(fr.witness);
    return report;
}

} // namespace wlg
