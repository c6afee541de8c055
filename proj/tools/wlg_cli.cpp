#include "wlg/bilabeled.hpp"
#include "wlg/enumeration.hpp"
#include "wlg/error.hpp"
#include "wlg/harness.hpp"
#include "wlg/lp.hpp"
#include "wlg/operators.hpp"
#include "wlg/refinement.hpp"
#include "wlg/step_graphon.hpp"
#include "wlg/treedecomp.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) wlg::fail("FileNotFound", "cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// A step graphon document, or a multigraph document embedded uniformly.
wlg::StepGraphon load_graphon(const std::string& path) {
    std::string text = slurp(path);
    if (text.find("\"masses\"") != std::string::npos)
        return wlg::parse_step_graphon(text);
    return wlg::graph_to_step_graphon(wlg::MultiGraph::from_json(text));
}

wlg::MultiGraph load_graph(const std::string& path) {
    return wlg::MultiGraph::from_json(slurp(path));
}

std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t hash = 1469598103934665603ull;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    return hash;
}

std::string fingerprint_digest(const wlg::Fingerprint& fp) {
    std::ostringstream os;
    for (const auto& round : fp.rounds) {
        for (const auto& [mass, color] : round) os << mass.str() << "*" << color << ";";
        os << "|";
    }
    std::ostringstream hex;
    hex << std::hex << fnv1a(os.str());
    return hex.str();
}

wlg::Algorithm make_algorithm(const std::string& algo, int k, const std::string& mode) {
    if (algo == "colref") return wlg::Algorithm::colref();
    wlg::ModeFlag flag = mode == "graph" ? wlg::ModeFlag::Graph : wlg::ModeFlag::Graphon;
    if (algo == "owl") return wlg::Algorithm::owl(k, flag);
    if (algo == "simple") return wlg::Algorithm::simple(k);
    wlg::fail("BadArgument", "unknown algorithm '" + algo + "'");
}

int class_count(const std::vector<int>& colors) {
    std::vector<int> sorted = colors;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    return static_cast<int>(sorted.size());
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Weisfeiler-Leman refinement, bi-labeled graph operators and LP "
                 "characterizations on step graphons"};
    app.require_subcommand(1);

    // refine
    std::string refine_algo = "colref", refine_mode = "graphon", refine_file;
    int refine_k = 2;
    auto* refine = app.add_subcommand("refine", "run one refinement and print rounds");
    refine->add_option("--algo", refine_algo, "colref | owl | simple");
    refine->add_option("--k", refine_k, "tuple arity for owl/simple");
    refine->add_option("--mode", refine_mode, "graphon | graph");
    refine->add_option("file", refine_file, "step graphon or multigraph json")->required();

    // compare
    std::string cmp_algo = "colref", cmp_mode = "graphon", cmp_left, cmp_right;
    int cmp_k = 2;
    auto* cmp = app.add_subcommand("compare", "compare fingerprints of two objects");
    cmp->add_option("--algo", cmp_algo, "colref | owl | simple");
    cmp->add_option("--k", cmp_k, "tuple arity for owl/simple");
    cmp->add_option("--mode", cmp_mode, "graphon | graph");
    cmp->add_option("left", cmp_left)->required();
    cmp->add_option("right", cmp_right)->required();

    // density
    std::string density_term, density_pattern, density_graphon;
    auto* density = app.add_subcommand("density", "homomorphism density of a term or pattern");
    density->add_option("--term", density_term, "term s-expression");
    density->add_option("--pattern", density_pattern, "multigraph json file");
    density->add_option("graphon", density_graphon, "step graphon json")->required();

    // lp
    std::string lp_system = "lk", lp_left, lp_right;
    int lp_k = 2;
    bool lp_perm = false, lp_kernel = false, lp_witness = false;
    auto* lp = app.add_subcommand("lp", "build and decide a linear system");
    lp->add_option("--system", lp_system, "lk | ds | markov");
    lp->add_option("--k", lp_k, "level of the system");
    lp->add_flag("--perm-invariant", lp_perm, "add permutation-invariance equalities");
    lp->add_flag("--kernel", lp_kernel, "add the kernel operator (markov, k = 1)");
    lp->add_flag("--witness", lp_witness, "print the witness on feasibility");
    lp->add_option("left", lp_left)->required();
    lp->add_option("right", lp_right)->required();

    // enumerate
    int enum_tw = 1, enum_vertices = 4, enum_mult = 3;
    bool enum_simple = false, enum_all = false;
    auto* enumerate = app.add_subcommand("enumerate", "canonical patterns by treewidth");
    enumerate->add_option("--tw", enum_tw, "treewidth bound");
    enumerate->add_option("--max-vertices", enum_vertices, "vertex bound (<= 6)");
    enumerate->add_option("--max-mult", enum_mult, "multiplicity bound (<= 3)");
    enumerate->add_flag("--simple", enum_simple, "simple graphs only");
    enumerate->add_flag("--all", enum_all, "include disconnected patterns");

    // distinguish
    int dist_k = 2;
    bool dist_simple = false;
    std::string dist_left, dist_right;
    auto* distinguish = app.add_subcommand("distinguish", "search a density distinguisher");
    distinguish->add_option("--k", dist_k, "treewidth bound is k-1");
    distinguish->add_flag("--simple", dist_simple, "simple patterns only");
    distinguish->add_option("left", dist_left)->required();
    distinguish->add_option("right", dist_right)->required();

    // harness
    std::string suite = "colref";
    int harness_k = 1, harness_pairs = 10;
    std::uint64_t harness_seed = 1;
    auto* harness = app.add_subcommand("harness", "cross-validate the equivalences");
    harness->add_option("--suite", suite, "colref | kwl | graphon | simple");
    harness->add_option("--k", harness_k, "level parameter of the suite");
    harness->add_option("--pairs", harness_pairs, "number of seeded random pairs");
    harness->add_option("--seed", harness_seed, "random seed");

    // counterexample
    std::string counter_name = "fig1";
    auto* counter = app.add_subcommand("counterexample", "print a built-in counterexample");
    counter->add_option("name", counter_name, "fig1");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*refine) {
            wlg::StepGraphon w = load_graphon(refine_file);
            wlg::Algorithm algo = make_algorithm(refine_algo, refine_k, refine_mode);
            wlg::ColorTable table;
            auto results = wlg::refine_joint({&w}, algo, table);
            const wlg::Coloring& coloring = results[0].coloring;
            for (int r = 0; r < coloring.round_count(); ++r)
                std::cout << "round " << r << ": " << class_count(coloring.rounds[r])
                          << " classes\n";
            std::cout << "stabilized after " << coloring.round_count() - 1 << " rounds\n";
            std::cout << "terminal fingerprint digest: "
                      << fingerprint_digest(results[0].fingerprint) << "\n";
        } else if (*cmp) {
            wlg::StepGraphon left = load_graphon(cmp_left);
            wlg::StepGraphon right = load_graphon(cmp_right);
            wlg::Algorithm algo = make_algorithm(cmp_algo, cmp_k, cmp_mode);
            wlg::CompareResult result = wlg::compare_fingerprints(left, right, algo);
            if (result.equal)
                std::cout << "EQUAL\n";
            else
                std::cout << "DIFFER at round " << result.first_differing_round << "\n";
        } else if (*density) {
            wlg::StepGraphon w = wlg::parse_step_graphon(slurp(density_graphon));
            if (!density_term.empty()) {
                wlg::TermPtr t = wlg::parse_term(density_term);
                std::cout << wlg::term_density(t, w).str() << "\n";
            } else if (!density_pattern.empty()) {
                wlg::MultiGraph pattern = load_graph(density_pattern);
                std::cout << wlg::hom_density_bruteforce(pattern, w).str() << "\n";
            } else {
                wlg::fail("BadArgument", "density needs --term or --pattern");
            }
        } else if (*lp) {
            wlg::FeasibilityResult result;
            std::vector<std::string> names;
            if (lp_system == "lk") {
                wlg::LinearSystem system =
                    wlg::build_Lk(load_graph(lp_left), load_graph(lp_right), lp_k);
                result = wlg::feasible(system);
                for (int v = 0; v < system.variable_count(); ++v)
                    names.push_back(system.variable_name(v));
            } else if (lp_system == "ds") {
                wlg::LinearSystem system = wlg::build_doubly_stochastic_commutant(
                    load_graph(lp_left), load_graph(lp_right));
                result = wlg::feasible(system);
                for (int v = 0; v < system.variable_count(); ++v)
                    names.push_back(system.variable_name(v));
            } else if (lp_system == "markov") {
                wlg::MarkovCommutantOptions options;
                options.permutation_invariant = lp_perm;
                options.include_kernel_operator = lp_kernel;
                wlg::MarkovSystem ms = wlg::build_markov_commutant(
                    load_graphon(lp_left), load_graphon(lp_right), lp_k, options);
                result = wlg::feasible(ms.system);
                for (int v = 0; v < ms.system.variable_count(); ++v)
                    names.push_back(ms.system.variable_name(v));
            } else {
                wlg::fail("BadArgument", "unknown system '" + lp_system + "'");
            }
            std::cout << (result.feasible ? "FEASIBLE" : "INFEASIBLE") << "\n";
            if (result.feasible && lp_witness)
                for (std::size_t v = 0; v < names.size(); ++v)
                    if (!result.witness[v].is_zero())
                        std::cout << names[v] << " = " << result.witness[v].str() << "\n";
        } else if (*enumerate) {
            wlg::EnumerationSpec spec;
            spec.max_vertices = enum_vertices;
            spec.max_edge_multiplicity = enum_mult;
            spec.treewidth_bound = enum_tw;
            spec.simple_only = enum_simple;
            spec.connected_only = !enum_all;
            for (const wlg::MultiGraph& g : wlg::enumerate_patterns(spec))
                std::cout << g.to_json() << "\n";
        } else if (*distinguish) {
            wlg::EnumerationSpec spec;
            spec.max_vertices = 4;
            spec.max_edge_multiplicity = dist_simple ? 1 : 3;
            spec.treewidth_bound = dist_k - 1;
            spec.simple_only = dist_simple;
            spec.connected_only = true;
            auto witness = wlg::find_distinguisher(load_graphon(dist_left),
                                                   load_graphon(dist_right), spec);
            if (witness)
                std::cout << "DISTINGUISHED by " << witness->to_json() << "\n";
            else
                std::cout << "NO DISTINGUISHER within budget\n";
        } else if (*harness) {
            std::vector<wlg::EquivalenceReport> reports;
            if (suite == "colref" || suite == "kwl") {
                auto pairs = wlg::seeded_graph_pairs(harness_seed, harness_pairs, 6);
                pairs.push_back({"c6-vs-2c3", wlg::cycle_graph(6),
                                 wlg::disjoint_union(wlg::cycle_graph(3), wlg::cycle_graph(3))});
                pairs.push_back({"k3-vs-k3", wlg::complete_graph(3), wlg::complete_graph(3)});
                pairs.push_back({"k2-vs-2k1", wlg::complete_graph(2), wlg::edgeless_graph(2)});
                reports = suite == "colref" ? wlg::run_colref_suite(pairs)
                                            : wlg::run_kwl_suite(pairs, harness_k);
            } else if (suite == "graphon" || suite == "simple") {
                auto pairs = wlg::seeded_graphon_pairs(harness_seed, harness_pairs, 4);
                pairs.push_back({"fig1", wlg::fig1_left(), wlg::fig1_right()});
                reports = suite == "graphon" ? wlg::run_graphon_suite(pairs, harness_k)
                                             : wlg::run_simple_suite(pairs, harness_k);
            } else {
                wlg::fail("BadArgument", "unknown suite '" + suite + "'");
            }
            bool violation = false;
            for (const wlg::EquivalenceReport& report : reports) {
                std::cout << report.str() << "\n";
                violation |= report.classification == wlg::Consistency::PaperViolation;
            }
            std::cout << "pairs: " << reports.size() << ", seed: " << harness_seed << "\n";
            return violation ? 1 : 0;
        } else if (*counter) {
            wlg::require(counter_name == "fig1", "BadArgument",
                         "unknown counterexample '" + counter_name + "'");
            wlg::Fig1Report report = wlg::counterexample_fig1();
            std::cout << report.str() << "\n";
            return report.as_expected() ? 0 : 1;
        }
    } catch (const wlg::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
