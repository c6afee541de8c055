#include "wlg/harness.hpp"

#include "helpers.hpp"

#include <doctest.h>

using namespace wlg;
using namespace wlg::testing;

namespace {

GraphPair curated_c6() {
    return {"c6-vs-2c3", cycle_graph(6),
            disjoint_union(cycle_graph(3), cycle_graph(3))};
}

} // namespace

TEST_CASE("colref suite classifies the curated pairs") {
    std::vector<GraphPair> pairs{
        curated_c6(),
        {"k2-vs-2k1", complete_graph(2), edgeless_graph(2)},
        {"self", complete_graph(3), complete_graph(3)},
    };
    auto reports = run_colref_suite(pairs);
    REQUIRE(reports.size() == 3);

    CHECK(reports[0].classification == Consistency::Consistent);
    CHECK(reports[0].verdict("fingerprint") == "EQUAL");
    CHECK(reports[0].verdict("doubly-stochastic") == "FEASIBLE");
    CHECK(reports[0].verdict("parameters") == "EQUAL");
    CHECK(reports[0].verdict("densities") == "EQUAL-ON-SET");

    CHECK(reports[1].classification == Consistency::Consistent);
    CHECK(reports[1].verdict("fingerprint") == "DIFFER");
    CHECK(reports[1].verdict("doubly-stochastic") == "INFEASIBLE");
    CHECK(reports[1].verdict("parameters") == "DIFFER");
    CHECK(reports[1].verdict("densities").substr(0, 6) == "DIFFER");

    CHECK(reports[2].classification == Consistency::Consistent);
    CHECK(reports[2].verdict("fingerprint") == "EQUAL");
}

TEST_CASE("kwl suite on the curated pairs at both levels") {
    std::vector<GraphPair> pairs{curated_c6(), {"self", complete_graph(3), complete_graph(3)}};

    auto level1 = run_kwl_suite(pairs, 1);
    CHECK(level1[0].classification == Consistency::Consistent);
    CHECK(level1[0].verdict("fingerprint") == "EQUAL");
    CHECK(level1[0].verdict("pair-set-lp") == "FEASIBLE");
    CHECK(level1[1].classification == Consistency::Consistent);

    auto level2 = run_kwl_suite(pairs, 2);
    CHECK(level2[0].classification == Consistency::Consistent);
    CHECK(level2[0].verdict("fingerprint") == "DIFFER");
    CHECK(level2[0].verdict("pair-set-lp") == "INFEASIBLE");
    CHECK(level2[1].classification == Consistency::Consistent);
}

TEST_CASE("graphon suite on the figure-1 pair") {
    std::vector<GraphonPair> pairs{{"fig1", fig1_left(), fig1_right()}};

    std::vector<MarkovWitness> witnesses;
    auto level1 = run_graphon_suite(pairs, 1, &witnesses);
    CHECK(level1[0].classification == Consistency::Consistent);
    CHECK(level1[0].verdict("fingerprint") == "EQUAL");
    // Oblivious 1-WL sees nothing: the treewidth <= 0 patterns are edgeless.
    CHECK(level1[0].verdict("densities") == "EQUAL-ON-SET");
    CHECK(level1[0].verdict("markov-perm") == "FEASIBLE");
    CHECK(!witnesses.empty());

    auto level2 = run_graphon_suite(pairs, 2, nullptr);
    CHECK(level2[0].classification == Consistency::Consistent);
    CHECK(level2[0].verdict("fingerprint") == "DIFFER");
    CHECK(level2[0].verdict("densities").find("DIFFER") == 0);
    CHECK(level2[0].verdict("markov") == "INFEASIBLE");
    CHECK(level2[0].verdict("markov-perm") == "INFEASIBLE");
}

TEST_CASE("graphon suite is consistent on permuted pairs") {
    std::uint64_t state = 10;
    StepGraphon w = random_step_graphon(state, 3);
    StepGraphon u = w.permuted({2, 0, 1});
    std::vector<GraphonPair> pairs{{"perm", w, u}};
    for (int k = 1; k <= 2; ++k) {
        auto reports = run_graphon_suite(pairs, k, nullptr);
        CHECK(reports[0].classification == Consistency::Consistent);
        CHECK(reports[0].verdict("fingerprint") == "EQUAL");
        CHECK(reports[0].warnings.empty());
    }
}

TEST_CASE("simple suite on the figure-1 pair") {
    std::vector<GraphonPair> pairs{{"fig1", fig1_left(), fig1_right()}};

    auto level2 = run_simple_suite(pairs, 2);
    CHECK(level2[0].classification == Consistency::Consistent);
    CHECK(level2[0].verdict("fingerprint") == "EQUAL");
    CHECK(level2[0].verdict("densities") == "EQUAL-ON-SET");

    auto level3 = run_simple_suite(pairs, 3);
    CHECK(level3[0].classification == Consistency::Consistent);
    CHECK(level3[0].verdict("fingerprint") == "DIFFER");
    CHECK(level3[0].verdict("densities").find("DIFFER") == 0);
    // The distinguisher is the triangle.
    CHECK(level3[0].verdict("densities").find("\"n\":3") != std::string::npos);
}

TEST_CASE("figure-1 report carries the expected verdicts") {
    Fig1Report report = counterexample_fig1();
    CHECK(report.as_expected());
    CHECK(report.colref_equal);
    CHECK(report.owl2_first_differing_round == 0);
    CHECK(report.c2_left == Rational(2, 3));
    CHECK(report.c2_right == Rational(4, 9));
    CHECK(report.simple2_equal);
    CHECK(!report.simple3_equal);
    CHECK(report.markov1_feasible);
    CHECK(is_markov_matrix(report.markov1_witness, fig1_left(), fig1_right(), 1));
}

TEST_CASE("seeded pair generation is reproducible") {
    auto a = seeded_graph_pairs(42, 5, 6);
    auto b = seeded_graph_pairs(42, 5, 6);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].name == b[i].name);
        CHECK(a[i].left == b[i].left);
        CHECK(a[i].right == b[i].right);
        CHECK(a[i].left.vertex_count() == a[i].right.vertex_count());
        CHECK(a[i].left.vertex_count() <= 6);
    }
    auto c = seeded_graph_pairs(43, 5, 6);
    bool any_difference = false;
    for (std::size_t i = 0; i < c.size(); ++i)
        any_difference = any_difference || !(c[i].left == a[i].left);
    CHECK(any_difference);

    auto g1 = seeded_graphon_pairs(7, 4, 4);
    auto g2 = seeded_graphon_pairs(7, 4, 4);
    for (std::size_t i = 0; i < g1.size(); ++i) {
        CHECK(g1[i].left == g2[i].left);
        CHECK(g1[i].right == g2[i].right);
        CHECK(g1[i].left.size() <= 4);
    }
}

TEST_CASE("colref suite stays consistent on seeded random pairs") {
    auto pairs = seeded_graph_pairs(90210, 20, 6);
    for (const auto& report : run_colref_suite(pairs))
        CHECK(report.classification != Consistency::PaperViolation);
}

TEST_CASE("stable parameters match exactly for fractionally isomorphic pairs") {
    CHECK(same_stable_parameters(fig1_left(), fig1_left()));
    // The weighted pair is fractionally isomorphic: one class, degree 2/3.
    CHECK(same_stable_parameters(fig1_left(), fig1_right()));
    StepGraphon c6 = graph_to_step_graphon(cycle_graph(6));
    StepGraphon cc = graph_to_step_graphon(disjoint_union(cycle_graph(3), cycle_graph(3)));
    CHECK(same_stable_parameters(c6, cc));
    CHECK(!same_stable_parameters(graph_to_step_graphon(complete_graph(2)),
                                  graph_to_step_graphon(edgeless_graph(2))));
}
