#include "wlg/bilabeled.hpp"
#include "wlg/enumeration.hpp"
#include "wlg/error.hpp"
#include "wlg/harness.hpp"
#include "wlg/lp.hpp"
#include "wlg/operators.hpp"
#include "wlg/refinement.hpp"
#include "wlg/step_graphon.hpp"
#include "wlg/treedecomp.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

namespace py = pybind11;

namespace {

wlg::Algorithm make_algorithm(const std::string& algo, int k, const std::string& mode) {
    if (algo == "colref") return wlg::Algorithm::colref();
    wlg::ModeFlag flag = mode == "graph" ? wlg::ModeFlag::Graph : wlg::ModeFlag::Graphon;
    if (algo == "owl") return wlg::Algorithm::owl(k, flag);
    if (algo == "simple") return wlg::Algorithm::simple(k);
    wlg::fail("BadArgument", "unknown algorithm '" + algo + "'");
}

wlg::EnumerationSpec make_spec(int max_vertices, int max_mult, int treewidth_bound,
                               bool simple_only, bool connected_only) {
    wlg::EnumerationSpec spec;
    spec.max_vertices = max_vertices;
    spec.max_edge_multiplicity = max_mult;
    spec.treewidth_bound = treewidth_bound;
    spec.simple_only = simple_only;
    spec.connected_only = connected_only;
    return spec;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact Weisfeiler-Leman refinement, bi-labeled graph operators and LP "
              "characterizations on step graphons";

    py::register_exception<wlg::Error>(m, "WlgError", PyExc_ValueError);

    py::class_<wlg::MultiGraph>(m, "MultiGraph")
        .def(py::init([](const std::string& json) { return wlg::MultiGraph::from_json(json); }),
             py::arg("json"))
        .def_property_readonly("vertex_count", &wlg::MultiGraph::vertex_count)
        .def("to_json", &wlg::MultiGraph::to_json)
        .def("is_simple", &wlg::MultiGraph::is_simple)
        .def("is_connected", &wlg::MultiGraph::is_connected)
        .def("simplified", &wlg::MultiGraph::simplified)
        .def("__repr__", [](const wlg::MultiGraph& g) { return g.to_json(); })
        .def("__eq__",
             [](const wlg::MultiGraph& a, const wlg::MultiGraph& b) { return a == b; });

    py::class_<wlg::StepGraphon>(m, "StepGraphon")
        .def(py::init([](const std::string& json) { return wlg::parse_step_graphon(json); }),
             py::arg("json"))
        .def_property_readonly("size", &wlg::StepGraphon::size)
        .def("to_json", &wlg::StepGraphon::to_json)
        .def("mass", [](const wlg::StepGraphon& w, int x) { return w.mass(x).str(); })
        .def("weight",
             [](const wlg::StepGraphon& w, int x, int y) { return w.weight(x, y).str(); })
        .def("__repr__", [](const wlg::StepGraphon& w) { return w.to_json(); })
        .def("__eq__",
             [](const wlg::StepGraphon& a, const wlg::StepGraphon& b) { return a == b; });

    m.def("graph_to_step_graphon", &wlg::graph_to_step_graphon, py::arg("graph"));
    m.def("fig1_left", &wlg::fig1_left);
    m.def("fig1_right", &wlg::fig1_right);
    m.def("disjoint_union", &wlg::disjoint_union);
    m.def("cycle_graph", &wlg::cycle_graph, py::arg("n"));
    m.def("path_graph", &wlg::path_graph, py::arg("n"));
    m.def("complete_graph", &wlg::complete_graph, py::arg("n"));
    m.def("multigraphs_isomorphic", &wlg::multigraphs_isomorphic);

    // Densities come back as exact rational strings like "2/3".
    m.def(
        "hom_density",
        [](const wlg::MultiGraph& pattern, const wlg::StepGraphon& w) {
            return wlg::hom_density_bruteforce(pattern, w).str();
        },
        py::arg("pattern"), py::arg("graphon"));
    m.def(
        "term_density",
        [](const std::string& term, const wlg::StepGraphon& w) {
            return wlg::term_density(wlg::parse_term(term), w).str();
        },
        py::arg("term"), py::arg("graphon"));
    m.def(
        "term_graph",
        [](const std::string& term, bool strip_isolates) {
            wlg::MultiGraph g = wlg::eval_term(wlg::parse_term(term)).graph;
            return strip_isolates ? g.without_isolated_vertices() : g;
        },
        py::arg("term"), py::arg("strip_isolates") = true);
    m.def("term_height",
          [](const std::string& term) { return wlg::height(wlg::parse_term(term)); });

    m.def(
        "compare",
        [](const wlg::StepGraphon& w1, const wlg::StepGraphon& w2, const std::string& algo,
           int k, const std::string& mode) {
            wlg::CompareResult r =
                wlg::compare_fingerprints(w1, w2, make_algorithm(algo, k, mode));
            py::dict out;
            out["equal"] = r.equal;
            out["first_differing_round"] = r.first_differing_round;
            return out;
        },
        py::arg("left"), py::arg("right"), py::arg("algo") = "colref", py::arg("k") = 2,
        py::arg("mode") = "graphon");

    m.def(
        "exact_treewidth",
        [](const wlg::MultiGraph& g) { return wlg::exact_treewidth(g).width; },
        py::arg("graph"));

    m.def(
        "graph_to_term",
        [](const wlg::MultiGraph& g, int k, bool simple) {
            wlg::TreewidthResult tw = wlg::exact_treewidth(g);
            wlg::NiceTreeDecomposition ntd = wlg::make_nice(g, tw.witness);
            wlg::TermPtr t = simple ? wlg::nice_td_to_simple_term(g, ntd, k)
                                    : wlg::nice_td_to_term(g, ntd, k);
            return wlg::term_to_string(t);
        },
        py::arg("graph"), py::arg("k"), py::arg("simple") = false);

    m.def(
        "lk_feasible",
        [](const wlg::MultiGraph& g, const wlg::MultiGraph& h, int k) {
            return wlg::feasible(wlg::build_Lk(g, h, k)).feasible;
        },
        py::arg("left"), py::arg("right"), py::arg("k"));
    m.def(
        "doubly_stochastic_feasible",
        [](const wlg::MultiGraph& g, const wlg::MultiGraph& h) {
            return wlg::feasible(wlg::build_doubly_stochastic_commutant(g, h)).feasible;
        },
        py::arg("left"), py::arg("right"));
    m.def(
        "markov_commutant_feasible",
        [](const wlg::StepGraphon& u, const wlg::StepGraphon& w, int k,
           bool permutation_invariant, bool kernel_operator) {
            wlg::MarkovCommutantOptions options;
            options.permutation_invariant = permutation_invariant;
            options.include_kernel_operator = kernel_operator;
            return wlg::feasible(wlg::build_markov_commutant(u, w, k, options).system)
                .feasible;
        },
        py::arg("left"), py::arg("right"), py::arg("k"),
        py::arg("permutation_invariant") = false, py::arg("kernel_operator") = false);

    m.def(
        "enumerate_patterns",
        [](int max_vertices, int max_mult, int treewidth_bound, bool simple_only,
           bool connected_only) {
            return wlg::enumerate_patterns(
                make_spec(max_vertices, max_mult, treewidth_bound, simple_only,
                          connected_only));
        },
        py::arg("max_vertices") = 4, py::arg("max_mult") = 3, py::arg("treewidth_bound") = 1,
        py::arg("simple_only") = false, py::arg("connected_only") = true);

    m.def(
        "find_distinguisher",
        [](const wlg::StepGraphon& w1, const wlg::StepGraphon& w2, int k, bool simple_only,
           int max_vertices) -> std::optional<wlg::MultiGraph> {
            return wlg::find_distinguisher(
                w1, w2,
                make_spec(max_vertices, simple_only ? 1 : 3, k - 1, simple_only, true));
        },
        py::arg("left"), py::arg("right"), py::arg("k"), py::arg("simple_only") = false,
        py::arg("max_vertices") = 4);

    m.def("counterexample_fig1", [] {
        wlg::Fig1Report report = wlg::counterexample_fig1();
        py::dict out;
        out["colref_equal"] = report.colref_equal;
        out["owl2_first_differing_round"] = report.owl2_first_differing_round;
        out["c2_left"] = report.c2_left.str();
        out["c2_right"] = report.c2_right.str();
        out["simple2_equal"] = report.simple2_equal;
        out["simple3_equal"] = report.simple3_equal;
        out["k3_left"] = report.k3_left.str();
        out["k3_right"] = report.k3_right.str();
        out["markov1_feasible"] = report.markov1_feasible;
        out["as_expected"] = report.as_expected();
        return out;
    });
}
