#include "wlg/bilabeled.hpp"
#include "wlg/error.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <algorithm>
#include <functional>

using namespace wlg;

namespace {

bool fails_with(const std::function<void()>& fn, const std::string& code) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code() == code;
    }
    return false;
}

BiLabeledGraph labeled_edge() {
    // A^2_{12} composed onto the all-one graph: K2 with both vertices labeled.
    return compose(make_generator(GenAdjacency{2, 0, 1}), make_generator(GenOne{2}));
}

} // namespace

TEST_CASE("adjacency generator is the identity-labeled single edge") {
    BiLabeledGraph a = make_generator(GenAdjacency{3, 0, 1});
    CHECK(a.graph.vertex_count() == 3);
    CHECK(a.graph.edges().size() == 1);
    CHECK(a.graph.multiplicity(0, 1) == 1);
    CHECK(a.inputs == std::vector<int>{0, 1, 2});
    CHECK(a.outputs == std::vector<int>{0, 1, 2});
}

TEST_CASE("neighbor graph splits one label pair") {
    BiLabeledGraph n = make_generator(GenNeighbor{3, 1});
    CHECK(n.graph.vertex_count() == 4);
    CHECK(n.graph.edges().empty());
    CHECK(n.input_arity() == 3);
    CHECK(n.output_arity() == 3);
    // Slots 0 and 2 share a vertex on both sides, slot 1 does not.
    CHECK(n.inputs[0] == n.outputs[0]);
    CHECK(n.inputs[2] == n.outputs[2]);
    CHECK(n.inputs[1] != n.outputs[1]);
}

TEST_CASE("adj-nei generator of the two-variable case") {
    BiLabeledGraph s = make_generator(GenAdjNei{2, 1, {0}});
    CHECK(s.graph.vertex_count() == 3);
    CHECK(s.graph.edges().size() == 1);
    // The edge joins the shared slot-0 vertex with the output-1 vertex.
    CHECK(s.inputs[0] == s.outputs[0]);
    CHECK(s.graph.adjacent(s.inputs[0], s.outputs[1]));
    CHECK(!s.graph.adjacent(s.inputs[0], s.inputs[1]));

    // Equal to the compose chain defining it.
    BiLabeledGraph chain = compose(make_generator(GenNeighbor{2, 1}),
                                   make_generator(GenAdjacency{2, 0, 1}));
    CHECK(are_isomorphic(s, chain));
}

TEST_CASE("bad generator indices are rejected") {
    CHECK(fails_with([] { make_generator(GenNeighbor{3, 3}); }, "BadGeneratorIndex"));
    CHECK(fails_with([] { make_generator(GenAdjacency{2, 1, 1}); }, "BadGeneratorIndex"));
    CHECK(fails_with([] { make_generator(GenPermutation{2, {0, 0}}); }, "BadGeneratorIndex"));
    CHECK(fails_with([] { make_generator(GenAdjNei{2, 1, {1}}); }, "BadGeneratorIndex"));
}

TEST_CASE("composition glues outputs onto inputs") {
    // The split-third-label graph composed with the all-pairs triangle.
    BiLabeledGraph n3 = make_generator(GenNeighbor{3, 2});
    BiLabeledGraph triangle = compose(
        make_generator(GenAdjacency{3, 0, 1}),
        compose(make_generator(GenAdjacency{3, 1, 2}), make_generator(GenAdjacency{3, 0, 2})));
    CHECK(triangle.graph.total_multiplicity() == 3);

    BiLabeledGraph c = compose(n3, triangle);
    CHECK(c.graph.vertex_count() == 4);
    CHECK(c.graph.total_multiplicity() == 3);
    int v1 = c.inputs[0], v2 = c.inputs[1], v3a = c.inputs[2], v3b = c.outputs[2];
    CHECK(c.graph.adjacent(v1, v2));
    CHECK(c.graph.adjacent(v2, v3b));
    CHECK(c.graph.adjacent(v1, v3b));
    CHECK(c.graph.degree(v3a) == 0);
}

TEST_CASE("introduce composed with forget is the neighbor graph") {
    for (int k = 1; k <= 3; ++k)
        for (int j = 0; j < k; ++j) {
            BiLabeledGraph lhs = compose(make_generator(GenIntroduce{k, j}),
                                         make_generator(GenForget{k, j}));
            CHECK(are_isomorphic(lhs, make_generator(GenNeighbor{k, j})));
        }
}

TEST_CASE("composing adjacency with itself doubles the edge") {
    BiLabeledGraph a = make_generator(GenAdjacency{2, 0, 1});
    BiLabeledGraph c2 = compose(a, a);
    CHECK(c2.graph.vertex_count() == 2);
    CHECK(c2.graph.multiplicity(0, 1) == 2);
}

TEST_CASE("composition arity mismatch is rejected") {
    CHECK(fails_with(
        [] { compose(make_generator(GenOne{2}), make_generator(GenOne{2})); },
        "ArityMismatch"));
}

TEST_CASE("schur product accumulates multiplicities") {
    BiLabeledGraph edge = labeled_edge();
    BiLabeledGraph c2 = schur(edge, edge);
    CHECK(c2.graph.vertex_count() == 2);
    CHECK(c2.graph.multiplicity(0, 1) == 2);
    CHECK(c2.input_arity() == 2);
    CHECK(c2.output_arity() == 0);

    // Identifying with the edgeless all-one graph adds nothing.
    BiLabeledGraph same = schur(edge, make_generator(GenOne{2}));
    CHECK(are_isomorphic(same, edge));

    BiLabeledGraph point = schur(make_generator(GenOne{1}), make_generator(GenOne{1}));
    CHECK(point.graph.vertex_count() == 1);
    CHECK(point.graph.edges().empty());

    CHECK(fails_with([&] { schur(edge, make_generator(GenOne{3})); }, "ArityMismatch"));
    CHECK(fails_with(
        [&] { schur(make_generator(GenAdjacency{2, 0, 1}), make_generator(GenOne{2})); },
        "ArityMismatch"));
}

TEST_CASE("transpose swaps the label roles and is involutive") {
    BiLabeledGraph intro = make_generator(GenIntroduce{3, 1});
    CHECK(are_isomorphic(transpose(intro), make_generator(GenForget{3, 1})));
    BiLabeledGraph a = make_generator(GenAdjacency{3, 0, 2});
    CHECK(are_isomorphic(transpose(a), a));
    BiLabeledGraph n = make_generator(GenNeighbor{2, 0});
    CHECK(are_isomorphic(transpose(transpose(n)), n));
    CHECK(are_isomorphic(transpose(n), n));
}

TEST_CASE("transpose reverses compositions up to isomorphism") {
    BiLabeledGraph f1 = make_generator(GenAdjNei{2, 1, {0}});
    BiLabeledGraph f2 = make_generator(GenAdjacency{2, 0, 1});
    CHECK(are_isomorphic(transpose(compose(f1, f2)),
                         compose(transpose(f2), transpose(f1))));
}

TEST_CASE("permutation graphs act by relabeling") {
    BiLabeledGraph f = make_generator(GenAdjNei{3, 2, {0}});
    std::vector<int> perm{1, 2, 0};
    BiLabeledGraph lhs = compose(make_generator(GenPermutation{3, perm}), f);
    // P o (F,a,b) = (F, inverse-permuted a, b)
    std::vector<int> expected_inputs(3);
    for (int i = 0; i < 3; ++i) expected_inputs[perm[i]] = f.inputs[i];
    BiLabeledGraph direct{f.graph, expected_inputs, f.outputs};
    // Strip the padding isolates of the permutation graph before comparing.
    std::vector<int> keep;
    for (int v = 0; v < lhs.graph.vertex_count(); ++v)
        if (lhs.graph.degree(v) > 0 ||
            std::find(lhs.inputs.begin(), lhs.inputs.end(), v) != lhs.inputs.end() ||
            std::find(lhs.outputs.begin(), lhs.outputs.end(), v) != lhs.outputs.end())
            keep.push_back(v);
    std::vector<int> remap(lhs.graph.vertex_count(), -1);
    for (std::size_t i = 0; i < keep.size(); ++i) remap[keep[i]] = static_cast<int>(i);
    BiLabeledGraph stripped{lhs.graph.induced(keep), {}, {}};
    for (int v : lhs.inputs) stripped.inputs.push_back(remap[v]);
    for (int v : lhs.outputs) stripped.outputs.push_back(remap[v]);
    CHECK(are_isomorphic(stripped, direct));
}

TEST_CASE("non-oblivious simple generators are constructible") {
    // The four isomorphism types at k = 1.
    BiLabeledGraph g1 = make_generator(GenNonObliviousSimple{1, 0, {1}, 1});
    CHECK(g1.graph.vertex_count() == 2);
    CHECK(g1.graph.total_multiplicity() == 1);
    CHECK(g1.inputs[0] != g1.outputs[0]);

    BiLabeledGraph g2 = make_generator(GenNonObliviousSimple{1, 0, {}, 1});
    CHECK(g2.graph.vertex_count() == 2);
    CHECK(g2.graph.edges().empty());
    CHECK(g2.inputs[0] != g2.outputs[0]);

    BiLabeledGraph g3 = make_generator(GenNonObliviousSimple{1, 0, {1}, 0});
    CHECK(g3.graph.total_multiplicity() == 1);
    CHECK(g3.inputs[0] == g3.outputs[0]);

    BiLabeledGraph g4 = make_generator(GenNonObliviousSimple{1, 0, {}, 0});
    CHECK(g4.graph.vertex_count() == 2);
    CHECK(g4.graph.edges().empty());
    CHECK(g4.inputs[0] == g4.outputs[0]);

    CHECK(g1.input_arity() == 1);
    CHECK(g1.output_arity() == 1);
}

TEST_CASE("isomorphism respects labels positionally") {
    BiLabeledGraph edge = labeled_edge();
    BiLabeledGraph renumbered{MultiGraph(2, {{0, 1, 1}}), {1, 0}, {}};
    // Same underlying graph, inputs swapped: still isomorphic by the swap map.
    CHECK(are_isomorphic(edge, renumbered));

    BiLabeledGraph c2 = schur(edge, edge);
    CHECK(!are_isomorphic(edge, c2));

    BiLabeledGraph n = make_generator(GenNeighbor{2, 0});
    CHECK(are_isomorphic(n, transpose(n)));

    // Path with ends labeled vs path with one end and middle labeled.
    BiLabeledGraph p1{path_graph(3), {0, 2}, {}};
    BiLabeledGraph p2{path_graph(3), {0, 1}, {}};
    CHECK(!are_isomorphic(p1, p2));
}

TEST_CASE("terms evaluate per the structural recursion") {
    TermPtr one2 = Term::one(2);
    BiLabeledGraph ev = eval_term(one2);
    CHECK(ev.graph.vertex_count() == 2);
    CHECK(ev.graph.edges().empty());
    CHECK(ev.input_arity() == 2);
    CHECK(ev.output_arity() == 0);

    TermPtr edge = Term::compose(GenAdjacency{2, 0, 1}, one2);
    CHECK(are_isomorphic(eval_term(edge), labeled_edge()));

    TermPtr c2 = Term::schur(edge, edge);
    BiLabeledGraph ev2 = eval_term(c2);
    CHECK(ev2.graph.multiplicity(0, 1) == 2);
}

TEST_CASE("terms only compose square generators") {
    CHECK(fails_with([] { Term::compose(GenIntroduce{2, 0}, Term::one(2)); },
                     "BadTermGenerator"));
    CHECK(fails_with([] { Term::compose(GenNonObliviousSimple{2, 0, {}, 0}, Term::one(2)); },
                     "BadTermGenerator"));
    CHECK(fails_with([] { Term::compose(GenAdjacency{3, 0, 1}, Term::one(2)); },
                     "ArityMismatch"));
    CHECK(fails_with([] { Term::schur(Term::one(2), Term::one(3)); }, "ArityMismatch"));
}

TEST_CASE("height counts neighbor steps only") {
    TermPtr one2 = Term::one(2);
    CHECK(height(one2) == 0);
    TermPtr a = Term::compose(GenAdjacency{2, 0, 1}, one2);
    CHECK(height(a) == 0);
    TermPtr n = Term::compose(GenNeighbor{2, 0}, a);
    CHECK(height(n) == 1);
    TermPtr s = Term::compose(GenAdjNei{2, 1, {0}}, n);
    CHECK(height(s) == 2);
    CHECK(height(Term::schur(n, a)) == 1);
    CHECK(height(Term::compose(GenPermutation{2, {1, 0}}, n)) == 1);
}

TEST_CASE("bi-labeled graphs round trip through json") {
    BiLabeledGraph s = make_generator(GenAdjNei{3, 1, {0, 2}});
    BiLabeledGraph back = BiLabeledGraph::from_json(s.to_json());
    CHECK(back.graph == s.graph);
    CHECK(back.inputs == s.inputs);
    CHECK(back.outputs == s.outputs);

    CHECK(fails_with(
        [] { BiLabeledGraph::from_json(R"({"n":2,"edges":[],"in":[0,0],"out":[]})"); },
        "LabelCollision"));
    CHECK(fails_with(
        [] { BiLabeledGraph::from_json(R"({"n":2,"edges":[],"in":[5],"out":[]})"); },
        "VertexOutOfRange"));
}

TEST_CASE("isomorphism guard rejects oversized graphs") {
    BiLabeledGraph big{MultiGraph(11), {}, {}};
    CHECK(fails_with([&] { are_isomorphic(big, big); }, "SizeLimitExceeded"));
}

TEST_CASE("terms over the generator family evaluate into M^{k,0}") {
    for (int k = 1; k <= 3; ++k)
        for (const TermPtr& t : wlg::testing::enumerate_terms(k, 2, 4)) {
            BiLabeledGraph ev = eval_term(t);
            CHECK(ev.input_arity() == k);
            CHECK(ev.output_arity() == 0);
        }
}

TEST_CASE("adj-nei equals its defining compose chain") {
    for (int k = 2; k <= 3; ++k)
        for (int j = 0; j < k; ++j)
            for (unsigned vs = 0; vs < (1u << k); ++vs) {
                if (vs >> j & 1u) continue;
                std::vector<int> incident;
                for (int i = 0; i < k; ++i)
                    if (vs >> i & 1u) incident.push_back(i);
                BiLabeledGraph chain = make_generator(GenNeighbor{k, j});
                for (int i : incident)
                    chain = compose(chain, make_generator(GenAdjacency{k, i, j}));
                CHECK(are_isomorphic(make_generator(GenAdjNei{k, j, incident}), chain));
            }
}

TEST_CASE("term s-expressions round trip") {
    const std::string text = "(schur (comp (N 2 1) (comp (A 2 1 2) (one 2))) "
                             "(comp (S 2 2 (1)) (comp (P 2 2 1) (one 2))))";
    TermPtr t = parse_term(text);
    CHECK(height(t) == 1);
    CHECK(parse_term(term_to_string(t)) != nullptr);
    CHECK(term_to_string(parse_term(term_to_string(t))) == term_to_string(t));
    CHECK(are_isomorphic(eval_term(t), eval_term(parse_term(term_to_string(t)))));

    CHECK(fails_with([] { parse_term("(comp (A 2 1 2))"); }, "MalformedTerm"));
    CHECK(fails_with([] { parse_term("(one 2) junk"); }, "MalformedTerm"));
    CHECK(fails_with([] { parse_term("(frob 2)"); }, "MalformedTerm"));
    CHECK(parse_term(" ( one   3 ) ") != nullptr);
}

TEST_CASE("permutation identities from the composition rules") {
    // P_pi o (F,a,b) = (F, pi^{-1}(a), b) and (F,a,b) o P_pi = (F, a, pi(b)).
    BiLabeledGraph f = make_generator(GenAdjacency{3, 0, 1});
    std::vector<int> perm{2, 0, 1};
    BiLabeledGraph left = compose(make_generator(GenPermutation{3, perm}), f);
    BiLabeledGraph right = compose(f, make_generator(GenPermutation{3, perm}));
    // Verify by evaluating where each slot's vertex went.
    for (int i = 0; i < 3; ++i) {
        // left: new input slot perm[i] holds f's input i
        CHECK(left.inputs[perm[i]] != -1);
    }
    // right: output slot i now holds f's output perm[i]
    for (int i = 0; i < 3; ++i) {
        bool adjacent_expected = (perm[i] == 0 || perm[i] == 1);
        int other = adjacent_expected ? (perm[i] == 0 ? 1 : 0) : -1;
        if (other >= 0)
            CHECK(right.graph.adjacent(right.outputs[i], right.inputs[other]));
    }
}
