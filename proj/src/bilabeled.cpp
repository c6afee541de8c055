#include "wlg/bilabeled.hpp"

#include "wlg/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <numeric>
#include <sstream>

namespace wlg {

using nlohmann::json;

namespace {

void check_distinct(const std::vector<int>& labels, int n, const char* what) {
    std::vector<char> seen(n, 0);
    for (int v : labels) {
        require(v >= 0 && v < n, "VertexOutOfRange", std::string(what) + " label out of range");
        require(!seen[v], "LabelCollision",
                std::string("vertex carries two ") + what + " labels");
        seen[v] = 1;
    }
}

std::vector<int> identity_labels(int k) {
    std::vector<int> v(k);
    std::iota(v.begin(), v.end(), 0);
    return v;
}

void check_index(int j, int k, const char* what) {
    require(j >= 0 && j < k, "BadGeneratorIndex",
            std::string(what) + " index " + std::to_string(j + 1) + " not in [" +
                std::to_string(k) + "]");
}

} // namespace

void BiLabeledGraph::validate() const {
    check_distinct(inputs, graph.vertex_count(), "input");
    check_distinct(outputs, graph.vertex_count(), "output");
}

BiLabeledGraph make_generator(const Generator& g) {
    return std::visit(
        [](const auto& gen) -> BiLabeledGraph {
            using T = std::decay_t<decltype(gen)>;
            if constexpr (std::is_same_v<T, GenOne>) {
                require(gen.k >= 1, "BadGeneratorIndex", "all-one graph needs k >= 1");
                return {MultiGraph(gen.k), identity_labels(gen.k), {}};
            } else if constexpr (std::is_same_v<T, GenIntroduce>) {
                check_index(gen.j, gen.k, "introduce");
                std::vector<int> outs;
                for (int v = 0; v < gen.k; ++v)
                    if (v != gen.j) outs.push_back(v);
                return {MultiGraph(gen.k), identity_labels(gen.k), outs};
            } else if constexpr (std::is_same_v<T, GenForget>) {
                return transpose(make_generator(GenIntroduce{gen.k, gen.j}));
            } else if constexpr (std::is_same_v<T, GenNeighbor>) {
                check_index(gen.j, gen.k, "neighbor");
                return compose(make_generator(GenIntroduce{gen.k, gen.j}),
                               make_generator(GenForget{gen.k, gen.j}));
            } else if constexpr (std::is_same_v<T, GenAdjacency>) {
                check_index(gen.i, gen.k, "adjacency");
                check_index(gen.j, gen.k, "adjacency");
                require(gen.i != gen.j, "BadGeneratorIndex", "adjacency needs i != j");
                MultiGraph m(gen.k);
                m.add_edge(gen.i, gen.j);
                return {std::move(m), identity_labels(gen.k), identity_labels(gen.k)};
            } else if constexpr (std::is_same_v<T, GenPermutation>) {
                require(static_cast<int>(gen.perm.size()) == gen.k, "BadGeneratorIndex",
                        "permutation arity mismatch");
                std::vector<char> seen(gen.k, 0);
                for (int p : gen.perm) {
                    check_index(p, gen.k, "permutation");
                    require(!seen[p], "BadGeneratorIndex", "not a permutation");
                    seen[p] = 1;
                }
                return {MultiGraph(gen.k), identity_labels(gen.k), gen.perm};
            } else if constexpr (std::is_same_v<T, GenAdjNei>) {
                check_index(gen.j, gen.k, "adj-nei");
                BiLabeledGraph acc = make_generator(GenNeighbor{gen.k, gen.j});
                for (int i : gen.incident) {
                    check_index(i, gen.k, "adj-nei");
                    require(i != gen.j, "BadGeneratorIndex", "adj-nei needs i != j");
                    acc = compose(acc, make_generator(GenAdjacency{gen.k, i, gen.j}));
                }
                return acc;
            } else {
                static_assert(std::is_same_v<T, GenNonObliviousSimple>);
                const int kk = gen.k + 1;
                check_index(gen.j1, kk, "non-oblivious");
                check_index(gen.j2, kk, "non-oblivious");
                BiLabeledGraph acc = make_generator(GenForget{kk, gen.j1});
                for (int i : gen.incident) {
                    check_index(i, kk, "non-oblivious");
                    require(i != gen.j1, "BadGeneratorIndex", "non-oblivious needs i != j1");
                    acc = compose(acc, make_generator(GenAdjacency{kk, i, gen.j1}));
                }
                return compose(acc, make_generator(GenIntroduce{kk, gen.j2}));
            }
        },
        g);
}

int generator_input_arity(const Generator& g) {
    return std::visit(
        [](const auto& gen) -> int {
            using T = std::decay_t<decltype(gen)>;
            if constexpr (std::is_same_v<T, GenForget>)
                return gen.k - 1;
            else
                return gen.k;
        },
        g);
}

int generator_output_arity(const Generator& g) {
    return std::visit(
        [](const auto& gen) -> int {
            using T = std::decay_t<decltype(gen)>;
            if constexpr (std::is_same_v<T, GenOne>)
                return 0;
            else if constexpr (std::is_same_v<T, GenIntroduce>)
                return gen.k - 1;
            else
                return gen.k;
        },
        g);
}

std::string generator_str(const Generator& g) {
    std::ostringstream os;
    std::visit(
        [&](const auto& gen) {
            using T = std::decay_t<decltype(gen)>;
            if constexpr (std::is_same_v<T, GenOne>)
                os << "(one " << gen.k << ")";
            else if constexpr (std::is_same_v<T, GenNeighbor>)
                os << "(N " << gen.k << " " << gen.j + 1 << ")";
            else if constexpr (std::is_same_v<T, GenAdjacency>)
                os << "(A " << gen.k << " " << gen.i + 1 << " " << gen.j + 1 << ")";
            else if constexpr (std::is_same_v<T, GenIntroduce>)
                os << "(I " << gen.k << " " << gen.j + 1 << ")";
            else if constexpr (std::is_same_v<T, GenForget>)
                os << "(F " << gen.k << " " << gen.j + 1 << ")";
            else if constexpr (std::is_same_v<T, GenPermutation>) {
                os << "(P " << gen.k;
                for (int p : gen.perm) os << " " << p + 1;
                os << ")";
            } else if constexpr (std::is_same_v<T, GenAdjNei>) {
                os << "(S " << gen.k << " " << gen.j + 1 << " (";
                for (std::size_t i = 0; i < gen.incident.size(); ++i)
                    os << (i ? " " : "") << gen.incident[i] + 1;
                os << "))";
            } else {
                os << "(NS " << gen.k << " " << gen.j1 + 1 << " (";
                for (std::size_t i = 0; i < gen.incident.size(); ++i)
                    os << (i ? " " : "") << gen.incident[i] + 1;
                os << ") " << gen.j2 + 1 << ")";
            }
        },
        g);
    return os.str();
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

BiLabeledGraph glue(const BiLabeledGraph& a, const BiLabeledGraph& b,
                    const std::vector<int>& a_side, const std::vector<int>& b_side,
                    const std::vector<int>& result_inputs_src, bool inputs_from_a,
                    const std::vector<int>& result_outputs_src, bool outputs_from_a) {
    const int na = a.graph.vertex_count();
    const int nb = b.graph.vertex_count();
    UnionFind uf(na + nb);
    for (std::size_t i = 0; i < a_side.size(); ++i) uf.unite(a_side[i], b_side[i] + na);

    std::vector<int> id(na + nb, -1);
    int next = 0;
    for (int v = 0; v < na + nb; ++v) {
        int r = uf.find(v);
        if (id[r] < 0) id[r] = next++;
        id[v] = id[r];
    }

    MultiGraph merged(next);
    for (const Edge& e : a.graph.edges()) merged.add_edge(id[e.u], id[e.v], e.multiplicity);
    for (const Edge& e : b.graph.edges())
        merged.add_edge(id[e.u + na], id[e.v + na], e.multiplicity);

    const auto map_labels = [&](const std::vector<int>& src, bool from_a) {
        std::vector<int> out;
        out.reserve(src.size());
        for (int v : src) out.push_back(id[from_a ? v : v + na]);
        return out;
    };
    BiLabeledGraph result{std::move(merged), map_labels(result_inputs_src, inputs_from_a),
                          map_labels(result_outputs_src, outputs_from_a)};
    result.validate();
    return result;
}

} // namespace

BiLabeledGraph compose(const BiLabeledGraph& a, const BiLabeledGraph& b) {
    require(a.output_arity() == b.input_arity(), "ArityMismatch",
            "compose needs output arity " + std::to_string(a.output_arity()) +
                " to match input arity " + std::to_string(b.input_arity()));
    return glue(a, b, a.outputs, b.inputs, a.inputs, true, b.outputs, false);
}

BiLabeledGraph schur(const BiLabeledGraph& a, const BiLabeledGraph& b) {
    require(a.output_arity() == 0 && b.output_arity() == 0, "ArityMismatch",
            "Schur product is only defined without output labels");
    require(a.input_arity() == b.input_arity(), "ArityMismatch",
            "Schur product needs equal input arities");
    return glue(a, b, a.inputs, b.inputs, a.inputs, true, {}, false);
}

BiLabeledGraph transpose(const BiLabeledGraph& g) { return {g.graph, g.outputs, g.inputs}; }

namespace {

bool extend_bilabeled(const BiLabeledGraph& a, const BiLabeledGraph& b, std::vector<int>& map,
                      std::vector<char>& used, int next) {
    const int n = a.graph.vertex_count();
    while (next < n && map[next] >= 0) ++next;
    if (next == n) return true;
    for (int w = 0; w < n; ++w) {
        if (used[w] || b.graph.degree(w) != a.graph.degree(next)) continue;
        bool ok = true;
        for (int u = 0; u < n && ok; ++u)
            if (map[u] >= 0)
                ok = a.graph.multiplicity(u, next) == b.graph.multiplicity(map[u], w);
        if (!ok) continue;
        map[next] = w;
        used[w] = 1;
        if (extend_bilabeled(a, b, map, used, next + 1)) return true;
        map[next] = -1;
        used[w] = 0;
    }
    return false;
}

} // namespace

bool are_isomorphic(const BiLabeledGraph& a, const BiLabeledGraph& b) {
    if (a.graph.vertex_count() != b.graph.vertex_count()) return false;
    if (a.input_arity() != b.input_arity() || a.output_arity() != b.output_arity())
        return false;
    if (a.graph.total_multiplicity() != b.graph.total_multiplicity()) return false;
    const int n = a.graph.vertex_count();
    require(n <= 10, "SizeLimitExceeded", "isomorphism check limited to 10 vertices");

    std::vector<int> map(n, -1);
    std::vector<char> used(n, 0);
    const auto force = [&](int va, int vb) {
        if (map[va] >= 0) return map[va] == vb;
        if (used[vb]) return false;
        map[va] = vb;
        used[vb] = 1;
        return true;
    };
    for (int i = 0; i < a.input_arity(); ++i)
        if (!force(a.inputs[i], b.inputs[i])) return false;
    for (int i = 0; i < a.output_arity(); ++i)
        if (!force(a.outputs[i], b.outputs[i])) return false;
    // Forced part must already preserve multiplicities.
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (map[u] >= 0 && map[v] >= 0 &&
                a.graph.multiplicity(u, v) != b.graph.multiplicity(map[u], map[v]))
                return false;
    return extend_bilabeled(a, b, map, used, 0);
}

std::string BiLabeledGraph::to_json() const {
    json j = json::parse(graph.to_json());
    json in = json::array(), out = json::array();
    for (int v : inputs) in.push_back(v);
    for (int v : outputs) out.push_back(v);
    j["in"] = in;
    j["out"] = out;
    return j.dump();
}

BiLabeledGraph BiLabeledGraph::from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        fail("MalformedDocument", e.what());
    }
    BiLabeledGraph g;
    g.graph = MultiGraph::from_json(text);
    if (j.contains("in"))
        for (const auto& v : j["in"]) g.inputs.push_back(v.get<int>());
    if (j.contains("out"))
        for (const auto& v : j["out"]) g.outputs.push_back(v.get<int>());
    g.validate();
    return g;
}

// ---- terms ----------------------------------------------------------------

TermPtr Term::one(int k) {
    require(k >= 1, "BadGeneratorIndex", "term arity must be positive");
    return TermPtr(new Term(One{k}, k));
}

TermPtr Term::compose(Generator gen, TermPtr rest) {
    require(rest != nullptr, "MalformedTerm", "compose needs a term");
    const bool square = std::holds_alternative<GenNeighbor>(gen) ||
                        std::holds_alternative<GenAdjacency>(gen) ||
                        std::holds_alternative<GenAdjNei>(gen) ||
                        std::holds_alternative<GenPermutation>(gen);
    require(square, "BadTermGenerator",
            "terms may only compose neighbor, adjacency, adj-nei and permutation graphs");
    require(generator_input_arity(gen) == rest->arity(), "ArityMismatch",
            "generator arity does not match term arity");
    int k = rest->arity();
    return TermPtr(new Term(Compose{std::move(gen), std::move(rest)}, k));
}

TermPtr Term::schur(TermPtr left, TermPtr right) {
    require(left && right, "MalformedTerm", "Schur needs two terms");
    require(left->arity() == right->arity(), "ArityMismatch",
            "Schur product needs equal arities");
    int k = left->arity();
    return TermPtr(new Term(Schur{std::move(left), std::move(right)}, k));
}

BiLabeledGraph eval_term(const TermPtr& t) {
    require(t != nullptr, "MalformedTerm", "null term");
    return std::visit(
        [](const auto& node) -> BiLabeledGraph {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Term::One>)
                return make_generator(GenOne{node.k});
            else if constexpr (std::is_same_v<T, Term::Compose>)
                return compose(make_generator(node.gen), eval_term(node.rest));
            else
                return schur(eval_term(node.left), eval_term(node.right));
        },
        t->node());
}

int height(const TermPtr& t) {
    require(t != nullptr, "MalformedTerm", "null term");
    return std::visit(
        [](const auto& node) -> int {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Term::One>)
                return 0;
            else if constexpr (std::is_same_v<T, Term::Compose>) {
                int h = height(node.rest);
                if (std::holds_alternative<GenNeighbor>(node.gen) ||
                    std::holds_alternative<GenAdjNei>(node.gen))
                    return h + 1;
                return h;
            } else
                return std::max(height(node.left), height(node.right));
        },
        t->node());
}

std::string term_to_string(const TermPtr& t) {
    return std::visit(
        [](const auto& node) -> std::string {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Term::One>)
                return "(one " + std::to_string(node.k) + ")";
            else if constexpr (std::is_same_v<T, Term::Compose>)
                return "(comp " + generator_str(node.gen) + " " + term_to_string(node.rest) +
                       ")";
            else
                return "(schur " + term_to_string(node.left) + " " +
                       term_to_string(node.right) + ")";
        },
        t->node());
}

namespace {

struct SexprParser {
    const std::string& text;
    std::size_t pos = 0;

    explicit SexprParser(const std::string& t) : text(t) {}

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    void expect(char c) {
        skip_ws();
        require(pos < text.size() && text[pos] == c, "MalformedTerm",
                std::string("expected '") + c + "' at offset " + std::to_string(pos));
        ++pos;
    }
    bool peek(char c) {
        skip_ws();
        return pos < text.size() && text[pos] == c;
    }
    std::string atom() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
               text[pos] != '(' && text[pos] != ')')
            ++pos;
        require(pos > start, "MalformedTerm", "expected atom at offset " + std::to_string(start));
        return text.substr(start, pos - start);
    }
    int number() {
        std::string a = atom();
        try {
            return std::stoi(a);
        } catch (const std::exception&) {
            fail("MalformedTerm", "expected integer, got '" + a + "'");
        }
    }

    Generator generator() {
        expect('(');
        std::string head = atom();
        Generator g;
        if (head == "N") {
            int k = number(), j = number();
            g = GenNeighbor{k, j - 1};
        } else if (head == "A") {
            int k = number(), i = number(), j = number();
            g = GenAdjacency{k, i - 1, j - 1};
        } else if (head == "P") {
            int k = number();
            std::vector<int> perm;
            for (int i = 0; i < k; ++i) perm.push_back(number() - 1);
            g = GenPermutation{k, std::move(perm)};
        } else if (head == "S") {
            int k = number(), j = number();
            expect('(');
            std::vector<int> incident;
            while (!peek(')')) incident.push_back(number() - 1);
            expect(')');
            g = GenAdjNei{k, j - 1, std::move(incident)};
        } else {
            fail("MalformedTerm", "unknown generator '" + head + "'");
        }
        expect(')');
        return g;
    }

    TermPtr term() {
        expect('(');
        std::string head = atom();
        TermPtr t;
        if (head == "one") {
            t = Term::one(number());
        } else if (head == "comp") {
            Generator g = generator();
            TermPtr rest = term();
            t = Term::compose(std::move(g), std::move(rest));
        } else if (head == "schur") {
            TermPtr l = term();
            TermPtr r = term();
            t = Term::schur(std::move(l), std::move(r));
        } else {
            fail("MalformedTerm", "unknown term head '" + head + "'");
        }
        expect(')');
        return t;
    }
};

} // namespace

TermPtr parse_term(const std::string& text) {
    SexprParser p(text);
    TermPtr t = p.term();
    p.skip_ws();
    require(p.pos == text.size(), "MalformedTerm", "trailing input after term");
    return t;
}

} // namespace wlg
