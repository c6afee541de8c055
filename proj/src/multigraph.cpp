#include "wlg/multigraph.hpp"

#include "wlg/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <numeric>

namespace wlg {

using nlohmann::json;

MultiGraph::MultiGraph(int vertex_count, std::vector<Edge> edges) : n_(vertex_count) {
    for (const Edge& e : edges) add_edge(e.u, e.v, e.multiplicity);
}

void MultiGraph::add_edge(int u, int v, int multiplicity) {
    require(u != v, "SelfLoop", "self-loops are not allowed");
    require(u >= 0 && v >= 0 && u < n_ && v < n_, "VertexOutOfRange",
            "edge endpoint out of range");
    require(multiplicity > 0, "BadMultiplicity", "edge multiplicity must be positive");
    if (u > v) std::swap(u, v);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), Edge{u, v, 0},
                               [](const Edge& a, const Edge& b) {
                                   return std::pair(a.u, a.v) < std::pair(b.u, b.v);
                               });
    if (it != edges_.end() && it->u == u && it->v == v)
        it->multiplicity += multiplicity;
    else
        edges_.insert(it, Edge{u, v, multiplicity});
}

int MultiGraph::multiplicity(int u, int v) const {
    if (u > v) std::swap(u, v);
    for (const Edge& e : edges_) {
        if (e.u == u && e.v == v) return e.multiplicity;
        if (e.u > u || (e.u == u && e.v > v)) break;
    }
    return 0;
}

bool MultiGraph::is_simple() const {
    return std::all_of(edges_.begin(), edges_.end(),
                       [](const Edge& e) { return e.multiplicity == 1; });
}

int MultiGraph::total_multiplicity() const {
    return std::accumulate(edges_.begin(), edges_.end(), 0,
                           [](int acc, const Edge& e) { return acc + e.multiplicity; });
}

int MultiGraph::degree(int v) const {
    int d = 0;
    for (const Edge& e : edges_)
        if (e.u == v || e.v == v) d += e.multiplicity;
    return d;
}

bool MultiGraph::is_connected() const {
    if (n_ <= 1) return true;
    std::vector<std::vector<int>> adj(n_);
    for (const Edge& e : edges_) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    std::vector<char> seen(n_, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : adj[v])
            if (!seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
    }
    return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

std::vector<int> MultiGraph::isolated_vertices() const {
    std::vector<char> touched(n_, 0);
    for (const Edge& e : edges_) touched[e.u] = touched[e.v] = 1;
    std::vector<int> out;
    for (int v = 0; v < n_; ++v)
        if (!touched[v]) out.push_back(v);
    return out;
}

MultiGraph MultiGraph::simplified() const {
    MultiGraph g(n_);
    for (const Edge& e : edges_) g.add_edge(e.u, e.v, 1);
    return g;
}

MultiGraph MultiGraph::induced(const std::vector<int>& keep) const {
    std::vector<int> index(n_, -1);
    for (std::size_t i = 0; i < keep.size(); ++i) {
        require(keep[i] >= 0 && keep[i] < n_, "VertexOutOfRange", "induced: bad vertex");
        index[keep[i]] = static_cast<int>(i);
    }
    MultiGraph g(static_cast<int>(keep.size()));
    for (const Edge& e : edges_)
        if (index[e.u] >= 0 && index[e.v] >= 0)
            g.add_edge(index[e.u], index[e.v], e.multiplicity);
    return g;
}

MultiGraph MultiGraph::without_isolated_vertices() const {
    std::vector<int> keep;
    std::vector<char> touched(n_, 0);
    for (const Edge& e : edges_) touched[e.u] = touched[e.v] = 1;
    for (int v = 0; v < n_; ++v)
        if (touched[v]) keep.push_back(v);
    return induced(keep);
}

MultiGraph MultiGraph::relabeled(const std::vector<int>& perm) const {
    require(static_cast<int>(perm.size()) == n_, "BadPermutation", "relabel: size mismatch");
    MultiGraph g(n_);
    for (const Edge& e : edges_) g.add_edge(perm[e.u], perm[e.v], e.multiplicity);
    return g;
}

std::string MultiGraph::canonical_key() const {
    require(n_ <= 8, "SizeLimitExceeded", "canonical_key limited to 8 vertices");
    std::vector<int> perm(n_);
    std::iota(perm.begin(), perm.end(), 0);
    std::string best;
    bool first = true;
    do {
        std::string key;
        key.reserve(static_cast<std::size_t>(n_) * n_);
        for (int u = 0; u < n_; ++u)
            for (int v = u + 1; v < n_; ++v)
                key.push_back(static_cast<char>('0' + multiplicity(perm[u], perm[v])));
        if (first || key < best) {
            best = std::move(key);
            first = false;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::to_string(n_) + ":" + best;
}

MultiGraph disjoint_union(const MultiGraph& a, const MultiGraph& b) {
    MultiGraph g(a.vertex_count() + b.vertex_count());
    for (const Edge& e : a.edges()) g.add_edge(e.u, e.v, e.multiplicity);
    int off = a.vertex_count();
    for (const Edge& e : b.edges()) g.add_edge(e.u + off, e.v + off, e.multiplicity);
    return g;
}

namespace {

bool extend_isomorphism(const MultiGraph& a, const MultiGraph& b, std::vector<int>& map,
                        std::vector<char>& used, int next) {
    int n = a.vertex_count();
    if (next == n) return true;
    for (int w = 0; w < n; ++w) {
        if (used[w] || b.degree(w) != a.degree(next)) continue;
        bool ok = true;
        for (int u = 0; u < next && ok; ++u)
            ok = a.multiplicity(u, next) == b.multiplicity(map[u], w);
        if (!ok) continue;
        map[next] = w;
        used[w] = 1;
        if (extend_isomorphism(a, b, map, used, next + 1)) return true;
        used[w] = 0;
    }
    return false;
}

} // namespace

bool multigraphs_isomorphic(const MultiGraph& a, const MultiGraph& b) {
    if (a.vertex_count() != b.vertex_count()) return false;
    if (a.total_multiplicity() != b.total_multiplicity()) return false;
    int n = a.vertex_count();
    require(n <= 10, "SizeLimitExceeded", "isomorphism check limited to 10 vertices");
    std::vector<int> da, db;
    for (int v = 0; v < n; ++v) {
        da.push_back(a.degree(v));
        db.push_back(b.degree(v));
    }
    std::sort(da.begin(), da.end());
    std::sort(db.begin(), db.end());
    if (da != db) return false;
    std::vector<int> map(n, -1);
    std::vector<char> used(n, 0);
    return extend_isomorphism(a, b, map, used, 0);
}

std::string MultiGraph::to_json() const {
    json j;
    j["n"] = n_;
    json edges = json::array();
    for (const Edge& e : edges_) edges.push_back({e.u, e.v, e.multiplicity});
    j["edges"] = edges;
    return j.dump();
}

MultiGraph MultiGraph::from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        fail("MalformedDocument", e.what());
    }
    require(j.is_object() && j.contains("n") && j.contains("edges") &&
                j["n"].is_number_integer() && j["edges"].is_array(),
            "MalformedDocument", "expected {\"n\": int, \"edges\": [[u,v,mult]...]}");
    MultiGraph g(j["n"].get<int>());
    for (const auto& e : j["edges"]) {
        require(e.is_array() && (e.size() == 2 || e.size() == 3), "MalformedDocument",
                "edge entries must be [u,v] or [u,v,mult]");
        int mult = e.size() == 3 ? e[2].get<int>() : 1;
        g.add_edge(e[0].get<int>(), e[1].get<int>(), mult);
    }
    return g;
}

MultiGraph path_graph(int n) {
    MultiGraph g(n);
    for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
    return g;
}

MultiGraph cycle_graph(int n) {
    MultiGraph g(n);
    if (n == 2) {
        g.add_edge(0, 1, 2);
        return g;
    }
    for (int v = 0; v < n; ++v) g.add_edge(v, (v + 1) % n);
    return g;
}

MultiGraph complete_graph(int n) {
    MultiGraph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

MultiGraph edgeless_graph(int n) { return MultiGraph(n); }

} // namespace wlg
