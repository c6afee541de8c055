#include "wlg/treedecomp.hpp"

#include "wlg/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace wlg {

using nlohmann::json;

std::string TreeDecomposition::to_json() const {
    json j;
    json bags_json = json::array();
    for (const auto& bag : bags) bags_json.push_back(bag);
    json edges_json = json::array();
    for (const auto& [a, b] : tree_edges) edges_json.push_back({a, b});
    j["bags"] = bags_json;
    j["tree_edges"] = edges_json;
    if (root) j["root"] = *root;
    return j.dump();
}

TreeDecomposition TreeDecomposition::from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        fail("MalformedDocument", e.what());
    }
    require(j.is_object() && j.contains("bags") && j["bags"].is_array(), "MalformedDocument",
            "expected {\"bags\": [[v...]...], \"tree_edges\": [[a,b]...]}");
    TreeDecomposition td;
    for (const auto& bag : j["bags"]) td.bags.push_back(bag.get<std::vector<int>>());
    if (j.contains("tree_edges"))
        for (const auto& e : j["tree_edges"]) td.tree_edges.emplace_back(e[0], e[1]);
    if (j.contains("root")) td.root = j["root"].get<int>();
    return td;
}

int validate(const MultiGraph& g, const TreeDecomposition& td) {
    const int t = static_cast<int>(td.bags.size());
    require(t >= 1, "NotATree", "a tree decomposition needs at least one bag");
    require(static_cast<int>(td.tree_edges.size()) == t - 1, "NotATree",
            "a tree on " + std::to_string(t) + " nodes has " + std::to_string(t - 1) +
                " edges");
    std::vector<std::vector<int>> adj(t);
    for (const auto& [a, b] : td.tree_edges) {
        require(a >= 0 && a < t && b >= 0 && b < t && a != b, "NotATree",
                "bad tree edge");
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    // t-1 edges + connectivity means acyclic.
    std::vector<char> seen(t, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : adj[v])
            if (!seen[w]) {
                seen[w] = 1;
                ++reached;
                stack.push_back(w);
            }
    }
    require(reached == t, "NotATree", "tree edges do not connect all bags");
    if (td.root) require(*td.root >= 0 && *td.root < t, "NotATree", "root out of range");

    const int n = g.vertex_count();
    for (const auto& bag : td.bags)
        for (int v : bag)
            require(v >= 0 && v < n, "VertexOutOfRange", "bag vertex out of range");

    for (const Edge& e : g.edges()) {
        bool covered = false;
        for (const auto& bag : td.bags) {
            if (std::find(bag.begin(), bag.end(), e.u) != bag.end() &&
                std::find(bag.begin(), bag.end(), e.v) != bag.end()) {
                covered = true;
                break;
            }
        }
        require(covered, "EdgeNotCovered",
                "edge {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                    "} lies in no bag");
    }

    for (int v = 0; v < n; ++v) {
        std::vector<int> holders;
        for (int i = 0; i < t; ++i)
            if (std::find(td.bags[i].begin(), td.bags[i].end(), v) != td.bags[i].end())
                holders.push_back(i);
        require(!holders.empty(), "VertexBagsDisconnected",
                "vertex " + std::to_string(v) + " appears in no bag");
        std::set<int> holder_set(holders.begin(), holders.end());
        std::vector<int> frontier{holders[0]};
        std::set<int> visited{holders[0]};
        while (!frontier.empty()) {
            int x = frontier.back();
            frontier.pop_back();
            for (int y : adj[x])
                if (holder_set.count(y) && !visited.count(y)) {
                    visited.insert(y);
                    frontier.push_back(y);
                }
        }
        require(visited.size() == holder_set.size(), "VertexBagsDisconnected",
                "bags containing vertex " + std::to_string(v) + " are disconnected");
    }

    int width = -1;
    for (const auto& bag : td.bags) {
        std::set<int> uniq(bag.begin(), bag.end());
        width = std::max(width, static_cast<int>(uniq.size()) - 1);
    }
    return width;
}

namespace {

// Number of vertices outside `eliminated + {v}` adjacent to v or reachable
// from v through eliminated vertices.
int elimination_degree(const std::vector<std::vector<char>>& adj, unsigned eliminated, int v) {
    const int n = static_cast<int>(adj.size());
    std::vector<char> seen(n, 0);
    std::vector<int> stack{v};
    seen[v] = 1;
    int degree = 0;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int y = 0; y < n; ++y) {
            if (!adj[x][y] || seen[y]) continue;
            seen[y] = 1;
            if (eliminated >> y & 1u)
                stack.push_back(y);
            else
                ++degree;
        }
    }
    return degree;
}

TreeDecomposition decomposition_from_order(const MultiGraph& g, const std::vector<int>& order) {
    const int n = g.vertex_count();
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    for (const Edge& e : g.edges()) adj[e.u][e.v] = adj[e.v][e.u] = 1;
    std::vector<int> position(n);
    for (int i = 0; i < n; ++i) position[order[i]] = i;

    TreeDecomposition td;
    td.bags.resize(n);
    std::vector<int> parent(n, -1);
    for (int i = 0; i < n; ++i) {
        int v = order[i];
        std::vector<int> later;
        for (int u = 0; u < n; ++u)
            if (adj[v][u] && position[u] > i) later.push_back(u);
        std::vector<int> bag = later;
        bag.push_back(v);
        std::sort(bag.begin(), bag.end());
        td.bags[i] = std::move(bag);
        // Eliminating v makes its remaining neighborhood a clique.
        for (std::size_t p = 0; p < later.size(); ++p)
            for (std::size_t q = p + 1; q < later.size(); ++q)
                adj[later[p]][later[q]] = adj[later[q]][later[p]] = 1;
        if (!later.empty()) {
            int first = *std::min_element(later.begin(), later.end(),
                                          [&](int a, int b) { return position[a] < position[b]; });
            parent[i] = position[first];
        } else if (i + 1 < n) {
            parent[i] = i + 1;
        }
    }
    for (int i = 0; i < n; ++i)
        if (parent[i] >= 0) td.tree_edges.emplace_back(i, parent[i]);
    td.root = n - 1;
    return td;
}

} // namespace

TreewidthResult exact_treewidth(const MultiGraph& g) {
    const int n = g.vertex_count();
    require(n >= 1, "EmptyGraph", "treewidth of the empty graph is undefined here");
    require(n <= 10, "SizeLimitExceeded", "exact treewidth limited to 10 vertices");

    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    for (const Edge& e : g.edges()) adj[e.u][e.v] = adj[e.v][e.u] = 1;

    const unsigned full = (1u << n) - 1u;
    std::vector<int> best(full + 1, n + 1);
    std::vector<int> choice(full + 1, -1);
    best[0] = -1;
    for (unsigned mask = 1; mask <= full; ++mask) {
        for (int v = 0; v < n; ++v) {
            if (!(mask >> v & 1u)) continue;
            unsigned rest = mask & ~(1u << v);
            int cost = std::max(best[rest], elimination_degree(adj, rest, v));
            if (cost < best[mask]) {
                best[mask] = cost;
                choice[mask] = v;
            }
        }
    }

    std::vector<int> order(n);
    unsigned mask = full;
    for (int i = n - 1; i >= 0; --i) {
        order[i] = choice[mask];
        mask &= ~(1u << order[i]);
    }

    TreewidthResult result;
    result.width = best[full];
    result.witness = decomposition_from_order(g, order);
    return result;
}

int NiceTreeDecomposition::width() const {
    int w = -1;
    for (const NiceNode& node : nodes) w = std::max(w, static_cast<int>(node.bag.size()) - 1);
    return w;
}

namespace {

struct NiceBuilder {
    std::vector<NiceNode>& nodes;

    int add(NiceNode::Kind kind, int vertex, std::vector<int> bag, std::vector<int> children) {
        std::sort(bag.begin(), bag.end());
        nodes.push_back(NiceNode{kind, vertex, std::move(bag), std::move(children)});
        return static_cast<int>(nodes.size()) - 1;
    }

    // Chain of forgets and introduces transforming `from` into `to` on top of
    // node `below`. Returns the new top node.
    int morph(int below, std::vector<int> from, const std::vector<int>& to) {
        int top = below;
        for (int v : from) {
            if (std::find(to.begin(), to.end(), v) == to.end()) {
                std::vector<int> bag = nodes[top].bag;
                bag.erase(std::remove(bag.begin(), bag.end(), v), bag.end());
                top = add(NiceNode::Kind::Forget, v, std::move(bag), {top});
            }
        }
        for (int v : to) {
            const auto& cur = nodes[top].bag;
            if (std::find(cur.begin(), cur.end(), v) == cur.end()) {
                std::vector<int> bag = cur;
                bag.push_back(v);
                top = add(NiceNode::Kind::Introduce, v, std::move(bag), {top});
            }
        }
        return top;
    }
};

} // namespace

NiceTreeDecomposition make_nice(const MultiGraph& g, const TreeDecomposition& td) {
    validate(g, td);
    const int t = static_cast<int>(td.bags.size());
    std::vector<std::vector<int>> adj(t);
    for (const auto& [a, b] : td.tree_edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    const int root = td.root.value_or(0);

    NiceTreeDecomposition ntd;
    NiceBuilder builder{ntd.nodes};

    // Iterative post-order over the rooted tree.
    struct Frame { int node; int parent; std::size_t child_idx; std::vector<int> done; };
    std::vector<Frame> stack{{root, -1, 0, {}}};
    std::vector<int> result_of(t, -1);
    while (!stack.empty()) {
        Frame& f = stack.back();
        std::vector<int> children;
        for (int c : adj[f.node])
            if (c != f.parent) children.push_back(c);
        if (f.child_idx < children.size()) {
            int child = children[f.child_idx++];
            stack.push_back({child, f.node, 0, {}});
            continue;
        }
        // All children processed; build this node's chain.
        std::vector<int> bag = td.bags[f.node];
        std::sort(bag.begin(), bag.end());
        bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
        std::vector<int> tops;
        for (int c : adj[f.node])
            if (c != f.parent) {
                int sub = result_of[c];
                std::vector<int> child_bag = ntd.nodes[sub].bag;
                tops.push_back(builder.morph(sub, child_bag, bag));
            }
        int top;
        if (tops.empty()) {
            top = builder.add(NiceNode::Kind::Leaf, -1, {}, {});
            top = builder.morph(top, {}, bag);
        } else {
            top = tops[0];
            for (std::size_t i = 1; i < tops.size(); ++i)
                top = builder.add(NiceNode::Kind::Join, -1, bag, {top, tops[i]});
        }
        result_of[f.node] = top;
        stack.pop_back();
    }

    int top = result_of[root];
    std::vector<int> root_bag = ntd.nodes[top].bag;
    top = builder.morph(top, root_bag, {});
    ntd.root = top;
    return ntd;
}

void validate_nice(const MultiGraph& g, const NiceTreeDecomposition& ntd) {
    require(!ntd.nodes.empty() && ntd.root >= 0 &&
                ntd.root < static_cast<int>(ntd.nodes.size()),
            "NotATree", "bad nice decomposition root");
    require(ntd.nodes[ntd.root].bag.empty(), "BadNiceDecomposition", "root bag must be empty");
    for (std::size_t i = 0; i < ntd.nodes.size(); ++i) {
        const NiceNode& node = ntd.nodes[i];
        const auto bag_of = [&](int c) { return ntd.nodes[c].bag; };
        switch (node.kind) {
        case NiceNode::Kind::Leaf:
            require(node.children.empty() && node.bag.empty(), "BadNiceDecomposition",
                    "leaves must have empty bags and no children");
            break;
        case NiceNode::Kind::Introduce: {
            require(node.children.size() == 1, "BadNiceDecomposition", "introduce arity");
            std::vector<int> expect = bag_of(node.children[0]);
            expect.push_back(node.vertex);
            std::sort(expect.begin(), expect.end());
            require(expect == node.bag, "BadNiceDecomposition", "introduce bag delta");
            break;
        }
        case NiceNode::Kind::Forget: {
            require(node.children.size() == 1, "BadNiceDecomposition", "forget arity");
            std::vector<int> expect = node.bag;
            expect.push_back(node.vertex);
            std::sort(expect.begin(), expect.end());
            require(expect == bag_of(node.children[0]), "BadNiceDecomposition",
                    "forget bag delta");
            break;
        }
        case NiceNode::Kind::Join:
            require(node.children.size() == 2, "BadNiceDecomposition", "join arity");
            require(bag_of(node.children[0]) == node.bag &&
                        bag_of(node.children[1]) == node.bag,
                    "BadNiceDecomposition", "join bags must match");
            break;
        }
    }
    // The nice structure is also a plain tree decomposition.
    TreeDecomposition td;
    for (const NiceNode& node : ntd.nodes) td.bags.push_back(node.bag);
    for (std::size_t i = 0; i < ntd.nodes.size(); ++i)
        for (int c : ntd.nodes[i].children) td.tree_edges.emplace_back(static_cast<int>(i), c);
    td.root = ntd.root;
    validate(g, td);
}

namespace {

constexpr int kFreeSlot = -1;

struct CompileState {
    TermPtr term;
    std::vector<int> slot_vertex; // slot -> graph vertex, kFreeSlot if unclaimed isolate
};

struct TermCompiler {
    const MultiGraph& g;
    const NiceTreeDecomposition& ntd;
    int k;
    bool simple;
    std::vector<int> emitted; // per edge index, multiplicity already emitted

    int slot_of(const CompileState& s, int v) const {
        for (int j = 0; j < k; ++j)
            if (s.slot_vertex[j] == v) return j;
        fail("InternalError", "vertex " + std::to_string(v) + " has no slot");
    }

    CompileState compile(int node_index) {
        const NiceNode& node = ntd.nodes[node_index];
        switch (node.kind) {
        case NiceNode::Kind::Leaf:
            return {Term::one(k), std::vector<int>(k, kFreeSlot)};
        case NiceNode::Kind::Introduce: {
            CompileState s = compile(node.children[0]);
            // Claim a padding isolate for the fresh vertex.
            for (int j = 0; j < k; ++j)
                if (s.slot_vertex[j] == kFreeSlot) {
                    s.slot_vertex[j] = node.vertex;
                    return s;
                }
            fail("InternalError", "no free slot at introduce node");
        }
        case NiceNode::Kind::Forget: {
            CompileState s = compile(node.children[0]);
            const int j = slot_of(s, node.vertex);
            std::vector<int> incident;
            const auto& edges = g.edges();
            for (std::size_t e = 0; e < edges.size(); ++e) {
                if (edges[e].u != node.vertex && edges[e].v != node.vertex) continue;
                int other = edges[e].u == node.vertex ? edges[e].v : edges[e].u;
                int pending = edges[e].multiplicity - emitted[e];
                if (pending <= 0) continue;
                bool other_in_bag = std::count(s.slot_vertex.begin(), s.slot_vertex.end(),
                                               other) > 0;
                if (!other_in_bag) continue;
                int oj = slot_of(s, other);
                if (simple) {
                    incident.push_back(oj);
                } else {
                    for (int m = 0; m < pending; ++m)
                        s.term = Term::compose(GenAdjacency{k, oj, j}, s.term);
                }
                emitted[e] += pending;
            }
            if (simple) {
                std::sort(incident.begin(), incident.end());
                s.term = Term::compose(GenAdjNei{k, j, std::move(incident)}, s.term);
            } else {
                s.term = Term::compose(GenNeighbor{k, j}, s.term);
            }
            s.slot_vertex[j] = kFreeSlot;
            return s;
        }
        case NiceNode::Kind::Join: {
            CompileState left = compile(node.children[0]);
            CompileState right = compile(node.children[1]);
            // Re-order the right term so shared bag vertices sit in the same
            // slots; spare slots are matched up in order.
            std::vector<int> perm(k, -1);
            std::vector<char> target_used(k, 0);
            for (int j = 0; j < k; ++j)
                if (right.slot_vertex[j] != kFreeSlot) {
                    int target = slot_of(left, right.slot_vertex[j]);
                    perm[j] = target;
                    target_used[target] = 1;
                }
            int next_free = 0;
            for (int j = 0; j < k; ++j) {
                if (perm[j] >= 0) continue;
                while (target_used[next_free]) ++next_free;
                perm[j] = next_free;
                target_used[next_free] = 1;
            }
            bool identity = true;
            for (int j = 0; j < k; ++j) identity = identity && perm[j] == j;
            if (!identity) right.term = Term::compose(GenPermutation{k, perm}, right.term);
            return {Term::schur(left.term, right.term), left.slot_vertex};
        }
        }
        fail("InternalError", "unreachable nice node kind");
    }
};

TermPtr compile_term(const MultiGraph& g, const NiceTreeDecomposition& ntd, int k,
                     bool simple) {
    validate_nice(g, ntd);
    require(k >= 1, "WidthExceedsK", "term arity must be positive");
    require(ntd.width() <= k - 1, "WidthExceedsK",
            "decomposition width " + std::to_string(ntd.width()) + " exceeds k-1 = " +
                std::to_string(k - 1));
    if (simple)
        require(g.is_simple(), "NotSimple", "the simple compiler needs a simple graph");

    TermCompiler compiler{g, ntd, k, simple, std::vector<int>(g.edges().size(), 0)};
    CompileState s = compiler.compile(ntd.root);
    for (std::size_t e = 0; e < g.edges().size(); ++e)
        require(compiler.emitted[e] == g.edges()[e].multiplicity, "InternalError",
                "edge not emitted during compilation");

    // Outermost pure forgets only relocate labels; dropping them keeps the
    // underlying graph identical up to isolated vertices.
    TermPtr t = s.term;
    for (;;) {
        const auto* comp = std::get_if<Term::Compose>(&t->node());
        if (!comp) break;
        if (std::holds_alternative<GenNeighbor>(comp->gen)) {
            t = comp->rest;
            continue;
        }
        if (const auto* adjnei = std::get_if<GenAdjNei>(&comp->gen);
            adjnei && adjnei->incident.empty()) {
            t = comp->rest;
            continue;
        }
        break;
    }
    return t;
}

} // namespace

TermPtr nice_td_to_term(const MultiGraph& g, const NiceTreeDecomposition& ntd, int k) {
    return compile_term(g, ntd, k, false);
}

TermPtr nice_td_to_simple_term(const MultiGraph& g, const NiceTreeDecomposition& ntd, int k) {
    return compile_term(g, ntd, k, true);
}

} // namespace wlg
