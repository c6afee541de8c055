#pragma once

#include <string>
#include <vector>

namespace wlg {

struct Edge {
    int u = 0;
    int v = 0;            // u < v always
    int multiplicity = 1; // > 0

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Loop-free multigraph on vertices {0, ..., vertex_count-1}. Edges are kept
// sorted with one entry per unordered pair.
class MultiGraph {
public:
    MultiGraph() = default;
    explicit MultiGraph(int vertex_count) : n_(vertex_count) {}
    // Merges duplicate pairs by summing multiplicities; rejects loops and
    // out-of-range indices.
    MultiGraph(int vertex_count, std::vector<Edge> edges);

    int vertex_count() const { return n_; }
    const std::vector<Edge>& edges() const { return edges_; }

    void add_edge(int u, int v, int multiplicity = 1);
    int multiplicity(int u, int v) const;
    bool adjacent(int u, int v) const { return multiplicity(u, v) > 0; }

    bool is_simple() const;
    int total_multiplicity() const;
    // Degree counting multiplicities.
    int degree(int v) const;
    bool is_connected() const;
    std::vector<int> isolated_vertices() const;

    // Same vertex set, all multiplicities collapsed to 1.
    MultiGraph simplified() const;
    // Removes isolated vertices, re-indexing the rest in order.
    MultiGraph without_isolated_vertices() const;
    MultiGraph induced(const std::vector<int>& keep) const;
    // Vertex map must be a bijection [n] -> [n].
    MultiGraph relabeled(const std::vector<int>& perm) const;

    // Lexicographically minimal edge encoding over all vertex permutations;
    // usable as an isomorphism-class key for small graphs (n <= 8 guard).
    std::string canonical_key() const;

    std::string to_json() const;
    static MultiGraph from_json(const std::string& text);

    friend bool operator==(const MultiGraph&, const MultiGraph&) = default;

private:
    int n_ = 0;
    std::vector<Edge> edges_;
};

MultiGraph disjoint_union(const MultiGraph& a, const MultiGraph& b);
bool multigraphs_isomorphic(const MultiGraph& a, const MultiGraph& b);

// Small named graphs used throughout the tests and the harness.
MultiGraph path_graph(int n);
MultiGraph cycle_graph(int n);
MultiGraph complete_graph(int n);
MultiGraph edgeless_graph(int n);

} // namespace wlg
