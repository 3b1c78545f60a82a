#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "matrix.hpp"
#include "symplectic.hpp"

namespace spisep {

/// Vertex set as a bitmask; graphs in scope have at most 64 vertices.
using VertexSet = std::uint64_t;
using Edge = std::pair<int, int>;

inline constexpr int kMaxVertices = 64;

inline VertexSet bit(int v) { return VertexSet{1} << v; }
inline int popcount(VertexSet s) { return std::popcount(s); }
inline VertexSet all_vertices(int n) { return n >= 64 ? ~VertexSet{0} : (bit(n) - 1); }

/**
 * Simple labeled graph on vertices 0..n-1 (label i+1 in the printed
 * notation). Adjacency is held as one bitmask per vertex.
 */
class LabeledGraph {
public:
    LabeledGraph() = default;

    explicit LabeledGraph(int n) : adj_(static_cast<std::size_t>(n), 0) {
        if (n < 1 || n > kMaxVertices)
            throw invalid_input("graph order must be in [1, 64], got " + std::to_string(n));
    }

    LabeledGraph(int n, const std::vector<Edge>& edges) : LabeledGraph(n) {
        for (auto [u, v] : edges) add_edge(u, v);
    }

    /// Edges given with 1-based labels, as in printed examples.
    static LabeledGraph from_labels(int n, const std::vector<Edge>& edges_1based) {
        LabeledGraph g(n);
        for (auto [u, v] : edges_1based) g.add_edge(u - 1, v - 1);
        return g;
    }

    int order() const noexcept { return static_cast<int>(adj_.size()); }

    void add_edge(int u, int v) {
        check_vertex(u);
        check_vertex(v);
        if (u == v) throw invalid_input("loops are not allowed");
        adj_[static_cast<std::size_t>(u)] |= bit(v);
        adj_[static_cast<std::size_t>(v)] |= bit(u);
    }

    void remove_edge(int u, int v) {
        check_vertex(u);
        check_vertex(v);
        adj_[static_cast<std::size_t>(u)] &= ~bit(v);
        adj_[static_cast<std::size_t>(v)] &= ~bit(u);
    }

    bool has_edge(int u, int v) const {
        return (adj_[static_cast<std::size_t>(u)] >> v) & 1U;
    }

    VertexSet neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }
    int degree(int v) const { return popcount(neighbors(v)); }

    int min_degree() const {
        int d = order();
        for (int v = 0; v < order(); ++v) d = std::min(d, degree(v));
        return d;
    }

    int edge_count() const {
        int twice = 0;
        for (auto a : adj_) twice += popcount(a);
        return twice / 2;
    }

    /// Edges (u, v) with u < v in lexicographic order.
    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        for (int u = 0; u < order(); ++u)
            for (int v = u + 1; v < order(); ++v)
                if (has_edge(u, v)) out.emplace_back(u, v);
        return out;
    }

    /// Vertices reachable from v.
    VertexSet component_of(int v) const {
        VertexSet seen = bit(v), frontier = bit(v);
        while (frontier) {
            VertexSet next = 0;
            for (VertexSet f = frontier; f; f &= f - 1) next |= neighbors(std::countr_zero(f));
            frontier = next & ~seen;
            seen |= next;
        }
        return seen;
    }

    bool is_connected() const { return component_of(0) == all_vertices(order()); }
    bool is_tree() const { return is_connected() && edge_count() == order() - 1; }

    friend bool operator==(const LabeledGraph& a, const LabeledGraph& b) { return a.adj_ == b.adj_; }

private:
    void check_vertex(int v) const {
        if (v < 0 || v >= order()) throw invalid_input("vertex " + std::to_string(v) + " out of range");
    }

    std::vector<VertexSet> adj_;
};

/// Partition of the 2p vertex names into p unordered pairs.
class Coupling {
public:
    Coupling() = default;

    explicit Coupling(std::vector<Edge> pairs) {
        const auto n = 2 * pairs.size();
        if (n == 0 || n > static_cast<std::size_t>(kMaxVertices)) throw invalid_input("coupling: bad number of pairs");
        partner_.assign(n, -1);
        for (auto& [a, b] : pairs) {
            if (a > b) std::swap(a, b);
            if (a < 0 || static_cast<std::size_t>(b) >= n || a == b)
                throw invalid_input("coupling: pair out of range");
            if (partner_[static_cast<std::size_t>(a)] >= 0 || partner_[static_cast<std::size_t>(b)] >= 0)
                throw invalid_input("coupling: a vertex appears more than once");
            partner_[static_cast<std::size_t>(a)] = b;
            partner_[static_cast<std::size_t>(b)] = a;
        }
        std::sort(pairs.begin(), pairs.end());
        pairs_ = std::move(pairs);
    }

    static Coupling from_labels(const std::vector<Edge>& pairs_1based) {
        std::vector<Edge> zero;
        for (auto [a, b] : pairs_1based) zero.emplace_back(a - 1, b - 1);
        return Coupling(std::move(zero));
    }

    /// The coupling {i, i+p} carried by every labeled graph on 2p vertices.
    static Coupling standard(int n) {
        if (n < 2 || n % 2 != 0) throw invalid_input("standard coupling needs an even order");
        std::vector<Edge> pairs;
        for (int i = 0; i < n / 2; ++i) pairs.emplace_back(i, i + n / 2);
        return Coupling(std::move(pairs));
    }

    /// {(0,1), (2,3), ...}: consecutive vertices of a path or cycle.
    static Coupling consecutive(int n) {
        if (n < 2 || n % 2 != 0) throw invalid_input("consecutive coupling needs an even order");
        std::vector<Edge> pairs;
        for (int i = 0; i < n; i += 2) pairs.emplace_back(i, i + 1);
        return Coupling(std::move(pairs));
    }

    int order() const noexcept { return static_cast<int>(partner_.size()); }
    int half() const noexcept { return static_cast<int>(pairs_.size()); }
    int partner(int v) const { return partner_.at(static_cast<std::size_t>(v)); }
    const std::vector<Edge>& pairs() const noexcept { return pairs_; }

    friend bool operator==(const Coupling& a, const Coupling& b) { return a.pairs_ == b.pairs_; }

private:
    std::vector<Edge> pairs_;
    std::vector<int> partner_;
};

/// A graph whose vertex names carry a coupling.
struct CoupledGraph {
    LabeledGraph graph;
    Coupling coupling;

    CoupledGraph(LabeledGraph g, Coupling c) : graph(std::move(g)), coupling(std::move(c)) {
        if (graph.order() != coupling.order()) throw invalid_input("coupling does not cover the graph");
    }

    /// A labeled graph viewed as a coupled graph with the coupling {i, i+p}.
    static CoupledGraph from_labeled(const LabeledGraph& g) { return {g, Coupling::standard(g.order())}; }

    friend bool operator==(const CoupledGraph& a, const CoupledGraph& b) {
        return a.graph == b.graph && a.coupling == b.coupling;
    }
};

/// Edge {i, j} iff |n_ij| > zero_tol * max|n_kl|, i != j.
inline LabeledGraph graph_of_matrix(const Matrix& n, double zero_tol = 1e-10) {
    if (n.rows() != n.cols()) throw invalid_input("graph_of_matrix: matrix must be square");
    const double cut = zero_tol * max_abs(n);
    LabeledGraph g(static_cast<int>(n.rows()));
    for (int i = 0; i < n.rows(); ++i)
        for (int j = i + 1; j < n.cols(); ++j)
            if (std::abs(n(i, j)) > cut || std::abs(n(j, i)) > cut) g.add_edge(i, j);
    return g;
}

inline LabeledGraph graph_of_matrix(const DenseSymmetric& n, double zero_tol = 1e-10) {
    return graph_of_matrix(n.matrix(), zero_tol);
}

inline LabeledGraph complement(const LabeledGraph& g) {
    LabeledGraph out(g.order());
    for (int u = 0; u < g.order(); ++u)
        for (int v = u + 1; v < g.order(); ++v)
            if (!g.has_edge(u, v)) out.add_edge(u, v);
    return out;
}

/// Vertex i is renamed sigma(i).
inline LabeledGraph apply_permutation(const LabeledGraph& g, const Permutation& sigma) {
    if (static_cast<int>(sigma.size()) != g.order() || !is_permutation(sigma))
        throw invalid_input("apply_permutation: bad permutation");
    LabeledGraph out(g.order());
    for (auto [u, v] : g.edges()) out.add_edge(sigma[static_cast<std::size_t>(u)], sigma[static_cast<std::size_t>(v)]);
    return out;
}

/// G(c): G plus an edge between every vertex and its partner.
inline LabeledGraph coupling_closure_graph(const CoupledGraph& cg) {
    LabeledGraph out = cg.graph;
    for (auto [a, b] : cg.coupling.pairs()) out.add_edge(a, b);
    return out;
}

/// Disjoint union; the vertices of b follow those of a.
inline LabeledGraph disjoint_union(const LabeledGraph& a, const LabeledGraph& b) {
    LabeledGraph out(a.order() + b.order());
    for (auto [u, v] : a.edges()) out.add_edge(u, v);
    for (auto [u, v] : b.edges()) out.add_edge(u + a.order(), v + a.order());
    return out;
}

/// All perfect pairings of n names, (n-1)!! of them, in lexicographic order.
inline std::vector<Coupling> enumerate_couplings(int n, int max_order = 12) {
    if (n < 2 || n % 2 != 0) throw invalid_input("enumerate_couplings: order must be even and positive");
    if (n > max_order) throw size_guard_error("enumerate_couplings: order exceeds guard");
    std::vector<Coupling> out;
    std::vector<Edge> current;
    auto rec = [&](auto&& self, VertexSet free) -> void {
        if (free == 0) {
            out.emplace_back(current);
            return;
        }
        const int a = std::countr_zero(free);
        for (VertexSet rest = free & ~bit(a); rest; rest &= rest - 1) {
            const int b = std::countr_zero(rest);
            current.emplace_back(a, b);
            self(self, free & ~bit(a) & ~bit(b));
            current.pop_back();
        }
    };
    rec(rec, all_vertices(n));
    return out;
}

/**
 * The 2^p p! labelings described by a coupled graph: each pair (c_k, d_k)
 * receives labels {s(k), s(k)+p} in either order, s a permutation of 0..p-1.
 * Entry [v] of a labeling is the label of name v; output is lexicographic.
 */
inline std::vector<Permutation> representative_labelings(const Coupling& c, int max_p = 5) {
    const int p = c.half();
    if (p > max_p) throw size_guard_error("representative_labelings: p exceeds guard");
    std::vector<Permutation> out;
    std::vector<int> s(static_cast<std::size_t>(p));
    std::iota(s.begin(), s.end(), 0);
    do {
        for (unsigned mask = 0; mask < (1U << p); ++mask) {
            Permutation lab(static_cast<std::size_t>(2 * p));
            for (int k = 0; k < p; ++k) {
                auto [a, b] = c.pairs()[static_cast<std::size_t>(k)];
                const int lo = s[static_cast<std::size_t>(k)];
                const bool flip = (mask >> k) & 1U;
                lab[static_cast<std::size_t>(a)] = flip ? lo + p : lo;
                lab[static_cast<std::size_t>(b)] = flip ? lo : lo + p;
            }
            out.push_back(std::move(lab));
        }
    } while (std::next_permutation(s.begin(), s.end()));
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<Permutation> representative_labelings(const CoupledGraph& cg, int max_p = 5) {
    return representative_labelings(cg.coupling, max_p);
}

/// Whether g (a labeled graph) is the image of cg under one of its representative labelings.
inline std::optional<Permutation> find_representative_labeling(const CoupledGraph& cg, const LabeledGraph& g,
                                                                int max_p = 5) {
    if (g.order() != cg.graph.order()) return std::nullopt;
    for (auto& lab : representative_labelings(cg, max_p))
        if (apply_permutation(cg.graph, lab) == g) return lab;
    return std::nullopt;
}

// Families.

inline LabeledGraph empty_graph(int n) { return LabeledGraph(n); }

inline LabeledGraph complete_graph(int n) {
    LabeledGraph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

inline LabeledGraph path_graph(int n) {
    LabeledGraph g(n);
    for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
    return g;
}

inline LabeledGraph cycle_graph(int n) {
    if (n < 3) throw invalid_input("cycle_graph: order must be at least 3");
    LabeledGraph g = path_graph(n);
    g.add_edge(n - 1, 0);
    return g;
}

/// K_{1,n-1} with centre 0.
inline LabeledGraph star_graph(int n) {
    LabeledGraph g(n);
    for (int v = 1; v < n; ++v) g.add_edge(0, v);
    return g;
}

/// K_{p,p}^M: parts {0..p-1}, {p..2p-1}, coupling i <-> i+p.
inline CoupledGraph complete_bipartite_m(int p) {
    if (p < 1) throw invalid_input("complete_bipartite_m: p must be positive");
    LabeledGraph g(2 * p);
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j) g.add_edge(i, p + j);
    return CoupledGraph::from_labeled(g);
}

/// (complement(K_p) v K_p)^M: independent set 0..p-1 joined to the clique p..2p-1.
inline CoupledGraph join_kbar_k_m(int p) {
    if (p < 1) throw invalid_input("join_kbar_k_m: p must be positive");
    LabeledGraph g(2 * p);
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j) g.add_edge(i, p + j);
    for (int i = p; i < 2 * p; ++i)
        for (int j = i + 1; j < 2 * p; ++j) g.add_edge(i, j);
    return CoupledGraph::from_labeled(g);
}

/**
 * Standard labeled triangular path TP_n^I, n = 2p >= 4 (1-based labels):
 * 1 ~ p+1, p+2; i ~ p+i-1, p+i+1 (1 < i < p); p ~ 2p-1; and among the upper
 * half p+i ~ p+i+2 (i = 1..p-2) plus p+1 ~ p+2. Exactly 3p-2 edges.
 */
inline CoupledGraph tripath(int n) {
    if (n < 4 || n % 2 != 0) throw invalid_input("tripath: order must be even and at least 4");
    const int p = n / 2;
    LabeledGraph g(n);
    auto add = [&g](int a, int b) { g.add_edge(a - 1, b - 1); };
    add(1, p + 1);
    add(1, p + 2);
    for (int i = 2; i < p; ++i) {
        add(i, p + i - 1);
        add(i, p + i + 1);
    }
    add(p, 2 * p - 1);
    for (int i = 1; i <= p - 2; ++i) add(p + i, p + i + 2);
    add(p + 1, p + 2);
    return CoupledGraph::from_labeled(g);
}

/**
 * H o K_1 with the leaves named 0..p-1 and the vertices of H named p..2p-1;
 * leaf i hangs from p+i and the coupling pairs each leaf with its neighbour.
 */
inline CoupledGraph corona(const LabeledGraph& h) {
    const int p = h.order();
    LabeledGraph g(2 * p);
    for (int i = 0; i < p; ++i) g.add_edge(i, p + i);
    for (auto [u, v] : h.edges()) g.add_edge(p + u, p + v);
    return CoupledGraph::from_labeled(g);
}

/// Tree whose non-leaf vertices induce a path.
inline bool is_caterpillar(const LabeledGraph& g) {
    if (!g.is_tree()) return false;
    if (g.order() <= 2) return true;
    VertexSet spine = 0;
    for (int v = 0; v < g.order(); ++v)
        if (g.degree(v) > 1) spine |= bit(v);
    for (VertexSet s = spine; s; s &= s - 1) {
        const int v = std::countr_zero(s);
        if (popcount(g.neighbors(v) & spine) > 2) return false;
    }
    return true;
}

/// The unique perfect matching of a tree, found by leaf stripping, if one exists.
inline std::optional<Coupling> tree_perfect_matching(const LabeledGraph& g) {
    if (!g.is_tree()) throw invalid_input("tree_perfect_matching: graph is not a tree");
    if (g.order() % 2 != 0) return std::nullopt;
    VertexSet alive = all_vertices(g.order());
    std::vector<Edge> pairs;
    while (alive) {
        int leaf = -1;
        for (VertexSet s = alive; s; s &= s - 1) {
            const int v = std::countr_zero(s);
            const int d = popcount(g.neighbors(v) & alive);
            if (d == 0) return std::nullopt;
            if (d == 1) {
                leaf = v;
                break;
            }
        }
        if (leaf < 0) return std::nullopt;
        const int mate = std::countr_zero(g.neighbors(leaf) & alive);
        pairs.emplace_back(leaf, mate);
        alive &= ~bit(leaf) & ~bit(mate);
    }
    return Coupling(std::move(pairs));
}

} // namespace spisep
