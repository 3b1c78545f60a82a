#pragma once

#include <bit>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "graph.hpp"
#include "matrix.hpp"
#include "symplectic.hpp"

namespace spisep {

inline constexpr int kMaxForcingOrder = 20;

/// Fixed point of: blue v forces the only white vertex of N(v) + c(v); white v turns blue when N(v) + c(v) is blue.
inline VertexSet coupled_closure(const CoupledGraph& cg, VertexSet blue) {
    const int n = cg.graph.order();
    std::vector<VertexSet> nb(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) nb[static_cast<std::size_t>(v)] = cg.graph.neighbors(v) | bit(cg.coupling.partner(v));
    for (bool changed = true; changed;) {
        changed = false;
        for (int v = 0; v < n; ++v) {
            const VertexSet white = nb[static_cast<std::size_t>(v)] & ~blue;
            if ((blue >> v) & 1U) {
                if (popcount(white) == 1) {
                    blue |= white;
                    changed = true;
                }
            } else if (white == 0) {
                blue |= bit(v);
                changed = true;
            }
        }
    }
    return blue;
}

/// Z_ell rule: as above with N(v) alone; an isolated white vertex never forces itself.
inline VertexSet loop_closure(const LabeledGraph& g, VertexSet blue) {
    for (bool changed = true; changed;) {
        changed = false;
        for (int v = 0; v < g.order(); ++v) {
            const VertexSet nv = g.neighbors(v);
            const VertexSet white = nv & ~blue;
            if ((blue >> v) & 1U) {
                if (popcount(white) == 1) {
                    blue |= white;
                    changed = true;
                }
            } else if (nv != 0 && white == 0) {
                blue |= bit(v);
                changed = true;
            }
        }
    }
    return blue;
}

/// Standard rule: a blue vertex forces its only white neighbour.
inline VertexSet standard_closure(const LabeledGraph& g, VertexSet blue) {
    for (bool changed = true; changed;) {
        changed = false;
        for (int v = 0; v < g.order(); ++v) {
            if (!((blue >> v) & 1U)) continue;
            const VertexSet white = g.neighbors(v) & ~blue;
            if (popcount(white) == 1) {
                blue |= white;
                changed = true;
            }
        }
    }
    return blue;
}

struct ForcingSet {
    int number = 0;
    VertexSet set = 0; // lexicographically first minimum set in Gosper order
};

/// Smallest k such that some k-subset closes to all of V; subsets of each size visited in increasing bit order.
inline ForcingSet minimum_forcing_set(int n, const std::function<VertexSet(VertexSet)>& closure) {
    if (n > kMaxForcingOrder) throw size_guard_error("zero forcing: order exceeds guard of 20");
    const VertexSet all = all_vertices(n);
    if (closure(0) == all) return {0, 0};
    for (int k = 1; k <= n; ++k) {
        VertexSet s = all_vertices(k);
        while (s <= all) {
            if (closure(s) == all) return {k, s};
            const VertexSet c = s & (~s + 1);
            const VertexSet r = s + c;
            s = (((r ^ s) >> 2) / c) | r;
        }
    }
    return {n, all};
}

inline ForcingSet minimum_coupled_forcing_set(const CoupledGraph& cg) {
    return minimum_forcing_set(cg.graph.order(), [&cg](VertexSet b) { return coupled_closure(cg, b); });
}

inline int zc_number(const CoupledGraph& cg) { return minimum_coupled_forcing_set(cg).number; }

inline int loop_zf_number(const LabeledGraph& g) {
    return minimum_forcing_set(g.order(), [&g](VertexSet b) { return loop_closure(g, b); }).number;
}

inline int standard_zf_number(const LabeledGraph& g) {
    return minimum_forcing_set(g.order(), [&g](VertexSet b) { return standard_closure(g, b); }).number;
}

/// Z_C = 1 iff G(c) is a caterpillar with a perfect matching (necessarily the coupling).
inline bool zc_equals_one(const CoupledGraph& cg) {
    const LabeledGraph closure = coupling_closure_graph(cg);
    if (!is_caterpillar(closure)) return false;
    const auto m = tree_perfect_matching(closure);
    return m.has_value() && *m == cg.coupling;
}

struct MultiplicityBound {
    int max_multiplicity = 0;
    int zc = 0;
    bool holds = true;
    Permutation labeling; // representative labeling matching the graph of N
    double cluster_tol = 1e-6;
};

/// Checks max multiplicity of SPspec(N) <= Z_C(cg) for N whose graph is a representative labeling of cg.
inline MultiplicityBound msp_upper_bound(const DenseSymmetric& n, const CoupledGraph& cg, double cluster_tol = 1e-6,
                                         double zero_tol = 1e-10) {
    if (n.order() != cg.graph.order()) throw invalid_input("msp_upper_bound: size mismatch");
    const LabeledGraph g = graph_of_matrix(n, zero_tol);
    MultiplicityBound out;
    out.cluster_tol = cluster_tol;
    if (cg.coupling == Coupling::standard(n.order()) && cg.graph == g) {
        out.labeling.resize(static_cast<std::size_t>(n.order()));
        for (int i = 0; i < n.order(); ++i) out.labeling[static_cast<std::size_t>(i)] = i;
    } else {
        auto lab = find_representative_labeling(cg, g);
        if (!lab) throw invalid_input("msp_upper_bound: graph of N is not a representative labeling of the coupled graph");
        out.labeling = std::move(*lab);
    }
    out.max_multiplicity = symplectic_spectrum(n, cluster_tol).max_multiplicity();
    out.zc = zc_number(cg);
    out.holds = out.max_multiplicity <= out.zc;
    return out;
}

/// The caterpillar of the matching illustration: spine 0..14, pendants on 4, 11 and 12.
inline CoupledGraph matched_caterpillar_example() {
    LabeledGraph g = path_graph(15);
    LabeledGraph t(18);
    for (auto [u, v] : g.edges()) t.add_edge(u, v);
    t.add_edge(4, 15);
    t.add_edge(11, 16);
    t.add_edge(12, 17);
    return {t, Coupling({{0, 1}, {2, 3}, {5, 6}, {7, 8}, {9, 10}, {13, 14}, {4, 15}, {11, 16}, {12, 17}})};
}

} // namespace spisep
