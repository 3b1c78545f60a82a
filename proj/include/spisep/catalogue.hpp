#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "constructions.hpp"
#include "graph.hpp"
#include "matrix.hpp"
#include "sssp.hpp"
#include "symplectic.hpp"

namespace spisep {

enum class Verdict { spectrally_arbitrary, simple_only, arbitrary_with_sssp_witness, unresolved };

inline const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::spectrally_arbitrary: return "spectrally_arbitrary";
    case Verdict::simple_only: return "simple_only";
    case Verdict::arbitrary_with_sssp_witness: return "arbitrary_with_SSSP_witness";
    case Verdict::unresolved: return "unresolved";
    }
    return "?";
}

inline bool is_arbitrary(Verdict v) {
    return v == Verdict::spectrally_arbitrary || v == Verdict::arbitrary_with_sssp_witness;
}

struct NamedGraph {
    std::string name;
    LabeledGraph graph;
};

/// The eleven graphs of order four on names v1..v4 (0..3).
inline std::vector<NamedGraph> order4_graphs() {
    auto g = [](std::vector<Edge> e) { return LabeledGraph::from_labels(4, e); };
    return {
        {"4K1", g({})},
        {"2K1+K2", g({{2, 4}})},
        {"2K2", g({{1, 3}, {2, 4}})},
        {"K1+P3", g({{1, 2}, {2, 3}})},
        {"K1+K3", g({{1, 2}, {1, 3}, {2, 3}})},
        {"P4", g({{1, 2}, {2, 3}, {3, 4}})},
        {"K1,3", g({{1, 2}, {1, 3}, {1, 4}})},
        {"C4", g({{1, 3}, {1, 4}, {2, 3}, {2, 4}})},
        {"paw", g({{1, 2}, {1, 3}, {1, 4}, {3, 4}})},
        {"K4-e", g({{1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}})},
        {"K4", g({{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}})},
    };
}

/// C1 = {(v1,v2),(v3,v4)}, C2 = {(v1,v3),(v2,v4)}, C3 = {(v1,v4),(v2,v3)}.
inline std::vector<Coupling> order4_couplings() {
    return {Coupling::from_labels({{1, 2}, {3, 4}}), Coupling::from_labels({{1, 3}, {2, 4}}),
            Coupling::from_labels({{1, 4}, {2, 3}})};
}

struct WitnessTemplate {
    std::string name;
    DenseSymmetric matrix;
};

/// Order-4 matrices whose two symplectic eigenvalues coincide.
inline std::vector<WitnessTemplate> order4_templates(std::uint64_t seed = 1) {
    const double r = 1.0 / std::sqrt(2.0);
    Matrix paw(4, 4), c4(4, 4), kpp_b(2, 2), a(2, 2);
    paw << 3, -1, 1, 1, -1, 1, 0, 0, 1, 0, 1, 1, 1, 0, 1, 2;
    c4 << 2, 1, 0, 1, 1, 2, 1, 0, 0, 1, 2, -1, 1, 0, -1, 2;
    kpp_b << -r, r, r, r;
    a << 2, 1, 1, 1;
    const Matrix i2 = Matrix::Identity(2, 2);
    const Matrix a_inv = a.inverse();

    std::vector<WitnessTemplate> out{
        {"identity", DenseSymmetric(Matrix::Identity(4, 4))},
        {"paw", DenseSymmetric(paw)},
        {"c4_cycle", DenseSymmetric(c4)},
        {"kpp_householder", shear_square(kpp_b)},
        {"ones_shear", ones_shear_matrix(2)},
        {"random_smear_complete", random_smear({1.0, 1.0}, seed, SmearMode::complete)},
        {"interleave_identity", direct_sum_interleave(DenseSymmetric(i2), DenseSymmetric(a))},
        {"interleave_pair", direct_sum_interleave(DenseSymmetric(a), DenseSymmetric(a))},
        {"inverse_pair", DenseSymmetric(direct_sum(a, a_inv))},
    };
    LabeledGraph h = graph_of_matrix(DenseSymmetric(c4));
    h.add_edge(1, 3);
    out.push_back({"c4_supergraph", supergraph_realize(DenseSymmetric(c4 / std::sqrt(2.0)), h, 0.2, seed)});
    return out;
}

struct CatalogueEntry {
    std::string graph;
    int coupling_id = 0; // 1..3
    Verdict verdict = Verdict::simple_only;
    std::string reason;
    std::optional<DenseSymmetric> witness;
    std::string witness_source;
    Permutation labeling; // labels (0-based) of v1..v4 realised by the witness
    bool witness_sssp = false;
    double witness_value = 0.0;     // common symplectic eigenvalue
    double witness_residual = 0.0;  // ||(Omega N)^2 + value^2 I||_max
    int evidence_samples = 0;
    double evidence_min_ratio = 0.0;
};

/**
 * min_t ||X + t I||_F / ||X||_F with X = (Omega N)^2, over random N on graph g.
 * Zero would mean (Omega N)^2 is a multiple of I, i.e. equal symplectic eigenvalues.
 */
inline double equal_spectrum_evidence(const LabeledGraph& g, int samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> mag(0.1, 1.0), diag(0.2, 3.0), shift(0.01, 1.0);
    std::bernoulli_distribution sign(0.5);
    const int n = g.order();
    const Matrix w = omega(n / 2);
    double best = std::numeric_limits<double>::infinity();
    for (int s = 0; s < samples; ++s) {
        Matrix m = Matrix::Zero(n, n);
        for (auto [u, v] : g.edges()) m(u, v) = m(v, u) = (sign(rng) ? 1.0 : -1.0) * mag(rng);
        for (int i = 0; i < n; ++i) m(i, i) = diag(rng);
        const double lo = Eigen::SelfAdjointEigenSolver<Matrix>(m, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
        if (lo <= 0.0) m += (shift(rng) - lo) * Matrix::Identity(n, n);
        const Matrix wn = w * m;
        const Matrix x = wn * wn;
        const double t = -x.trace() / n;
        best = std::min(best, (x + t * Matrix::Identity(n, n)).norm() / x.norm());
    }
    return best;
}

/**
 * Verdict for every order-4 graph and coupling. Rules, in order: isolated
 * vertex obstruction; a connected graph with fewer than 3p - 2 = 4 edges;
 * a template with equal symplectic eigenvalues on some representative
 * labeling; otherwise randomized evidence that equal eigenvalues do not occur.
 */
inline std::vector<CatalogueEntry> catalogue_order4(std::uint64_t seed = 1, int evidence_samples = 1000,
                                                    double evidence_floor = 1e-6) {
    const auto templates = order4_templates(seed);
    const auto couplings = order4_couplings();
    std::vector<CatalogueEntry> out;
    for (const auto& ng : order4_graphs()) {
        for (int c = 0; c < 3; ++c) {
            const CoupledGraph cg(ng.graph, couplings[static_cast<std::size_t>(c)]);
            const auto labelings = representative_labelings(cg);
            CatalogueEntry e;
            e.graph = ng.name;
            e.coupling_id = c + 1;

            const LabeledGraph first = apply_permutation(cg.graph, labelings.front());
            if (isolated_vertex_obstruction(first)) {
                e.verdict = Verdict::simple_only;
                e.reason = "isolated vertex coupled with a non-isolated vertex";
                out.push_back(std::move(e));
                continue;
            }
            if (cg.graph.is_connected() && cg.graph.edge_count() < 4) {
                e.verdict = Verdict::simple_only;
                e.reason = "connected with fewer than 3p-2 edges: no sympPD matrix";
                out.push_back(std::move(e));
                continue;
            }

            for (const auto& lab : labelings) {
                const LabeledGraph target = apply_permutation(cg.graph, lab);
                for (const auto& t : templates) {
                    if (!(graph_of_matrix(t.matrix) == target)) continue;
                    const auto spec = symplectic_spectrum(t.matrix);
                    if (spec.clusters.size() != 1) continue;
                    const double value = spec.clusters.front().value;
                    const Matrix wn = omega(2) * t.matrix.matrix();
                    const double residual = max_abs(wn * wn + value * value * Matrix::Identity(4, 4));
                    if (!is_symp_pd(DenseSymmetric(t.matrix.matrix() / value))) continue;
                    const bool sssp = has_sssp_rank(t.matrix) && has_sssp_nullspace(t.matrix).sssp;
                    if (e.witness && (e.witness_sssp || !sssp)) continue;
                    e.witness = t.matrix;
                    e.witness_source = t.name;
                    e.labeling = lab;
                    e.witness_sssp = sssp;
                    e.witness_value = value;
                    e.witness_residual = residual;
                }
            }
            if (e.witness) {
                e.verdict = e.witness_sssp ? Verdict::arbitrary_with_sssp_witness : Verdict::spectrally_arbitrary;
                e.reason = "matrix with equal symplectic eigenvalues on a representative labeling";
                out.push_back(std::move(e));
                continue;
            }

            e.evidence_samples = evidence_samples;
            e.evidence_min_ratio = equal_spectrum_evidence(first, evidence_samples, seed + 17);
            e.labeling = labelings.front();
            if (e.evidence_min_ratio > evidence_floor) {
                e.verdict = Verdict::simple_only;
                e.reason = "(Omega N)^2 stays away from multiples of I on random samples (evidence)";
            } else {
                e.verdict = Verdict::unresolved;
                e.reason = "unresolved: random samples came close to equal symplectic eigenvalues";
            }
            out.push_back(std::move(e));
        }
    }
    return out;
}

} // namespace spisep
