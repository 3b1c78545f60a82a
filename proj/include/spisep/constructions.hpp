#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "error.hpp"
#include "graph.hpp"
#include "matrix.hpp"
#include "symplectic.hpp"

namespace spisep {

namespace detail {

inline void require_targets(const std::vector<double>& t, int p, const std::string& who) {
    if (static_cast<int>(t.size()) != p)
        throw invalid_input(who + ": expected " + std::to_string(p) + " targets, got " + std::to_string(t.size()));
    for (double v : t)
        if (!(v > 0.0) || !std::isfinite(v)) throw invalid_input(who + ": targets must be positive");
}

inline Vector doubled_diagonal(const std::vector<double>& t) {
    const auto p = static_cast<Eigen::Index>(t.size());
    Vector d(2 * p);
    for (Eigen::Index i = 0; i < p; ++i) d(i) = d(i + p) = t[static_cast<std::size_t>(i)];
    return d;
}

} // namespace detail

// Named matrices.

inline Matrix all_ones(int p) { return Matrix::Ones(p, p); }

/// Adjacency matrix of the path on p vertices with the (1,1) entry set to 1.
inline Matrix path_b(int p) {
    if (p < 1) throw invalid_input("path_b: p must be positive");
    Matrix b = Matrix::Zero(p, p);
    for (int i = 0; i + 1 < p; ++i) b(i, i + 1) = b(i + 1, i) = 1.0;
    b(0, 0) = 1.0;
    return b;
}

/// Symmetric orthogonal I - 2 v v^T / |v|^2 with v = (1, 2, ..., p); every entry is nonzero.
inline Matrix householder_b(int p) {
    if (p < 1) throw invalid_input("householder_b: p must be positive");
    Vector v(p);
    for (int i = 0; i < p; ++i) v(i) = i + 1.0;
    Matrix b = Matrix::Identity(p, p) - 2.0 * v * v.transpose() / v.squaredNorm();
    if (p > 1 && b.cwiseAbs().minCoeff() < 1e-12) throw numerical_error("householder_b: zero entry");
    return b;
}

// sympPD factories.

/// [[N11, N11 W], [W N11, N11^{-1} + W N11 W]].
inline DenseSymmetric dopico_johnson(const Matrix& n11, const Matrix& w) {
    require_symmetric(n11, "dopico_johnson: N11", 1e-8);
    require_symmetric(w, "dopico_johnson: W", 1e-8);
    if (n11.rows() != w.rows()) throw invalid_input("dopico_johnson: size mismatch");
    if (!is_positive_definite(n11)) throw invalid_input("dopico_johnson: N11 is not positive definite");
    const Matrix inv = n11.ldlt().solve(Matrix::Identity(n11.rows(), n11.cols()));
    return DenseSymmetric(block2x2(n11, n11 * w, w * n11, inv + w * n11 * w));
}

/// [[I, B], [B, I + B^2]] = S^T S with S = shear(B).
inline DenseSymmetric shear_square(const Matrix& b) {
    require_symmetric(b, "shear_square: B", 1e-8);
    const auto p = b.rows();
    const Matrix id = Matrix::Identity(p, p);
    return DenseSymmetric(block2x2(id, b, b, id + b * b));
}

/// [[I, J], [J, pJ + I]].
inline DenseSymmetric ones_shear_matrix(int p) { return shear_square(all_ones(p)); }

/**
 * S^T (D (+) D) S with S = shear(D^{-1/2} B D^{-1/2}), written out as
 * [[D, sqrt(D) B sqrt(D)^{-1}], [sqrt(D)^{-1} B sqrt(D), D + sqrt(D)^{-1} B^2 sqrt(D)^{-1}]].
 */
inline DenseSymmetric realize_shear(const Matrix& b, const std::vector<double>& target) {
    require_symmetric(b, "realize_shear: B", 1e-8);
    detail::require_targets(target, static_cast<int>(b.rows()), "realize_shear");
    const auto p = b.rows();
    Vector d(p), r(p);
    for (Eigen::Index i = 0; i < p; ++i) {
        d(i) = target[static_cast<std::size_t>(i)];
        r(i) = std::sqrt(d(i));
    }
    const Matrix upper = r.asDiagonal() * b * r.cwiseInverse().asDiagonal();
    const Matrix lower = Matrix(d.asDiagonal()) + r.cwiseInverse().asDiagonal() * (b * b) * r.cwiseInverse().asDiagonal();
    return DenseSymmetric(block2x2(Matrix(d.asDiagonal()), upper, upper.transpose(), lower));
}

/// S^T (D (+) D) S for an entrywise nonnegative symplectic S.
inline DenseSymmetric realize_nonneg_symplectic(const Matrix& s, const std::vector<double>& target) {
    if (s.rows() != s.cols() || s.rows() % 2 != 0) throw invalid_input("realize_nonneg_symplectic: bad shape");
    if (s.minCoeff() < 0.0) throw invalid_input("realize_nonneg_symplectic: S has a negative entry");
    if (!is_symplectic(s, 1e-10 * std::max(1.0, max_abs(s) * max_abs(s))))
        throw invalid_input("realize_nonneg_symplectic: S is not symplectic");
    detail::require_targets(target, static_cast<int>(s.rows() / 2), "realize_nonneg_symplectic");
    const Vector d = detail::doubled_diagonal(target);
    return DenseSymmetric(s.transpose() * d.asDiagonal() * s);
}

enum class SmearMode { two_cliques, complete };

/**
 * Smears D (+) D by random symplectic congruences: S_A = diag(A, A^{-T})
 * always, then shear(B) in complete mode. A and B have entries uniform on
 * [-1, 1]; samples are redrawn until the graph is (K_p u K_p) or K_{2p}.
 */
inline DenseSymmetric random_smear(const std::vector<double>& target, std::uint64_t seed, SmearMode mode,
                                   double zero_tol = 1e-10) {
    const int p = static_cast<int>(target.size());
    if (p < 1) throw invalid_input("random_smear: need at least one target");
    detail::require_targets(target, p, "random_smear");
    const Vector d = detail::doubled_diagonal(target);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);

    LabeledGraph want(2 * p);
    for (int i = 0; i < 2 * p; ++i)
        for (int j = i + 1; j < 2 * p; ++j)
            if (mode == SmearMode::complete || (i < p) == (j < p)) want.add_edge(i, j);

    for (int attempt = 0; attempt < 100; ++attempt) {
        Matrix a(p, p);
        for (int i = 0; i < p; ++i)
            for (int j = 0; j < p; ++j) a(i, j) = u(rng);
        const Vector sv = Eigen::JacobiSVD<Matrix>(a).singularValues();
        if (sv(p - 1) < 1e-2 * sv(0)) continue;
        Matrix s = block_diag_symplectic(a);
        if (mode == SmearMode::complete) {
            Matrix b(p, p);
            for (int i = 0; i < p; ++i)
                for (int j = i; j < p; ++j) b(i, j) = b(j, i) = u(rng);
            s = s * shear(b);
        }
        Matrix n = s.transpose() * d.asDiagonal() * s;
        if (mode == SmearMode::two_cliques) {
            n.topRightCorner(p, p).setZero();
            n.bottomLeftCorner(p, p).setZero();
        }
        if (graph_of_matrix(n, zero_tol) == want) return DenseSymmetric(n);
    }
    throw numerical_error("random_smear: no sample with the required pattern in 100 attempts");
}

// Corona realizations.

/// Standard eigenvalues of sqrt(D) A sqrt(D) - E^2, ascending.
inline Vector corona_reduced_eigenvalues(const Matrix& a, const Vector& d, const Vector& e) {
    require_symmetric(a, "corona: A", 1e-8);
    if (d.size() != a.rows() || e.size() != a.rows()) throw invalid_input("corona: size mismatch");
    if (d.minCoeff() <= 0.0) throw invalid_input("corona: D must be positive");
    const Vector r = d.cwiseSqrt();
    Matrix k = r.asDiagonal() * a * r.asDiagonal();
    k -= Matrix(e.cwiseProduct(e).asDiagonal());
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (k + k.transpose()), Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

/// [[D, E], [E, A]]; its symplectic eigenvalues are the square roots of corona_reduced_eigenvalues.
inline DenseSymmetric corona_realize(const Matrix& a, const Vector& d, const Vector& e) {
    const Vector ev = corona_reduced_eigenvalues(a, d, e);
    if (ev.minCoeff() <= 0.0)
        throw invalid_input("corona_realize: sqrt(D) A sqrt(D) - E^2 is not positive definite (min eigenvalue " +
                            std::to_string(ev.minCoeff()) + ")");
    return DenseSymmetric(block2x2(Matrix(d.asDiagonal()), Matrix(e.asDiagonal()), Matrix(e.asDiagonal()), a));
}

inline std::vector<double> corona_spectrum(const Matrix& a, const Vector& d, const Vector& e) {
    const Vector ev = corona_reduced_eigenvalues(a, d, e);
    std::vector<double> out;
    for (Eigen::Index i = 0; i < ev.size(); ++i) out.push_back(std::sqrt(std::max(0.0, ev(i))));
    return out;
}

// Forbidden structures.

/// Strong components of the digraph with arcs (i, j) for nonzero b_ij; Tarjan, components in reverse topological order.
inline std::vector<std::vector<int>> strong_components(const std::vector<std::vector<bool>>& arcs) {
    const int n = static_cast<int>(arcs.size());
    std::vector<int> index(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0);
    std::vector<char> on(static_cast<std::size_t>(n), 0);
    std::vector<int> stack;
    std::vector<std::vector<int>> out;
    int counter = 0;
    std::function<void(int)> visit = [&](int v) {
        const auto sv = static_cast<std::size_t>(v);
        index[sv] = low[sv] = counter++;
        stack.push_back(v);
        on[sv] = 1;
        for (int w = 0; w < n; ++w) {
            if (!arcs[sv][static_cast<std::size_t>(w)]) continue;
            const auto sw = static_cast<std::size_t>(w);
            if (index[sw] < 0) {
                visit(w);
                low[sv] = std::min(low[sv], low[sw]);
            } else if (on[sw]) {
                low[sv] = std::min(low[sv], index[sw]);
            }
        }
        if (low[sv] == index[sv]) {
            std::vector<int> comp;
            int w;
            do {
                w = stack.back();
                stack.pop_back();
                on[static_cast<std::size_t>(w)] = 0;
                comp.push_back(w);
            } while (w != v);
            std::sort(comp.begin(), comp.end());
            out.push_back(std::move(comp));
        }
    };
    for (int v = 0; v < n; ++v)
        if (index[static_cast<std::size_t>(v)] < 0) visit(v);
    return out;
}

inline std::vector<std::vector<bool>> pattern_of(const Matrix& b, double zero_tol = 1e-10) {
    const double cut = zero_tol * max_abs(b);
    std::vector<std::vector<bool>> arcs(static_cast<std::size_t>(b.rows()), std::vector<bool>(static_cast<std::size_t>(b.cols())));
    for (Eigen::Index i = 0; i < b.rows(); ++i)
        for (Eigen::Index j = 0; j < b.cols(); ++j)
            arcs[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = std::abs(b(i, j)) > cut;
    return arcs;
}

/**
 * True when some strong component of the digraph of B is a directed cycle of
 * length >= 3: then no N with upper-right block of this pattern is sympPD.
 * False means "no obstruction found", not "allowed".
 */
inline bool forbidden_cycle_detector(const std::vector<std::vector<bool>>& b) {
    for (const auto& comp : strong_components(b)) {
        if (comp.size() < 3) continue;
        bool cycle = true;
        for (int v : comp) {
            int out_deg = 0;
            for (int w : comp) out_deg += b[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)] ? 1 : 0;
            if (out_deg != 1 || b[static_cast<std::size_t>(v)][static_cast<std::size_t>(v)]) cycle = false;
        }
        if (cycle) return true;
    }
    return false;
}

/// Two strong components equal to [0] joined by a directed walk; false means unknown.
inline bool forbidden_nilpotent_detector(const std::vector<std::vector<bool>>& b) {
    const int n = static_cast<int>(b.size());
    std::vector<int> zeros;
    for (const auto& comp : strong_components(b))
        if (comp.size() == 1 && !b[static_cast<std::size_t>(comp[0])][static_cast<std::size_t>(comp[0])])
            zeros.push_back(comp[0]);
    for (int s : zeros) {
        std::vector<char> seen(static_cast<std::size_t>(n), 0);
        std::vector<int> todo{s};
        seen[static_cast<std::size_t>(s)] = 1;
        while (!todo.empty()) {
            const int v = todo.back();
            todo.pop_back();
            for (int w = 0; w < n; ++w)
                if (b[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)] && !seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = 1;
                    todo.push_back(w);
                }
        }
        for (int t : zeros)
            if (t != s && seen[static_cast<std::size_t>(t)]) return true;
    }
    return false;
}

/// Some vertex i is isolated while i +- p is not; every matrix on G then has two distinct symplectic eigenvalues.
inline bool isolated_vertex_obstruction(const LabeledGraph& g) {
    if (g.order() % 2 != 0) throw invalid_input("isolated_vertex_obstruction: order must be even");
    const int p = g.order() / 2;
    for (int i = 0; i < g.order(); ++i)
        if (g.degree(i) == 0 && g.degree((i + p) % g.order()) > 0) return true;
    return false;
}

// Sparsity.

struct SparsityReport {
    int order = 0;
    int nnz = 0;
    int nnz_inverse = 0;
    bool irreducible = false;
    bool symp_pd = false;
    int pair_bound = 0;     // 8n - 8
    int symp_pd_bound = 0;  // 4n - 4
    bool pair_bound_holds = true;
    bool symp_pd_bound_holds = true;
    double zero_tol = 1e-10;

    bool violated() const { return !pair_bound_holds || !symp_pd_bound_holds; }
};

inline int count_nonzeros(const Matrix& a, double zero_tol) {
    const double cut = zero_tol * max_abs(a);
    return static_cast<int>((a.array().abs() > cut).count());
}

/// nnz(N) + nnz(N^{-1}) >= 8n - 8 for irreducible PD N, and nnz(N) >= 4n - 4 when N is also sympPD.
inline SparsityReport sparsity_audit(const DenseSymmetric& n, double zero_tol = 1e-10) {
    require_positive_definite(n.matrix(), "sparsity_audit");
    SparsityReport r;
    r.order = n.order();
    r.zero_tol = zero_tol;
    const Matrix inv = n.matrix().ldlt().solve(Matrix::Identity(n.order(), n.order()));
    r.nnz = count_nonzeros(n.matrix(), zero_tol);
    r.nnz_inverse = count_nonzeros(inv, zero_tol);
    r.irreducible = graph_of_matrix(n, zero_tol).is_connected();
    r.symp_pd = is_symp_pd(n);
    r.pair_bound = 8 * r.order - 8;
    r.symp_pd_bound = 4 * r.order - 4;
    if (r.irreducible) {
        r.pair_bound_holds = r.nnz + r.nnz_inverse >= r.pair_bound;
        if (r.symp_pd) r.symp_pd_bound_holds = r.nnz >= r.symp_pd_bound;
    }
    return r;
}

} // namespace spisep
