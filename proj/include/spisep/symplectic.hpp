#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "matrix.hpp"

namespace spisep {

/// A permutation of {0, ..., n-1}: vertex i receives label perm[i].
using Permutation = std::vector<int>;

/// The standard symplectic form [[0, I_p], [-I_p, 0]].
inline Matrix omega(int p) {
    if (p < 1) throw invalid_input("omega: p must be positive");
    Matrix w = Matrix::Zero(2 * p, 2 * p);
    w.topRightCorner(p, p).setIdentity();
    w.bottomLeftCorner(p, p) = -Matrix::Identity(p, p);
    return w;
}

/// True iff ||S^T Omega S - Omega||_max <= tol.
inline bool is_symplectic(const Matrix& s, double tol = 1e-10) {
    if (s.rows() != s.cols() || s.rows() % 2 != 0 || s.rows() == 0)
        throw invalid_input("is_symplectic: matrix must be square of even order");
    const Matrix w = omega(static_cast<int>(s.rows() / 2));
    return max_abs(s.transpose() * w * s - w) <= tol;
}

/**
 * Pivoted LDL^T test. Every pivot must exceed rel_tol times the largest
 * diagonal entry, which keeps the test invariant under positive scaling.
 */
inline bool is_positive_definite(const Matrix& n, double rel_tol = 1e-10) {
    if (n.rows() != n.cols() || n.rows() == 0) return false;
    const double dmax = n.diagonal().maxCoeff();
    if (!(dmax > 0.0)) return false;
    Eigen::LDLT<Matrix> ldlt(n);
    if (ldlt.info() != Eigen::Success) return false;
    return ldlt.vectorD().minCoeff() > rel_tol * dmax;
}

inline bool is_positive_definite(const DenseSymmetric& n, double rel_tol = 1e-10) {
    return is_positive_definite(n.matrix(), rel_tol);
}

inline void require_positive_definite(const Matrix& n, const std::string& who) {
    if (!is_positive_definite(n)) throw invalid_input(who + ": matrix is not positive definite");
}

struct SpectrumCluster {
    double value;
    int multiplicity;
};

/// Symplectic eigenvalues in ascending order, grouped into multiplicity clusters.
struct SymplecticSpectrum {
    std::vector<double> values;
    std::vector<SpectrumCluster> clusters;
    double cluster_tol = 1e-6;

    int max_multiplicity() const {
        int m = 0;
        for (const auto& c : clusters) m = std::max(m, c.multiplicity);
        return m;
    }
};

/**
 * Single-linkage clustering on sorted positive values: neighbours whose
 * relative gap is at most tol share a cluster. The representative is the
 * cluster mean.
 */
inline std::vector<SpectrumCluster> cluster_values(const std::vector<double>& sorted, double tol) {
    std::vector<SpectrumCluster> out;
    std::size_t start = 0;
    for (std::size_t i = 1; i <= sorted.size(); ++i) {
        const bool split = i == sorted.size() ||
                           (sorted[i] - sorted[i - 1]) > tol * std::max(sorted[i], sorted[i - 1]);
        if (!split) continue;
        const double sum = std::accumulate(sorted.begin() + static_cast<long>(start),
                                           sorted.begin() + static_cast<long>(i), 0.0);
        out.push_back({sum / static_cast<double>(i - start), static_cast<int>(i - start)});
        start = i;
    }
    return out;
}

/**
 * Symplectic spectrum of a positive definite N.
 *
 * Omega N is similar to the skew-symmetric K = N^{1/2} Omega N^{1/2}, whose
 * singular values are the symplectic eigenvalues, each appearing twice.
 */
inline SymplecticSpectrum symplectic_spectrum(const DenseSymmetric& n, double cluster_tol = 1e-6) {
    if (!is_positive_definite(n)) throw invalid_input("symplectic_spectrum: matrix is not positive definite");
    const int p = n.half();
    const Matrix root = spd_sqrt(n.matrix()).root;
    const Matrix k = root * omega(p) * root;
    Eigen::JacobiSVD<Matrix> svd(k);
    const Vector& s = svd.singularValues(); // descending
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(p));
    for (int j = 0; j < p; ++j) values.push_back(0.5 * (s(2 * j) + s(2 * j + 1)));
    std::sort(values.begin(), values.end());
    SymplecticSpectrum out;
    out.clusters = cluster_values(values, cluster_tol);
    out.values = std::move(values);
    out.cluster_tol = cluster_tol;
    return out;
}

/// S symplectic with S^T N S = diag(d) (+) diag(d).
struct WilliamsonPair {
    Matrix s;
    std::vector<double> d;
    double reconstruction_residual = 0.0; // ||S^T N S - D(+)D||_max
    double symplectic_residual = 0.0;     // ||S^T Omega S - Omega||_max
};

/**
 * Williamson normal form.
 *
 * With A = N^{-1/2} Omega N^{-1/2} (skew-symmetric) we look for an orthogonal
 * Q with Q^T A Q = [[0, L], [-L, 0]], L = diag(1/d). Then
 * S = N^{-1/2} Q (D^{1/2} (+) D^{1/2}) is symplectic and S^T N S = D (+) D.
 * Q is assembled from eigenvectors u of -A^2 paired with v = -A u / |A u|.
 */
inline WilliamsonPair williamson_decompose(const DenseSymmetric& n) {
    if (!is_positive_definite(n)) throw invalid_input("williamson_decompose: matrix is not positive definite");
    const int p = n.half();
    const int dim = n.order();
    const Matrix inv_root = spd_sqrt(n.matrix()).inv_root;
    Matrix a = inv_root * omega(p) * inv_root;
    a = 0.5 * (a - a.transpose());
    Matrix h = -(a * a);
    h = 0.5 * (h + h.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    if (es.info() != Eigen::Success) throw numerical_error("williamson_decompose: eigensolver failed");

    Matrix chosen(dim, 0);
    auto project_out = [&chosen](Vector x) {
        for (int pass = 0; pass < 2; ++pass)
            if (chosen.cols() > 0) x -= chosen * (chosen.transpose() * x);
        return x;
    };

    std::vector<Vector> us, vs;
    std::vector<double> mus;
    for (int j = 0; j < p; ++j) {
        int best = -1;
        double best_norm = -1.0;
        Vector best_u;
        for (int c = 0; c < dim; ++c) {
            Vector r = project_out(es.eigenvectors().col(c));
            const double nr = r.norm();
            if (nr > best_norm) {
                best_norm = nr;
                best = c;
                best_u = std::move(r);
            }
        }
        if (best < 0 || best_norm < 1e-8) throw numerical_error("williamson_decompose: basis construction failed");
        Vector u = best_u / best_norm;
        Vector au = a * u;
        const double mu = au.norm();
        Vector v = project_out(-au / mu);
        v -= u * u.dot(v);
        v.normalize();
        chosen.conservativeResize(Eigen::NoChange, chosen.cols() + 2);
        chosen.col(chosen.cols() - 2) = u;
        chosen.col(chosen.cols() - 1) = v;
        us.push_back(u);
        vs.push_back(v);
        mus.push_back(mu);
    }

    std::vector<int> order(static_cast<std::size_t>(p));
    std::iota(order.begin(), order.end(), 0);
    // ascending d = 1/mu
    std::sort(order.begin(), order.end(), [&](int x, int y) { return mus[x] > mus[y]; });

    Matrix q(dim, dim);
    WilliamsonPair out;
    for (int j = 0; j < p; ++j) {
        const auto k = static_cast<std::size_t>(order[static_cast<std::size_t>(j)]);
        q.col(j) = us[k];
        q.col(j + p) = vs[k];
        out.d.push_back(1.0 / mus[k]);
    }
    Vector scale(dim);
    for (int j = 0; j < p; ++j) scale(j) = scale(j + p) = std::sqrt(out.d[static_cast<std::size_t>(j)]);
    out.s = inv_root * q * scale.asDiagonal();

    Vector dd(dim);
    for (int j = 0; j < p; ++j) dd(j) = dd(j + p) = out.d[static_cast<std::size_t>(j)];
    const Matrix w = omega(p);
    out.reconstruction_residual = max_abs(out.s.transpose() * n.matrix() * out.s - Matrix(dd.asDiagonal()));
    out.symplectic_residual = max_abs(out.s.transpose() * w * out.s - w);
    if (out.reconstruction_residual > 1e-6 * std::max(1.0, max_abs(n.matrix())) || out.symplectic_residual > 1e-6)
        throw numerical_error("williamson_decompose: residual too large (ill-conditioned input)");
    return out;
}

/// (Omega N)^2 = -I for a positive definite N, i.e. every symplectic eigenvalue is 1.
inline bool is_symp_pd(const DenseSymmetric& n, double tol = 1e-8) {
    if (!is_positive_definite(n)) return false;
    const Matrix on = omega(n.half()) * n.matrix();
    return max_abs(on * on + Matrix::Identity(n.order(), n.order())) <= tol;
}

/// N^{-1} = [[N22, -N12^T], [-N12, N11]]; an independent characterisation of sympPD.
inline bool symp_pd_inverse_identity(const DenseSymmetric& n, double tol = 1e-8) {
    if (!is_positive_definite(n)) throw invalid_input("symp_pd_inverse_identity: matrix is not positive definite");
    Eigen::LDLT<Matrix> ldlt(n.matrix());
    const Matrix inv = ldlt.solve(Matrix::Identity(n.order(), n.order()));
    const Matrix expected = block2x2(n.block22(), -n.block12().transpose(), -n.block12(), n.block11());
    return max_abs(inv - expected) <= tol * std::max(1.0, max_abs(inv));
}

// Basic symplectic matrices.

/// diag(A, (A^T)^{-1}) for invertible A.
inline Matrix block_diag_symplectic(const Matrix& a) {
    if (a.rows() != a.cols() || a.rows() == 0) throw invalid_input("block_diag_symplectic: A must be square");
    Eigen::FullPivLU<Matrix> lu(a);
    if (!lu.isInvertible()) throw invalid_input("block_diag_symplectic: A is singular");
    const auto p = a.rows();
    return block2x2(a, Matrix::Zero(p, p), Matrix::Zero(p, p), lu.inverse().transpose());
}

/// [[I, B], [O, I]] for symmetric B.
inline Matrix shear(const Matrix& b) {
    require_symmetric(b, "shear: B");
    const auto p = b.rows();
    return block2x2(Matrix::Identity(p, p), b, Matrix::Zero(p, p), Matrix::Identity(p, p));
}

// Relabelings.

inline bool is_permutation(const Permutation& sigma) {
    std::vector<char> seen(sigma.size(), 0);
    for (int v : sigma) {
        if (v < 0 || static_cast<std::size_t>(v) >= sigma.size() || seen[static_cast<std::size_t>(v)]) return false;
        seen[static_cast<std::size_t>(v)] = 1;
    }
    return true;
}

/// Builds a 0-based permutation from a cycle written with 1-based labels, e.g. {1, 2, 4}.
inline Permutation from_cycle(int n, const std::vector<int>& cycle_1based) {
    Permutation sigma(static_cast<std::size_t>(n));
    std::iota(sigma.begin(), sigma.end(), 0);
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int c : cycle_1based) {
        if (c < 1 || c > n || seen[static_cast<std::size_t>(c - 1)]) throw invalid_input("from_cycle: bad cycle entry");
        seen[static_cast<std::size_t>(c - 1)] = true;
    }
    for (std::size_t k = 0; k < cycle_1based.size(); ++k)
        sigma[static_cast<std::size_t>(cycle_1based[k] - 1)] = cycle_1based[(k + 1) % cycle_1based.size()] - 1;
    return sigma;
}

/// Column i of P_sigma is e_{sigma(i)}.
inline Matrix permutation_matrix(const Permutation& sigma) {
    if (!is_permutation(sigma)) throw invalid_input("permutation_matrix: not a permutation");
    const auto n = static_cast<Eigen::Index>(sigma.size());
    Matrix pm = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) pm(sigma[static_cast<std::size_t>(i)], i) = 1.0;
    return pm;
}

/// Pairs {sigma(k), sigma(k+p)} coincide with the pairs {k, k+p}.
inline bool is_valid_symplectic_relabeling(const Permutation& sigma) {
    if (!is_permutation(sigma) || sigma.size() % 2 != 0) return false;
    const int p = static_cast<int>(sigma.size() / 2);
    for (int k = 0; k < p; ++k) {
        const int a = sigma[static_cast<std::size_t>(k)];
        const int b = sigma[static_cast<std::size_t>(k + p)];
        if (std::abs(a - b) != p) return false;
    }
    return true;
}

/// P_sigma N P_sigma^T: entry (i, j) of N moves to (sigma(i), sigma(j)).
inline DenseSymmetric relabel(const DenseSymmetric& n, const Permutation& sigma) {
    if (static_cast<int>(sigma.size()) != n.order()) throw invalid_input("relabel: size mismatch");
    if (!is_permutation(sigma)) throw invalid_input("relabel: not a permutation");
    Matrix out(n.order(), n.order());
    for (int i = 0; i < n.order(); ++i)
        for (int j = 0; j < n.order(); ++j)
            out(sigma[static_cast<std::size_t>(i)], sigma[static_cast<std::size_t>(j)]) = n(i, j);
    return DenseSymmetric(out);
}

/// Valid relabeling combined with the sign flips on swapped pairs, so the symplectic spectrum is kept.
/// The flips do not change the labeled graph.
inline DenseSymmetric symplectic_relabel(const DenseSymmetric& n, const Permutation& sigma) {
    if (static_cast<int>(sigma.size()) != n.order() || !is_valid_symplectic_relabeling(sigma))
        throw invalid_input("symplectic_relabel: not a valid symplectic relabeling");
    const int p = n.order() / 2;
    Vector d = Vector::Ones(n.order());
    for (int k = 0; k < p; ++k)
        if (sigma[static_cast<std::size_t>(k)] >= p) d(k) = -1.0;
    return relabel(DenseSymmetric(Matrix(d.asDiagonal() * n.matrix() * d.asDiagonal())), sigma);
}

} // namespace spisep
