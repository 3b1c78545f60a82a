#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "graph.hpp"
#include "matrix.hpp"
#include "symplectic.hpp"

namespace spisep {

// sp(2p) and vec-triangle.

/// Standard ordered basis element of sp(2p).
struct SpBasisElement {
    Matrix matrix;
    int index = 0;
};

inline bool is_hamiltonian(const Matrix& m, double tol = 1e-10) {
    if (m.rows() != m.cols() || m.rows() % 2 != 0 || m.rows() == 0) return false;
    const Matrix wm = omega(static_cast<int>(m.rows() / 2)) * m;
    return max_abs(wm - wm.transpose()) <= tol * std::max(1.0, max_abs(m));
}

/**
 * The 2p^2 + p matrices
 *   E_{i,j+p} + E_{j,i+p}  (i <= j),
 *   E_{i+p,j} + E_{j+p,i}  (i <= j),
 *   E_{ij} - E_{j+p,i+p},
 * in that order. Within the first two sets the diagonal pairs come first,
 * then each superdiagonal; in the third set the diagonal comes first, then
 * each superdiagonal followed by the matching subdiagonal.
 */
inline std::vector<SpBasisElement> sp_basis(int p) {
    if (p < 1) throw invalid_input("sp_basis: p must be positive");
    const int n = 2 * p;
    std::vector<SpBasisElement> out;
    auto push = [&](Matrix m) { out.push_back({std::move(m), static_cast<int>(out.size())}); };

    for (int off = 0; off < p; ++off)
        for (int i = 0; i + off < p; ++i) {
            const int j = i + off;
            Matrix m = Matrix::Zero(n, n);
            m(i, j + p) += 1.0;
            m(j, i + p) += 1.0;
            push(std::move(m));
        }
    for (int off = 0; off < p; ++off)
        for (int i = 0; i + off < p; ++i) {
            const int j = i + off;
            Matrix m = Matrix::Zero(n, n);
            m(i + p, j) += 1.0;
            m(j + p, i) += 1.0;
            push(std::move(m));
        }
    auto gl = [&](int i, int j) {
        Matrix m = Matrix::Zero(n, n);
        m(i, j) += 1.0;
        m(j + p, i + p) -= 1.0;
        push(std::move(m));
    };
    for (int i = 0; i < p; ++i) gl(i, i);
    for (int off = 1; off < p; ++off) {
        for (int i = 0; i + off < p; ++i) gl(i, i + off);
        for (int i = 0; i + off < p; ++i) gl(i + off, i);
    }
    return out;
}

/// Position of entry (i, j), i <= j, in vec_triangle.
inline int vec_triangle_index(int i, int j) {
    if (i > j) std::swap(i, j);
    return j * (j + 1) / 2 + i;
}

/// Upper triangles of the columns stacked in order: m11, m12, m22, m13, ...
inline Vector vec_triangle(const Matrix& m) {
    if (m.rows() != m.cols()) throw invalid_input("vec_triangle: matrix must be square");
    const auto n = static_cast<int>(m.rows());
    Vector out(n * (n + 1) / 2);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i <= j; ++i) out(vec_triangle_index(i, j)) = m(i, j);
    return out;
}

/// Inverse of vec_triangle on symmetric matrices.
inline Matrix unvec_triangle(const Vector& v) {
    const int n = static_cast<int>(std::lround((std::sqrt(8.0 * static_cast<double>(v.size()) + 1.0) - 1.0) / 2.0));
    if (n * (n + 1) / 2 != v.size()) throw invalid_input("unvec_triangle: length is not triangular");
    Matrix m(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i <= j; ++i) m(i, j) = m(j, i) = v(vec_triangle_index(i, j));
    return m;
}

/// M^T N + N M.
inline Matrix tangent_product(const Matrix& n, const Matrix& m) { return m.transpose() * n + n * m; }

/// Hamiltonian matrix with coordinates `coef` in the standard ordered basis.
inline Matrix hamiltonian_from(const std::vector<SpBasisElement>& basis, const Vector& coef) {
    Matrix m = Matrix::Zero(basis.front().matrix.rows(), basis.front().matrix.cols());
    for (std::size_t k = 0; k < basis.size(); ++k) m += coef(static_cast<Eigen::Index>(k)) * basis[k].matrix;
    return m;
}

// Verification matrices.

struct VerificationMatrix {
    Matrix full;                 // Phi(N), (2p^2+p) x (2p^2+p)
    Matrix reduced;              // Xi(N), rows of Phi at the non-edges
    std::vector<Edge> row_index; // (i, j), i < j, 0-based, in vec_triangle order
};

inline Matrix phi(const Matrix& n) {
    require_symmetric(n, "phi: N", 1e-8);
    if (n.rows() % 2 != 0 || n.rows() == 0) throw invalid_input("phi: order must be even");
    const auto basis = sp_basis(static_cast<int>(n.rows() / 2));
    Matrix out(n.rows() * (n.rows() + 1) / 2, static_cast<Eigen::Index>(basis.size()));
    for (const auto& b : basis) out.col(b.index) = vec_triangle(tangent_product(n, b.matrix));
    return out;
}

inline Matrix phi(const DenseSymmetric& n) { return phi(n.matrix()); }

/// Off-diagonal positions (i < j) with |n_ij| <= zero_tol * max|N|, in vec_triangle order.
inline std::vector<Edge> zero_positions(const Matrix& n, double zero_tol = 1e-10) {
    const double cut = zero_tol * max_abs(n);
    std::vector<Edge> out;
    for (int j = 0; j < n.cols(); ++j)
        for (int i = 0; i < j; ++i)
            if (std::abs(n(i, j)) <= cut) out.emplace_back(i, j);
    return out;
}

inline VerificationMatrix xi(const DenseSymmetric& n, double zero_tol = 1e-10) {
    VerificationMatrix out;
    out.full = phi(n);
    out.row_index = zero_positions(n.matrix(), zero_tol);
    out.reduced.resize(static_cast<Eigen::Index>(out.row_index.size()), out.full.cols());
    for (std::size_t r = 0; r < out.row_index.size(); ++r)
        out.reduced.row(static_cast<Eigen::Index>(r)) =
            out.full.row(vec_triangle_index(out.row_index[r].first, out.row_index[r].second));
    return out;
}

/// Numerical rank: singular values above rank_tol * sigma_max.
inline int numerical_rank(const Matrix& a, double rank_tol) {
    if (a.size() == 0) return 0;
    Eigen::JacobiSVD<Matrix> svd(a);
    const Vector& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) return 0;
    int r = 0;
    for (Eigen::Index k = 0; k < s.size(); ++k)
        if (s(k) > rank_tol * s(0)) ++r;
    return r;
}

/// SSSP via full row rank of Xi(N).
inline bool has_sssp_rank(const DenseSymmetric& n, double rank_tol = 1e-9, double zero_tol = 1e-10) {
    require_positive_definite(n.matrix(), "has_sssp_rank");
    const auto v = xi(n, zero_tol);
    if (v.reduced.rows() == 0) return true;
    return numerical_rank(v.reduced, rank_tol) == v.reduced.rows();
}

// Nullspace characterisation.

struct NullspaceVerdict {
    bool sssp = true;
    std::optional<Matrix> witness; // nonzero symmetric Y when sssp is false
    int unknowns = 0;
    int nullity = 0;
};

/**
 * Symmetric Y supported on `positions` (and their mirrors) with
 * Omega N Y = Y N Omega. One column per free entry y_ij.
 */
inline NullspaceVerdict commuting_nullspace(const Matrix& n, const std::vector<Edge>& positions, double rank_tol) {
    const int dim = static_cast<int>(n.rows());
    const Matrix won = omega(dim / 2) * n;
    const Matrix nw = n * omega(dim / 2);
    NullspaceVerdict out;
    out.unknowns = static_cast<int>(positions.size());
    if (positions.empty()) return out;

    Matrix a(dim * dim, out.unknowns);
    for (int k = 0; k < out.unknowns; ++k) {
        auto [i, j] = positions[static_cast<std::size_t>(k)];
        Matrix y = Matrix::Zero(dim, dim);
        y(i, j) = y(j, i) = 1.0;
        const Matrix r = won * y - y * nw;
        a.col(k) = Eigen::Map<const Vector>(r.data(), r.size());
    }
    Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
    const Vector& s = svd.singularValues();
    int rank = 0;
    if (s(0) > 0.0)
        for (Eigen::Index k = 0; k < s.size(); ++k)
            if (s(k) > rank_tol * s(0)) ++rank;
    out.nullity = out.unknowns - rank;
    out.sssp = out.nullity == 0;
    if (!out.sssp) {
        const Vector c = svd.matrixV().col(out.unknowns - 1);
        Matrix y = Matrix::Zero(dim, dim);
        for (int k = 0; k < out.unknowns; ++k) {
            auto [i, j] = positions[static_cast<std::size_t>(k)];
            y(i, j) = y(j, i) = c(k);
        }
        out.witness = y / max_abs(y);
    }
    return out;
}

/// SSSP iff Y = O is the only symmetric Y with N o Y = O and Omega N Y = Y N Omega.
inline NullspaceVerdict has_sssp_nullspace(const DenseSymmetric& n, double rank_tol = 1e-9, double zero_tol = 1e-10) {
    require_positive_definite(n.matrix(), "has_sssp_nullspace");
    return commuting_nullspace(n.matrix(), zero_positions(n.matrix(), zero_tol), rank_tol);
}

inline DenseSymmetric tangent_element(const DenseSymmetric& n, const Matrix& m) {
    if (m.rows() != n.order() || m.cols() != n.order()) throw invalid_input("tangent_element: size mismatch");
    if (!is_hamiltonian(m)) throw invalid_input("tangent_element: M is not Hamiltonian");
    return DenseSymmetric(tangent_product(n.matrix(), m));
}

/// Coordinates m of a Hamiltonian M with M^T N + N M = R, or invalid_input if R is not tangent.
inline Vector tangent_coordinates(const DenseSymmetric& n, const Matrix& r, double tol = 1e-8) {
    if (r.rows() != n.order() || r.cols() != n.order()) throw invalid_input("tangent_coordinates: size mismatch");
    const Matrix f = phi(n);
    const Vector rhs = vec_triangle(r);
    const Vector m = f.completeOrthogonalDecomposition().solve(rhs);
    if ((f * m - rhs).norm() > tol * std::max(1.0, rhs.norm()))
        throw invalid_input("R is not in the tangent space {NM + M^T N : M in sp(2p)}");
    return m;
}

/// G plus every {i, j} with r_ij nonzero.
inline LabeledGraph direction_graph(const LabeledGraph& g, const Matrix& r, double zero_tol = 1e-10) {
    if (r.rows() != g.order() || r.cols() != g.order()) throw invalid_input("direction_graph: size mismatch");
    LabeledGraph out = g;
    const double cut = zero_tol * max_abs(r);
    for (int i = 0; i < g.order(); ++i)
        for (int j = i + 1; j < g.order(); ++j)
            if (std::abs(r(i, j)) > cut) out.add_edge(i, j);
    return out;
}

/// SSSP with respect to the direction graph of R; R must be a tangent element at N.
inline NullspaceVerdict sssp_in_direction(const DenseSymmetric& n, const DenseSymmetric& r, double rank_tol = 1e-9,
                                          double zero_tol = 1e-10) {
    require_positive_definite(n.matrix(), "has_sssp_in_direction");
    if (r.order() != n.order()) throw invalid_input("has_sssp_in_direction: size mismatch");
    tangent_coordinates(n, r.matrix());
    const double rcut = zero_tol * max_abs(r.matrix());
    std::vector<Edge> free;
    for (auto [i, j] : zero_positions(n.matrix(), zero_tol))
        if (std::abs(r(i, j)) <= rcut) free.emplace_back(i, j);
    return commuting_nullspace(n.matrix(), free, rank_tol);
}

inline bool has_sssp_in_direction(const DenseSymmetric& n, const DenseSymmetric& r, double rank_tol = 1e-9,
                                  double zero_tol = 1e-10) {
    return sssp_in_direction(n, r, rank_tol, zero_tol).sssp;
}

/// [[P1, O, P2, O], [O, Q1, O, Q2], [P2^T, O, P3, O], [O, Q2^T, O, Q3]].
inline DenseSymmetric direct_sum_interleave(const DenseSymmetric& p, const DenseSymmetric& q) {
    require_positive_definite(p.matrix(), "direct_sum_interleave: P");
    require_positive_definite(q.matrix(), "direct_sum_interleave: Q");
    const int m = p.half(), r = q.half(), h = m + r;
    Matrix n = Matrix::Zero(2 * h, 2 * h);
    n.block(0, 0, m, m) = p.block11();
    n.block(0, h, m, m) = p.block12();
    n.block(h, 0, m, m) = p.block12().transpose();
    n.block(h, h, m, m) = p.block22();
    n.block(m, m, r, r) = q.block11();
    n.block(m, h + m, r, r) = q.block12();
    n.block(h + m, m, r, r) = q.block12().transpose();
    n.block(h + m, h + m, r, r) = q.block22();
    return DenseSymmetric(n);
}

// Spectrum-preserving Newton iteration.

/// Cayley transform (I - M/2)^{-1} (I + M/2); symplectic for Hamiltonian M.
inline Matrix cayley(const Matrix& m) {
    const Matrix id = Matrix::Identity(m.rows(), m.cols());
    return (id - 0.5 * m).partialPivLu().solve(id + 0.5 * m);
}

/**
 * Moves the entries of N at `positions` to `values` through congruences
 * N -> C^T N C with C = cayley(M), M in sp(2p), so the symplectic spectrum is
 * untouched. The Jacobian in M is the corresponding rows of Phi(N); each step
 * takes the minimum-norm solution with backtracking.
 */
inline Matrix congruence_newton(Matrix n, const std::vector<Edge>& positions, const std::vector<double>& values,
                                int max_iter = 60, double tol = 1e-13) {
    if (positions.size() != values.size()) throw invalid_input("congruence_newton: size mismatch");
    if (positions.empty()) return n;
    const auto basis = sp_basis(static_cast<int>(n.rows() / 2));
    const auto rows = static_cast<Eigen::Index>(positions.size());
    const auto cols = static_cast<Eigen::Index>(basis.size());

    auto residual = [&](const Matrix& x) {
        Vector r(rows);
        for (Eigen::Index k = 0; k < rows; ++k) {
            auto [i, j] = positions[static_cast<std::size_t>(k)];
            r(k) = values[static_cast<std::size_t>(k)] - x(i, j);
        }
        return r;
    };

    Vector r = residual(n);
    for (int iter = 0; iter < max_iter; ++iter) {
        const double scale = std::max(1.0, max_abs(n));
        if (r.lpNorm<Eigen::Infinity>() <= tol * scale) return n;
        Matrix jac(rows, cols);
        for (Eigen::Index c = 0; c < cols; ++c) {
            const Matrix t = tangent_product(n, basis[static_cast<std::size_t>(c)].matrix);
            for (Eigen::Index k = 0; k < rows; ++k) {
                auto [i, j] = positions[static_cast<std::size_t>(k)];
                jac(k, c) = t(i, j);
            }
        }
        Eigen::CompleteOrthogonalDecomposition<Matrix> cod(jac);
        cod.setThreshold(1e-10);
        if (cod.rank() < rows) throw numerical_error("congruence_newton: Jacobian lost row rank");
        const Vector step = cod.solve(r);

        double t = 1.0;
        bool accepted = false;
        for (int back = 0; back < 20; ++back, t *= 0.5) {
            const Matrix m = hamiltonian_from(basis, t * step);
            if (max_abs(m) > 1.0) continue;
            const Matrix c = cayley(m);
            Matrix trial = c.transpose() * n * c;
            trial = 0.5 * (trial + trial.transpose());
            const Vector rt = residual(trial);
            if (rt.norm() < r.norm() || rt.lpNorm<Eigen::Infinity>() <= tol * scale) {
                n = std::move(trial);
                r = rt;
                accepted = true;
                break;
            }
        }
        if (!accepted) throw numerical_error("congruence_newton: no decrease along Newton direction");
    }
    if (r.lpNorm<Eigen::Infinity>() <= 1e3 * tol * std::max(1.0, max_abs(n))) return n;
    throw numerical_error("congruence_newton: did not converge");
}

namespace detail {

/// Runs congruence_newton along values(t), t: 0 -> 1, halving the step on failure.
template <class ValuesAt>
Matrix ramp_newton(Matrix n, const std::vector<Edge>& positions, ValuesAt values_at, int min_steps = 1) {
    double t = 0.0;
    double dt = 1.0 / min_steps;
    while (t < 1.0) {
        const double next = std::min(1.0, t + dt);
        try {
            n = congruence_newton(n, positions, values_at(next));
            t = next;
            dt = std::min(2.0 * dt, 1.0 / min_steps);
        } catch (const numerical_error&) {
            dt *= 0.5;
            if (dt < 1.0 / 4096.0) throw;
        }
    }
    return n;
}

inline void zero_out(Matrix& n, const LabeledGraph& g) {
    for (int i = 0; i < g.order(); ++i)
        for (int j = i + 1; j < g.order(); ++j)
            if (!g.has_edge(i, j)) n(i, j) = n(j, i) = 0.0;
}

} // namespace detail

/**
 * From N (with the SSSP) whose graph is contained in H, produces a matrix
 * with graph exactly H and the same symplectic spectrum. Entries on the new
 * edges are driven to epsilon * c_ij with c_ij random in +-[1/2, 1].
 */
inline DenseSymmetric supergraph_realize(const DenseSymmetric& n, const LabeledGraph& h, double epsilon,
                                         std::uint64_t seed = 1, double zero_tol = 1e-10) {
    require_positive_definite(n.matrix(), "supergraph_realize");
    if (h.order() != n.order()) throw invalid_input("supergraph_realize: size mismatch");
    const LabeledGraph g = graph_of_matrix(n, zero_tol);
    for (auto [u, v] : g.edges())
        if (!h.has_edge(u, v)) throw invalid_input("supergraph_realize: H does not contain the graph of N");
    if (!(epsilon > 0.0)) throw invalid_input("supergraph_realize: epsilon must be positive");

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> mag(0.5, 1.0);
    std::bernoulli_distribution sign(0.5);

    Matrix start = n.matrix();
    detail::zero_out(start, g);
    std::vector<Edge> positions;
    std::vector<double> goal;
    for (int j = 0; j < n.order(); ++j)
        for (int i = 0; i < j; ++i) {
            if (g.has_edge(i, j)) continue;
            positions.emplace_back(i, j);
            goal.push_back(h.has_edge(i, j) ? (sign(rng) ? 1.0 : -1.0) * mag(rng) * epsilon : 0.0);
        }
    Matrix out = detail::ramp_newton(start, positions, [&](double t) {
        std::vector<double> v(goal.size());
        for (std::size_t k = 0; k < v.size(); ++k) v[k] = t * goal[k];
        return v;
    });
    detail::zero_out(out, h);
    if (!(graph_of_matrix(out, zero_tol) == h)) throw numerical_error("supergraph_realize: an edge vanished");
    if (!is_positive_definite(out)) throw numerical_error("supergraph_realize: lost positive definiteness");
    return DenseSymmetric(out);
}

/**
 * A matrix with graph G and symplectic spectrum `targets` (p distinct
 * positive values), obtained from D (+) D by supergraph_realize.
 */
inline DenseSymmetric realize_distinct_on_graph(std::vector<double> targets, const LabeledGraph& g,
                                                std::uint64_t seed = 1, double cluster_tol = 1e-6) {
    const int p = static_cast<int>(targets.size());
    if (p < 1 || g.order() != 2 * p) throw invalid_input("realize_distinct_on_graph: need p targets for 2p vertices");
    std::sort(targets.begin(), targets.end());
    if (targets.front() <= 0.0) throw invalid_input("realize_distinct_on_graph: targets must be positive");
    if (static_cast<int>(cluster_values(targets, cluster_tol).size()) != p)
        throw invalid_input("realize_distinct_on_graph: targets must be distinct");

    Vector d(2 * p);
    for (int i = 0; i < p; ++i) d(i) = d(i + p) = targets[static_cast<std::size_t>(i)];
    const DenseSymmetric seed_matrix(Matrix(d.asDiagonal()));
    double epsilon = 0.25 * targets.front();
    for (int attempt = 0; attempt < 12; ++attempt, epsilon *= 0.5) {
        try {
            return supergraph_realize(seed_matrix, g, epsilon, seed + static_cast<std::uint64_t>(attempt));
        } catch (const numerical_error&) {
        }
    }
    throw numerical_error("realize_distinct_on_graph: continuation failed");
}

struct ContinuationResult {
    DenseSymmetric n;
    std::vector<double> spectrum;
    double max_error = 0.0;     // max |spectrum - target|
    bool graph_preserved = false;
};

/**
 * Moves the symplectic spectrum of N (with the SSSP) to `targets` while
 * keeping the zero pattern. Each step replaces D by the next interpolated
 * spectrum in N = S^{-T} (D (+) D) S^{-1} and restores the zeros by Newton.
 */
inline ContinuationResult continue_spectrum(const DenseSymmetric& n, std::vector<double> targets, int steps = 4,
                                            double zero_tol = 1e-10) {
    require_positive_definite(n.matrix(), "continue_spectrum");
    if (static_cast<int>(targets.size()) != n.half()) throw invalid_input("continue_spectrum: need p targets");
    std::sort(targets.begin(), targets.end());
    if (targets.front() <= 0.0) throw invalid_input("continue_spectrum: targets must be positive");
    const LabeledGraph g = graph_of_matrix(n, zero_tol);
    const auto positions = zero_positions(n.matrix(), zero_tol);
    const std::vector<double> zeros(positions.size(), 0.0);
    const int p = n.half();

    Matrix cur = n.matrix();
    std::vector<double> d0 = symplectic_spectrum(n).values;
    auto reseat = [&](const Matrix& x, double t) {
        const auto w = williamson_decompose(DenseSymmetric(x));
        Vector dd(2 * p);
        for (int i = 0; i < p; ++i) {
            const auto k = static_cast<std::size_t>(i);
            dd(i) = dd(i + p) = d0[k] + t * (targets[k] - d0[k]);
        }
        const Matrix sinv = w.s.partialPivLu().inverse();
        Matrix y = sinv.transpose() * dd.asDiagonal() * sinv;
        return Matrix(0.5 * (y + y.transpose()));
    };

    double t = 0.0, dt = 1.0 / std::max(1, steps);
    while (t < 1.0) {
        const double next = std::min(1.0, t + dt);
        try {
            Matrix trial = congruence_newton(reseat(cur, next), positions, zeros);
            if (!is_positive_definite(trial)) throw numerical_error("continue_spectrum: lost positive definiteness");
            cur = std::move(trial);
            t = next;
        } catch (const numerical_error&) {
            dt *= 0.5;
            if (dt < 1.0 / 4096.0) throw numerical_error("continue_spectrum: continuation stalled");
        }
    }
    detail::zero_out(cur, g);
    ContinuationResult out{DenseSymmetric(cur), {}, 0.0, false};
    out.spectrum = symplectic_spectrum(out.n).values;
    for (int i = 0; i < p; ++i)
        out.max_error = std::max(out.max_error, std::abs(out.spectrum[static_cast<std::size_t>(i)] -
                                                         targets[static_cast<std::size_t>(i)]));
    out.graph_preserved = graph_of_matrix(out.n, zero_tol) == g;
    return out;
}

/**
 * Given N with the SSSP in the direction of a tangent element R, returns a
 * matrix with the same symplectic spectrum whose graph is the direction
 * graph G_R. Starts from the congruence by cayley(epsilon M), M^T N + N M = R.
 */
inline DenseSymmetric liberate(const DenseSymmetric& n, const DenseSymmetric& r, double epsilon = 0.05,
                               double zero_tol = 1e-10) {
    if (!has_sssp_in_direction(n, r, 1e-9, zero_tol))
        throw invalid_input("liberate: N does not have the SSSP in the direction of R");
    const Vector coord = tangent_coordinates(n, r.matrix());
    const auto basis = sp_basis(n.half());
    const LabeledGraph target = direction_graph(graph_of_matrix(n, zero_tol), r.matrix(), zero_tol);
    std::vector<Edge> positions;
    for (int j = 0; j < n.order(); ++j)
        for (int i = 0; i < j; ++i)
            if (!target.has_edge(i, j)) positions.emplace_back(i, j);
    const std::vector<double> zeros(positions.size(), 0.0);

    for (int attempt = 0; attempt < 12; ++attempt, epsilon *= 0.5) {
        try {
            const Matrix c = cayley(hamiltonian_from(basis, epsilon * coord));
            Matrix x = c.transpose() * n.matrix() * c;
            x = congruence_newton(0.5 * (x + x.transpose()), positions, zeros);
            detail::zero_out(x, target);
            if (graph_of_matrix(x, zero_tol) == target && is_positive_definite(x)) return DenseSymmetric(x);
        } catch (const numerical_error&) {
        }
    }
    throw numerical_error("liberate: could not reach the direction graph");
}

} // namespace spisep
