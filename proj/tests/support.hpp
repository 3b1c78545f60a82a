#pragma once

// Random generators and independent oracles shared by the unit tests and the acceptance run.

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "spisep/spisep.hpp"

namespace testing {

using namespace spisep;
using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

inline int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline LabeledGraph random_graph(Rng& rng, int n, double density) {
    LabeledGraph g(n);
    std::bernoulli_distribution coin(density);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(rng)) g.add_edge(u, v);
    return g;
}

inline LabeledGraph random_connected_graph(Rng& rng, int n, double density) {
    LabeledGraph g = random_graph(rng, n, density);
    for (int v = 1; v < n; ++v) g.add_edge(v, uniform_int(rng, 0, v - 1)); // spanning tree on top
    return g;
}

/// Positive definite matrix with graph exactly g: random off-diagonal entries, then a diagonal shift.
inline DenseSymmetric random_pd_on(Rng& rng, const LabeledGraph& g) {
    const int n = g.order();
    Matrix m = Matrix::Zero(n, n);
    for (auto [u, v] : g.edges()) m(u, v) = m(v, u) = (uniform(rng, 0, 1) < 0.5 ? -1.0 : 1.0) * uniform(rng, 0.2, 1.0);
    for (int i = 0; i < n; ++i) m(i, i) = uniform(rng, 0.5, 3.0);
    const double lo = Eigen::SelfAdjointEigenSolver<Matrix>(m, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
    if (lo < 0.1) m += (0.1 + uniform(rng, 0, 0.5) - lo) * Matrix::Identity(n, n);
    return DenseSymmetric(m);
}

inline Matrix random_symmetric(Rng& rng, int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) m(i, j) = m(j, i) = uniform(rng, -2, 2);
    return m;
}

/// Product of random shears and block-diagonal symplectic factors.
inline Matrix random_symplectic(Rng& rng, int p) {
    Matrix s = Matrix::Identity(2 * p, 2 * p);
    for (int k = 0; k < 3; ++k) {
        Matrix a(p, p);
        for (int i = 0; i < p; ++i)
            for (int j = 0; j < p; ++j) a(i, j) = uniform(rng, -1, 1);
        a += 2.0 * Matrix::Identity(p, p);
        const Matrix b = 0.5 * random_symmetric(rng, p);
        s = s * block_diag_symplectic(a) * shear(b);
        s = s * omega(p); // Omega itself is symplectic
    }
    return s;
}

/// Moduli of the eigenvalues of Omega N with positive imaginary part, ascending (general eigensolver).
inline std::vector<double> spectrum_oracle(const Matrix& n) {
    const int p = static_cast<int>(n.rows()) / 2;
    Eigen::EigenSolver<Matrix> es(omega(p) * n, false);
    std::vector<double> out;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
        if (es.eigenvalues()(i).imag() > 0) out.push_back(std::abs(es.eigenvalues()(i)));
    std::sort(out.begin(), out.end());
    return out;
}

inline double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) return INFINITY;
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

inline std::vector<double> sorted(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v;
}

/// Positive targets with relative gaps of at least `gap`.
inline std::vector<double> distinct_targets(Rng& rng, int p, double gap = 1e-2) {
    std::vector<double> t;
    while (static_cast<int>(t.size()) < p) {
        const double x = uniform(rng, 0.3, 3.0);
        bool ok = true;
        for (double y : t) ok = ok && std::abs(x - y) > gap * std::max(x, y);
        if (ok) t.push_back(x);
    }
    return t;
}

/// The printed 10 x 10 symbolic grid of Phi for a 4 x 4 symmetric N (1-based n(i, j)).
inline Matrix phi_grid_4(const Matrix& a) {
    auto n = [&a](int i, int j) { return a(i - 1, j - 1); };
    Matrix g(10, 10);
    g << 0, 0, 0, 4 * n(1, 3), 0, 2 * n(1, 4), 2 * n(1, 1), 0, 0, 2 * n(1, 2),
        0, 0, 0, 2 * n(2, 3), 2 * n(1, 4), n(1, 3) + n(2, 4), n(1, 2), n(1, 2), n(1, 1), n(2, 2),
        0, 0, 0, 0, 4 * n(2, 4), 2 * n(2, 3), 0, 2 * n(2, 2), 2 * n(1, 2), 0,
        2 * n(1, 1), 0, n(1, 2), 2 * n(3, 3), 0, n(3, 4), 0, 0, -n(1, 4), n(2, 3),
        2 * n(1, 2), 0, n(2, 2), 0, 2 * n(3, 4), n(3, 3), -n(2, 3), n(2, 3), n(1, 3) - n(2, 4), 0,
        4 * n(1, 3), 0, 2 * n(2, 3), 0, 0, 0, -2 * n(3, 3), 0, -2 * n(3, 4), 0,
        0, 2 * n(1, 2), n(1, 1), 2 * n(3, 4), 0, n(4, 4), n(1, 4), -n(1, 4), 0, -n(1, 3) + n(2, 4),
        0, 2 * n(2, 2), n(1, 2), 0, 2 * n(4, 4), n(3, 4), 0, 0, n(1, 4), -n(2, 3),
        2 * n(1, 4), 2 * n(2, 3), n(1, 3) + n(2, 4), 0, 0, 0, -n(3, 4), -n(3, 4), -n(4, 4), -n(3, 3),
        0, 4 * n(2, 4), 2 * n(1, 4), 0, 0, 0, 0, -2 * n(4, 4), 0, -2 * n(3, 4);
    return g;
}

/// Coefficients of the characteristic polynomial det(xI - A), highest degree first (Faddeev-LeVerrier).
inline std::vector<double> char_poly(const Matrix& a) {
    const auto n = a.rows();
    std::vector<double> c(static_cast<std::size_t>(n + 1));
    c[0] = 1.0;
    Matrix m = Matrix::Zero(n, n);
    for (Eigen::Index k = 1; k <= n; ++k) {
        m = a * m + c[static_cast<std::size_t>(k - 1)] * Matrix::Identity(n, n);
        c[static_cast<std::size_t>(k)] = -(a * m).trace() / static_cast<double>(k);
    }
    return c;
}

inline std::vector<double> poly_mul(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

/// Independent check of Y: symmetric, Y o N = 0 and Omega N Y = Y N Omega.
inline double witness_residual(const Matrix& n, const Matrix& y) {
    const int p = static_cast<int>(n.rows()) / 2;
    const Matrix w = omega(p);
    double r = max_abs(y - y.transpose());
    r = std::max(r, max_abs(n.cwiseProduct(y)));
    r = std::max(r, max_abs(w * n * y - y * n * w));
    return r;
}

// Trees up to isomorphism, grown leaf by leaf and deduplicated by a canonical string.

inline std::string rooted_code(const LabeledGraph& t, int v, int parent) {
    std::vector<std::string> kids;
    for (VertexSet s = t.neighbors(v); s; s &= s - 1) {
        const int w = std::countr_zero(s);
        if (w != parent) kids.push_back(rooted_code(t, w, v));
    }
    std::sort(kids.begin(), kids.end());
    std::string out = "(";
    for (auto& k : kids) out += k;
    return out + ")";
}

inline std::string tree_code(const LabeledGraph& t) {
    std::string best;
    for (int v = 0; v < t.order(); ++v) {
        std::string c = rooted_code(t, v, -1);
        if (best.empty() || c < best) best = c;
    }
    return best;
}

/// All trees on 1..max_n vertices up to isomorphism, indexed by order.
inline std::map<int, std::vector<LabeledGraph>> trees_up_to(int max_n) {
    std::map<int, std::vector<LabeledGraph>> out;
    out[1] = {LabeledGraph(1)};
    for (int n = 2; n <= max_n; ++n) {
        std::set<std::string> seen;
        for (const auto& t : out[n - 1]) {
            for (int v = 0; v < n - 1; ++v) {
                LabeledGraph g(n);
                for (auto [a, b] : t.edges()) g.add_edge(a, b);
                g.add_edge(v, n - 1);
                if (seen.insert(tree_code(g)).second) out[n].push_back(g);
            }
        }
    }
    return out;
}

/// Jacobi (tridiagonal, positive off-diagonals) matrix with the given eigenvalues, by Lanczos on diag(values).
inline Matrix jacobi_with_eigenvalues(const std::vector<double>& values, Rng& rng) {
    const auto p = static_cast<Eigen::Index>(values.size());
    Vector lam(p);
    for (Eigen::Index i = 0; i < p; ++i) lam(i) = values[static_cast<std::size_t>(i)];
    Vector q(p);
    for (Eigen::Index i = 0; i < p; ++i) q(i) = uniform(rng, 0.5, 1.5);
    q.normalize();
    Matrix qs = Matrix::Zero(p, p);
    Matrix t = Matrix::Zero(p, p);
    qs.col(0) = q;
    for (Eigen::Index k = 0; k < p; ++k) {
        Vector w = lam.cwiseProduct(qs.col(k));
        t(k, k) = qs.col(k).dot(w);
        w -= qs.leftCols(k + 1) * (qs.leftCols(k + 1).transpose() * w); // full reorthogonalisation
        w -= qs.leftCols(k + 1) * (qs.leftCols(k + 1).transpose() * w);
        if (k + 1 < p) {
            const double beta = w.norm();
            t(k, k + 1) = t(k + 1, k) = beta;
            qs.col(k + 1) = w / beta;
        }
    }
    return t;
}

} // namespace testing
