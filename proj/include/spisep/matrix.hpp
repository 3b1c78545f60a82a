#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

#include "error.hpp"

namespace spisep {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Largest absolute entry, 0 for an empty matrix.
inline double max_abs(const Matrix& a) {
    return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

/**
 * Real symmetric matrix of even order n = 2p.
 *
 * Symmetry is exact: the constructor averages a and a^T after checking that
 * the input is symmetric up to a small relative tolerance.
 */
class DenseSymmetric {
public:
    DenseSymmetric() = default;

    explicit DenseSymmetric(const Matrix& a, double symmetry_tol = 1e-8) {
        if (a.rows() != a.cols())
            throw invalid_input("matrix is not square (" + std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + ")");
        if (a.rows() < 2 || a.rows() % 2 != 0)
            throw invalid_input("matrix order must be even and >= 2, got " + std::to_string(a.rows()));
        const double scale = std::max(1.0, max_abs(a));
        if (max_abs(a - a.transpose()) > symmetry_tol * scale)
            throw invalid_input("matrix is not symmetric");
        m_ = 0.5 * (a + a.transpose());
    }

    const Matrix& matrix() const noexcept { return m_; }
    operator const Matrix&() const noexcept { return m_; }

    int order() const noexcept { return static_cast<int>(m_.rows()); }
    int half() const noexcept { return order() / 2; }
    double operator()(int i, int j) const { return m_(i, j); }

    /// Upper-left, upper-right and lower-right p x p blocks.
    Matrix block11() const { return m_.topLeftCorner(half(), half()); }
    Matrix block12() const { return m_.topRightCorner(half(), half()); }
    Matrix block22() const { return m_.bottomRightCorner(half(), half()); }

    friend DenseSymmetric operator*(double s, const DenseSymmetric& n) {
        return DenseSymmetric(s * n.m_);
    }

    friend bool operator==(const DenseSymmetric& a, const DenseSymmetric& b) {
        return a.m_.rows() == b.m_.rows() && a.m_ == b.m_;
    }

private:
    Matrix m_;
};

/// Throws unless a is square and symmetric within tol (relative to its largest entry).
inline void require_symmetric(const Matrix& a, const std::string& name, double tol = 1e-10) {
    if (a.rows() != a.cols()) throw invalid_input(name + " must be square");
    if (max_abs(a - a.transpose()) > tol * std::max(1.0, max_abs(a)))
        throw invalid_input(name + " must be symmetric");
}

/// The 2p x 2p block matrix [[a, b], [c, d]].
inline Matrix block2x2(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d) {
    const auto p = a.rows();
    Matrix out(2 * p, 2 * p);
    out << a, b, c, d;
    return out;
}

inline Matrix direct_sum(const Matrix& a, const Matrix& b) {
    Matrix out = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
    out.topLeftCorner(a.rows(), a.cols()) = a;
    out.bottomRightCorner(b.rows(), b.cols()) = b;
    return out;
}

/// Symmetric square root and inverse square root of a symmetric positive definite matrix.
struct SqrtPair {
    Matrix root;
    Matrix inv_root;
};

inline SqrtPair spd_sqrt(const Matrix& a) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(a);
    if (es.info() != Eigen::Success) throw numerical_error("symmetric eigensolver failed");
    const Vector& w = es.eigenvalues();
    if (w.minCoeff() <= 0.0) throw invalid_input("matrix is not positive definite");
    const Matrix& v = es.eigenvectors();
    return {v * w.cwiseSqrt().asDiagonal() * v.transpose(),
            v * w.cwiseSqrt().cwiseInverse().asDiagonal() * v.transpose()};
}

} // namespace spisep
