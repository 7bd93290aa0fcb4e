#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

// Helpers for the symmetric positive-semidefinite matrices that carry all
// uncertainty in this project. Eigendecomposition-based square roots and
// pseudo-inverses keep the filters well defined in the degenerate Q = R = 0
// regimes the tests exercise.

namespace atkf {

inline Eigen::MatrixXd symmetrize(const Eigen::MatrixXd& m) { return 0.5 * (m + m.transpose()); }

inline bool is_symmetric(const Eigen::MatrixXd& m, double tol = 1e-12) {
    return (m - m.transpose()).cwiseAbs().maxCoeff() <= tol * std::max(1.0, m.cwiseAbs().maxCoeff());
}

/// Symmetric square root via eigendecomposition. Eigenvalues in
/// [-neg_tol * scale, 0) are clamped to zero; anything more negative throws.
inline Eigen::MatrixXd psd_sqrt(const Eigen::MatrixXd& m, double neg_tol = 1e-10) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(symmetrize(m));
    if (es.info() != Eigen::Success) throw std::runtime_error("psd_sqrt: eigendecomposition failed");
    const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
    Eigen::VectorXd lam = es.eigenvalues();
    for (int i = 0; i < lam.size(); ++i) {
        if (lam[i] < -neg_tol * scale)
            throw std::runtime_error("psd_sqrt: matrix is not positive semidefinite (eigenvalue " +
                                     std::to_string(lam[i]) + ")");
        lam[i] = lam[i] > 0.0 ? std::sqrt(lam[i]) : 0.0;
    }
    return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose();
}

/// Moore-Penrose inverse of a symmetric PSD matrix, zeroing eigenvalues below
/// rel_tol times the largest. Returns the zero matrix for the zero matrix.
inline Eigen::MatrixXd psd_pinv(const Eigen::MatrixXd& m, double rel_tol = 1e-12) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(symmetrize(m));
    if (es.info() != Eigen::Success) throw std::runtime_error("psd_pinv: eigendecomposition failed");
    const double cutoff = rel_tol * std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
    Eigen::VectorXd lam = es.eigenvalues();
    for (int i = 0; i < lam.size(); ++i) lam[i] = lam[i] > cutoff ? 1.0 / lam[i] : 0.0;
    return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose();
}

}  // namespace atkf
