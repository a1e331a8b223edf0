#pragma once

#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "ctap/chain.hpp"
#include "ctap/errors.hpp"

namespace ctap {

/// Eigenvalues in ascending order with matching orthonormal eigenvector
/// columns. Each column is signed so its first non-negligible component is
/// positive.
template <typename Scalar>
struct EigenSystem {
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> eigenvalues;
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> eigenvectors;

    Eigen::Index size() const { return eigenvalues.size(); }
};

namespace detail {

template <typename Scalar>
void fix_column_signs(Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& vectors) {
    using std::abs;
    const Scalar cutoff = Scalar(64) * std::numeric_limits<Scalar>::epsilon();
    for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
        for (Eigen::Index r = 0; r < vectors.rows(); ++r) {
            if (abs(vectors(r, c)) > cutoff) {
                if (vectors(r, c) < Scalar(0)) vectors.col(c) *= Scalar(-1);
                break;
            }
        }
    }
}

// ||Omega|| recovered from the spectrum: ||H||_F^2 = sum E_k^2 = 2 ||Omega||^2.
template <typename Scalar>
Scalar coupling_norm_from_spectrum(const EigenSystem<Scalar>& eigs) {
    using std::sqrt;
    return eigs.eigenvalues.norm() / sqrt(Scalar(2));
}

}  // namespace detail

/// Absolute tolerance below which an eigenvalue counts as zero:
/// 1e-10 * max(1, ||Omega||).
template <typename Scalar>
Scalar zero_mode_tolerance(const EigenSystem<Scalar>& eigs) {
    using std::max;
    return Scalar(1e-10) * max(Scalar(1), detail::coupling_norm_from_spectrum(eigs));
}

/// Dense symmetric diagonalisation of a chain Hamiltonian.
template <typename Derived>
EigenSystem<typename Derived::Scalar> diagonalize(const Eigen::MatrixBase<Derived>& h) {
    using Scalar = typename Derived::Scalar;
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    if (h.rows() != h.cols() || h.rows() == 0) {
        throw DimensionError("Hamiltonian must be a non-empty square matrix");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
    if (solver.info() != Eigen::Success) {
        throw Error("symmetric eigensolver did not converge");
    }
    EigenSystem<Scalar> eigs{solver.eigenvalues(), solver.eigenvectors()};
    detail::fix_column_signs(eigs.eigenvectors);
    return eigs;
}

/// Closed-form eigensystem of the five-site chain with Omega_1 = Omega_3 =
/// omega1 and Omega_2 = Omega_4 = omega2. Ordered E_{2-}, E_-, E_0, E_+, E_{2+}.
template <typename Scalar>
EigenSystem<Scalar> symmetric5_eigensystem(Scalar omega1, Scalar omega2) {
    using std::sqrt;
    if (!(omega1 >= Scalar(0)) || !(omega2 >= Scalar(0))) {
        throw DomainError("symmetric five-site couplings must be non-negative");
    }
    if (omega1 == Scalar(0) && omega2 == Scalar(0)) {
        throw DegenerateInputError("symmetric five-site eigensystem undefined when both couplings vanish");
    }
    const Scalar a = omega1;
    const Scalar b = omega2;
    const Scalar s = sqrt(a * a - a * b + b * b);
    const Scalar q = sqrt(a * a + a * b + b * b);
    const Scalar m = sqrt(a * a * a * a + b * b * b * b + a * a * b * b);

    EigenSystem<Scalar> eigs;
    eigs.eigenvalues.resize(5);
    eigs.eigenvalues << -q, -s, Scalar(0), s, q;
    eigs.eigenvectors.resize(5, 5);

    // |D_{2-}>
    eigs.eigenvectors.col(0) << a, -q, a + b, -q, b;
    eigs.eigenvectors.col(0) /= Scalar(2) * q;
    // |D_->
    eigs.eigenvectors.col(1) << -a, s, a - b, -s, b;
    eigs.eigenvectors.col(1) /= Scalar(2) * s;
    // |D_0>
    eigs.eigenvectors.col(2) << b * b, Scalar(0), -a * b, Scalar(0), a * a;
    eigs.eigenvectors.col(2) /= m;
    // |D_+>
    eigs.eigenvectors.col(3) << -a, -s, a - b, s, b;
    eigs.eigenvectors.col(3) /= Scalar(2) * s;
    // |D_{2+}>
    eigs.eigenvectors.col(4) << a, q, a + b, q, b;
    eigs.eigenvectors.col(4) /= Scalar(2) * q;

    detail::fix_column_signs(eigs.eigenvectors);
    return eigs;
}

/// Index of the eigenvalue closest to zero. Throws ProtocolStateError if even
/// that one exceeds zero_mode_tolerance.
template <typename Scalar>
Eigen::Index zero_mode_index(const EigenSystem<Scalar>& eigs) {
    Eigen::Index idx = 0;
    eigs.eigenvalues.cwiseAbs().minCoeff(&idx);
    using std::abs;
    if (!(abs(eigs.eigenvalues(idx)) <= zero_mode_tolerance(eigs))) {
        throw ProtocolStateError("spectrum has no zero eigenvalue");
    }
    return idx;
}

/// Index of the smallest eigenvalue above the zero tolerance.
template <typename Scalar>
Eigen::Index positive_neighbour_index(const EigenSystem<Scalar>& eigs) {
    const Scalar tol = zero_mode_tolerance(eigs);
    for (Eigen::Index k = 0; k < eigs.size(); ++k) {
        if (eigs.eigenvalues(k) > tol) return k;
    }
    throw ProtocolStateError("spectrum has no positive eigenvalue");
}

/// Distance from the zero mode to the nearest nonzero eigenvalue.
template <typename Scalar>
Scalar gap_to_nearest(const EigenSystem<Scalar>& eigs) {
    using std::abs;
    zero_mode_index(eigs);
    const Scalar tol = zero_mode_tolerance(eigs);
    Scalar gap = std::numeric_limits<Scalar>::infinity();
    for (Eigen::Index k = 0; k < eigs.size(); ++k) {
        const Scalar e = abs(eigs.eigenvalues(k));
        if (e > tol && e < gap) gap = e;
    }
    if (gap == std::numeric_limits<Scalar>::infinity()) {
        throw ProtocolStateError("spectrum is fully degenerate at zero; no gap exists");
    }
    return gap;
}

}  // namespace ctap
