#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace ctap::test {

// Reproducible coupling vectors with entries uniform in [lo, hi].
inline Eigen::VectorXd random_couplings(std::mt19937_64& rng, Eigen::Index count, double lo = 0.1, double hi = 10.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    Eigen::VectorXd v(count);
    for (Eigen::Index i = 0; i < count; ++i) v(i) = dist(rng);
    return v;
}

// Null vector of a square matrix from a full SVD, independent of the
// symmetric eigensolver used by the library.
inline Eigen::VectorXd svd_null_vector(const Eigen::MatrixXd& m) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
    Eigen::VectorXd v = svd.matrixV().col(m.cols() - 1);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) > 1e-12) {
            if (v(i) < 0) v = -v;
            break;
        }
    }
    return v;
}

}  // namespace ctap::test
