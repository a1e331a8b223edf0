#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ctap/errors.hpp"

namespace ctap {

template <typename Scalar>
using CouplingVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using HamiltonianSnapshot = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using StateVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

/// Lower and upper tunnelling matrix element of one edge, in ns^-1.
struct CouplingBounds {
    double omega_min = 0.0;
    double omega_max = 0.0;
};

/// An odd-length chain with 2n+1 sites and 2n nearest-neighbour couplings.
///
/// Couplings are indexed from 0: coupling k joins site k+1 and site k+2
/// (sites numbered from 1). Even k belong to the odd-numbered group
/// Omega_1, Omega_3, ...; odd k to Omega_2, Omega_4, ...
class ChainSpec {
public:
    ChainSpec(std::size_t n_half, std::vector<CouplingBounds> bounds)
        : n_half_(n_half), bounds_(std::move(bounds)) {
        if (n_half_ < 1) {
            throw DomainError("chain needs n >= 1 (at least 3 sites)");
        }
        if (bounds_.size() != 2 * n_half_) {
            throw DimensionError("chain with " + std::to_string(num_sites()) + " sites needs " +
                                 std::to_string(2 * n_half_) + " coupling bounds, got " +
                                 std::to_string(bounds_.size()));
        }
        bool any_on = false;
        for (const auto& b : bounds_) {
            if (!(b.omega_min >= 0.0) || !(b.omega_max >= b.omega_min) || !std::isfinite(b.omega_max)) {
                throw DomainError("coupling bounds must satisfy 0 <= omega_min <= omega_max < inf");
            }
            any_on = any_on || b.omega_max > 0.0;
        }
        if (!any_on) {
            throw DomainError("at least one coupling must have omega_max > 0");
        }
    }

    /// Every edge shares the same bounds.
    static ChainSpec uniform(std::size_t num_sites, double omega_min, double omega_max) {
        if (num_sites < 3 || num_sites % 2 == 0) {
            throw DomainError("number of sites must be odd and >= 3, got " + std::to_string(num_sites));
        }
        return ChainSpec((num_sites - 1) / 2,
                         std::vector<CouplingBounds>(num_sites - 1, CouplingBounds{omega_min, omega_max}));
    }

    /// Separate bounds for the odd group (Omega_1, Omega_3, ...) and the even
    /// group (Omega_2, Omega_4, ...).
    static ChainSpec alternating(std::size_t num_sites, CouplingBounds odd, CouplingBounds even) {
        if (num_sites < 3 || num_sites % 2 == 0) {
            throw DomainError("number of sites must be odd and >= 3, got " + std::to_string(num_sites));
        }
        std::vector<CouplingBounds> bounds(num_sites - 1);
        for (std::size_t k = 0; k < bounds.size(); ++k) {
            bounds[k] = (k % 2 == 0) ? odd : even;
        }
        return ChainSpec((num_sites - 1) / 2, std::move(bounds));
    }

    std::size_t n_half() const { return n_half_; }
    std::size_t num_sites() const { return 2 * n_half_ + 1; }
    std::size_t num_couplings() const { return 2 * n_half_; }
    const std::vector<CouplingBounds>& coupling_bounds() const { return bounds_; }

private:
    std::size_t n_half_;
    std::vector<CouplingBounds> bounds_;
};

namespace detail {

template <typename Derived>
void check_couplings(const Eigen::MatrixBase<Derived>& omegas) {
    const auto m = omegas.size();
    if (m < 2 || m % 2 != 0) {
        throw DimensionError("coupling vector must have an even length >= 2, got " + std::to_string(m));
    }
    for (Eigen::Index k = 0; k < m; ++k) {
        const auto v = omegas(k);
        if (!(v >= 0) || !std::isfinite(static_cast<double>(v))) {
            throw DomainError("coupling " + std::to_string(k) + " must be finite and non-negative");
        }
    }
}

}  // namespace detail

/// Tridiagonal tight-binding Hamiltonian with degenerate (zero) on-site
/// energies and off-diagonal k equal to omegas(k).
template <typename Derived>
HamiltonianSnapshot<typename Derived::Scalar> build_hamiltonian(const Eigen::MatrixBase<Derived>& omegas) {
    using Scalar = typename Derived::Scalar;
    detail::check_couplings(omegas);
    const Eigen::Index n = omegas.size() + 1;
    HamiltonianSnapshot<Scalar> h = HamiltonianSnapshot<Scalar>::Zero(n, n);
    for (Eigen::Index k = 0; k + 1 < n; ++k) {
        h(k, k + 1) = omegas(k);
        h(k + 1, k) = omegas(k);
    }
    return h;
}

template <typename Derived>
HamiltonianSnapshot<typename Derived::Scalar> build_hamiltonian(const ChainSpec& spec,
                                                                const Eigen::MatrixBase<Derived>& omegas) {
    if (static_cast<std::size_t>(omegas.size()) != spec.num_couplings()) {
        throw DimensionError("chain with " + std::to_string(spec.num_sites()) + " sites needs " +
                             std::to_string(spec.num_couplings()) + " couplings, got " +
                             std::to_string(omegas.size()));
    }
    return build_hamiltonian(omegas);
}

/// Position eigenstate |site>, sites numbered from 1.
template <typename Scalar = double>
StateVector<Scalar> site_state(std::size_t num_sites, std::size_t site) {
    if (site < 1 || site > num_sites) {
        throw DomainError("site " + std::to_string(site) + " outside 1.." + std::to_string(num_sites));
    }
    StateVector<Scalar> psi = StateVector<Scalar>::Zero(static_cast<Eigen::Index>(num_sites));
    psi(static_cast<Eigen::Index>(site - 1)) = Scalar(1);
    return psi;
}

}  // namespace ctap
