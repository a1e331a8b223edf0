#pragma once

#include <cmath>
#include <cstddef>
#include <string>

#include <Eigen/Dense>

#include "ctap/chain.hpp"
#include "ctap/errors.hpp"

namespace ctap {

/// Real amplitudes of the zero-energy state of an alternating chain.
///
/// Odd site 2j+1 (j = 0..n) carries
///   (-1)^j * prod_{i=j+1..n} Omega_{2i} * prod_{i=1..j} Omega_{2i-1}
/// and every even site is exactly zero. The products are formed without any
/// division so a vanishing coupling never produces inf/nan. Couplings are
/// first divided by their maximum; only ratios enter the state.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> dark_state_amplitudes(
    const Eigen::MatrixBase<Derived>& omegas) {
    using Scalar = typename Derived::Scalar;
    using std::sqrt;
    detail::check_couplings(omegas);

    const Eigen::Index n = omegas.size() / 2;
    const Eigen::Index sites = 2 * n + 1;
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> psi = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Zero(sites);

    const Scalar scale = omegas.maxCoeff();
    if (!(scale > Scalar(0))) {
        throw DegenerateInputError("dark state undefined: all couplings vanish");
    }
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> w = omegas / scale;

    // odd_prefix(j) = Omega_1 Omega_3 ... Omega_{2j-1}, even_suffix(j) = Omega_{2j+2} ... Omega_{2n}
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> odd_prefix(n + 1), even_suffix(n + 1);
    odd_prefix(0) = Scalar(1);
    for (Eigen::Index j = 1; j <= n; ++j) {
        odd_prefix(j) = odd_prefix(j - 1) * w(2 * j - 2);
    }
    even_suffix(n) = Scalar(1);
    for (Eigen::Index j = n - 1; j >= 0; --j) {
        even_suffix(j) = even_suffix(j + 1) * w(2 * j + 1);
    }

    for (Eigen::Index j = 0; j <= n; ++j) {
        const Scalar magnitude = odd_prefix(j) * even_suffix(j);
        psi(2 * j) = (j % 2 == 0) ? magnitude : -magnitude;
    }

    const Scalar norm = psi.norm();
    if (!(norm > Scalar(0))) {
        throw DegenerateInputError("dark state undefined: normalisation N vanishes for these couplings");
    }
    psi /= norm;

    for (Eigen::Index i = 0; i < sites; ++i) {
        if (psi(i) != Scalar(0)) {
            if (psi(i) < Scalar(0)) psi = -psi;
            break;
        }
    }
    return psi;
}

/// Normalised null state |D0> of the chain Hamiltonian for these couplings,
/// phase fixed so the first nonzero amplitude is positive real.
template <typename Derived>
StateVector<typename Derived::Scalar> dark_state(const Eigen::MatrixBase<Derived>& omegas) {
    using Scalar = typename Derived::Scalar;
    return dark_state_amplitudes(omegas).template cast<std::complex<Scalar>>();
}

/// |<site|D0>| for a site numbered from 1.
template <typename Derived>
typename Derived::Scalar dark_state_overlap(const Eigen::MatrixBase<Derived>& omegas, std::size_t site) {
    const auto sites = static_cast<std::size_t>(omegas.size()) + 1;
    if (site < 1 || site > sites) {
        throw DomainError("site " + std::to_string(site) + " outside 1.." + std::to_string(sites));
    }
    using std::abs;
    return abs(dark_state_amplitudes(omegas)(static_cast<Eigen::Index>(site - 1)));
}

}  // namespace ctap
