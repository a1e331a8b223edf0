#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ctap/chain.hpp"
#include "ctap/errors.hpp"
#include "ctap/pulses.hpp"
#include "ctap/spectrum.hpp"

namespace ctap {

/// Smallest zero-mode gap accepted by the adiabaticity parameter, ns^-1.
inline constexpr double kDegenerateGapCutoff = 1e-12;

/// A = |<D+| dH/dt |D0>| / (E+ - E0)^2 for the given couplings and their
/// time derivatives. |D0> is the zero mode, |D+> the eigenstate with the
/// smallest positive eigenvalue. dH/dt is the chain Hamiltonian built from
/// the rates, since H is linear in the couplings.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar adiabaticity_from_couplings(const Eigen::MatrixBase<DerivedA>& omegas,
                                                      const Eigen::MatrixBase<DerivedB>& rates) {
    using Scalar = typename DerivedA::Scalar;
    using std::abs;
    if (omegas.size() != rates.size()) {
        throw DimensionError("coupling and rate vectors differ in length");
    }
    const auto eigs = diagonalize(build_hamiltonian(omegas));
    const Eigen::Index zero = zero_mode_index(eigs);
    const Eigen::Index plus = positive_neighbour_index(eigs);
    const Scalar gap = eigs.eigenvalues(plus) - eigs.eigenvalues(zero);
    if (!(gap > Scalar(kDegenerateGapCutoff))) {
        throw DegenerateSpectrumError("zero-mode gap below cutoff");
    }

    // dH/dt has the same tridiagonal pattern; rates may be negative so the
    // matrix is assembled directly rather than through build_hamiltonian.
    const Eigen::Index n = omegas.size() + 1;
    const auto& d0 = eigs.eigenvectors.col(zero);
    const auto& dp = eigs.eigenvectors.col(plus);
    Scalar element = 0;
    for (Eigen::Index k = 0; k + 1 < n; ++k) {
        element += rates(k) * (dp(k) * d0(k + 1) + dp(k + 1) * d0(k));
    }
    return abs(element) / (gap * gap);
}

/// Adiabaticity parameter of a schedule at time t.
inline double adiabaticity_general(const ChainSpec& spec, const PulseSchedule& schedule, double t) {
    if (spec.num_sites() != schedule.num_sites()) {
        throw DimensionError("schedule drives " + std::to_string(schedule.num_sites()) + " sites, chain has " +
                             std::to_string(spec.num_sites()));
    }
    return adiabaticity_from_couplings(evaluate(schedule, t), evaluate_derivative(schedule, t));
}

struct AdiabaticityTrace {
    std::vector<double> times;
    std::vector<double> a_values;
    double a_peak = 0.0;
    double t_peak = 0.0;
};

/// A(t) on a uniform grid of `points` times over [0, t_max].
inline AdiabaticityTrace adiabaticity_trace(const ChainSpec& spec, const PulseSchedule& schedule,
                                            std::size_t points = 1001) {
    AdiabaticityTrace trace;
    trace.times = time_grid(schedule.t_max(), points);
    trace.a_values.reserve(points);
    for (double t : trace.times) {
        const double a = adiabaticity_general(spec, schedule, t);
        if (trace.a_values.empty() || a > trace.a_peak) {
            trace.a_peak = a;
            trace.t_peak = t;
        }
        trace.a_values.push_back(a);
    }
    return trace;
}

/// Peak adiabaticity of the ideal symmetric schedule, reached where the two
/// pulses cross: 4 pi / (sqrt(3) Omega_max t_max).
template <typename Scalar>
Scalar adiabaticity_peak_closed_form(Scalar omega_max, Scalar t_max) {
    using std::sqrt;
    if (!(omega_max > Scalar(0)) || !(t_max > Scalar(0))) {
        throw DomainError("omega_max and t_max must be positive");
    }
    return Scalar(4) * std::numbers::pi_v<Scalar> / (sqrt(Scalar(3)) * omega_max * t_max);
}

/// Protocol time that brings the peak adiabaticity down to a_target.
template <typename Scalar>
Scalar required_tmax(Scalar omega_max, Scalar a_target) {
    using std::sqrt;
    if (!(omega_max > Scalar(0))) {
        throw DomainError("omega_max must be positive");
    }
    if (!(a_target > Scalar(0) && a_target < Scalar(1))) {
        throw DomainError("target adiabaticity must lie in (0, 1)");
    }
    return Scalar(4) * std::numbers::pi_v<Scalar> / (sqrt(Scalar(3)) * omega_max * a_target);
}

}  // namespace ctap
