#pragma once

#include <cmath>
#include <utility>

#include "ctap/errors.hpp"

namespace ctap {

/// Floors and ceilings of the two global pulses, ns^-1.
struct ContrastSpec {
    double omega1_min = 0.0;
    double omega1_max = 0.0;
    double omega2_min = 0.0;
    double omega2_max = 0.0;

    void validate() const {
        if (!(omega1_min >= 0.0 && omega1_min <= omega1_max) || !(omega2_min >= 0.0 && omega2_min <= omega2_max)) {
            throw DomainError("contrast bounds must satisfy 0 <= min <= max");
        }
        if (!(omega1_max > 0.0 && omega2_max > 0.0)) {
            throw DomainError("contrast maxima must be positive");
        }
    }

    /// Roles of the odd and even pulses exchanged.
    ContrastSpec swapped() const { return {omega2_min, omega2_max, omega1_min, omega1_max}; }
};

namespace detail {

// big^2 / sqrt(small^4 + big^4 + small^2 big^2), written in the ratio r = small/big.
inline double endpoint_overlap(double small, double big) {
    const double r2 = (small / big) * (small / big);
    return 1.0 / std::sqrt(1.0 + r2 + r2 * r2);
}

}  // namespace detail

/// <1|D0(t=0)> when the odd pulse cannot be switched fully off.
inline double endpoint_overlap_initial(const ContrastSpec& c) {
    c.validate();
    return detail::endpoint_overlap(c.omega1_min, c.omega2_max);
}

/// <D0(t=t_max)|2n+1> when the even pulse cannot be switched fully off.
inline double endpoint_overlap_final(const ContrastSpec& c) {
    c.validate();
    return detail::endpoint_overlap(c.omega2_min, c.omega1_max);
}

struct ContrastFidelity {
    /// |<2n+1|D0(t_max)> <D0(0)|1>|^2 from the unexpanded overlaps.
    double exact = 1.0;
    /// 1 - Omega1min^2 Omega2min^2 / (8 Omega1max^2 Omega2max^2).
    double first_order = 1.0;
    /// Omega1min^2 Omega2min^2 / (8 Omega1max^2 Omega2max^2), kept separately
    /// so tiny error rates do not cancel against 1.
    double first_order_error = 0.0;

    double exact_error() const { return 1.0 - exact; }
};

inline ContrastFidelity contrast_fidelity(const ContrastSpec& c) {
    c.validate();
    const double product = endpoint_overlap_initial(c) * endpoint_overlap_final(c);
    const double r1 = c.omega1_min / c.omega1_max;
    const double r2 = c.omega2_min / c.omega2_max;
    const double error = (r1 * r1 * r2 * r2) / 8.0;
    return {product * product, 1.0 - error, error};
}

}  // namespace ctap
