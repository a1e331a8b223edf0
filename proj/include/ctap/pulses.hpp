#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ctap/chain.hpp"
#include "ctap/errors.hpp"

namespace ctap {

/// Rising follows sin^2(pi t / 2 t_max), Falling follows cos^2(pi t / 2 t_max).
enum class PulseShape { Rising, Falling };

struct PulseSpec {
    double omega_min = 0.0;
    double omega_max = 0.0;
    PulseShape shape = PulseShape::Rising;
};

/// Counter-intuitive schedule for an alternating chain: one global pulse
/// drives every odd-numbered coupling (Omega_1, Omega_3, ...), another every
/// even-numbered coupling, each edge multiplied by a static scale factor.
class PulseSchedule {
public:
    PulseSchedule(std::size_t num_sites, double t_max, PulseSpec odd_pulse, PulseSpec even_pulse,
                  std::vector<double> scale_factors = {})
        : num_sites_(num_sites),
          t_max_(t_max),
          odd_(odd_pulse),
          even_(even_pulse),
          scales_(std::move(scale_factors)) {
        if (num_sites_ < 3 || num_sites_ % 2 == 0) {
            throw DomainError("number of sites must be odd and >= 3, got " + std::to_string(num_sites_));
        }
        if (!(t_max_ > 0.0) || !std::isfinite(t_max_)) {
            throw DomainError("t_max must be positive and finite");
        }
        for (const PulseSpec* p : {&odd_, &even_}) {
            if (!(p->omega_min >= 0.0) || !(p->omega_max >= p->omega_min) || !std::isfinite(p->omega_max)) {
                throw DomainError("pulse bounds must satisfy 0 <= omega_min <= omega_max < inf");
            }
        }
        if (!(odd_.omega_max > 0.0 || even_.omega_max > 0.0)) {
            throw DomainError("at least one pulse needs omega_max > 0");
        }
        if (scales_.empty()) {
            scales_.assign(num_sites_ - 1, 1.0);
        }
        if (scales_.size() != num_sites_ - 1) {
            throw DimensionError("expected " + std::to_string(num_sites_ - 1) + " scale factors, got " +
                                 std::to_string(scales_.size()));
        }
        for (double s : scales_) {
            if (!(s >= 0.0) || !std::isfinite(s)) {
                throw DomainError("scale factors must be finite and non-negative");
            }
        }
    }

    /// sin^2 on the odd group and cos^2 on the even group, with floors.
    static PulseSchedule counter_intuitive(std::size_t num_sites, double t_max, double odd_min, double odd_max,
                                           double even_min, double even_max) {
        return PulseSchedule(num_sites, t_max, {odd_min, odd_max, PulseShape::Rising},
                             {even_min, even_max, PulseShape::Falling});
    }

    /// Both groups swing between 0 and omega_max.
    static PulseSchedule ideal(std::size_t num_sites, double t_max, double omega_max) {
        return counter_intuitive(num_sites, t_max, 0.0, omega_max, 0.0, omega_max);
    }

    std::size_t num_sites() const { return num_sites_; }
    std::size_t num_couplings() const { return num_sites_ - 1; }
    double t_max() const { return t_max_; }
    const PulseSpec& odd_pulse() const { return odd_; }
    const PulseSpec& even_pulse() const { return even_; }
    const std::vector<double>& scale_factors() const { return scales_; }

    const PulseSpec& pulse_for_edge(std::size_t k) const { return (k % 2 == 0) ? odd_ : even_; }

    /// Largest coupling any edge reaches during the schedule.
    double peak_coupling() const {
        double peak = 0.0;
        for (std::size_t k = 0; k < scales_.size(); ++k) {
            peak = std::max(peak, pulse_for_edge(k).omega_max * scales_[k]);
        }
        return peak;
    }

    PulseSchedule with_t_max(double t_max) const {
        return PulseSchedule(num_sites_, t_max, odd_, even_, scales_);
    }

    PulseSchedule with_scale_factors(std::vector<double> scale_factors) const {
        return PulseSchedule(num_sites_, t_max_, odd_, even_, std::move(scale_factors));
    }

    /// Omega'(t) = Omega(t_max - t): each pulse shape flips, scales stay on their edges.
    PulseSchedule time_reversed() const {
        auto flip = [](PulseSpec p) {
            p.shape = (p.shape == PulseShape::Rising) ? PulseShape::Falling : PulseShape::Rising;
            return p;
        };
        return PulseSchedule(num_sites_, t_max_, flip(odd_), flip(even_), scales_);
    }

    /// Chain whose per-edge bounds are the scaled pulse bounds.
    ChainSpec chain() const {
        std::vector<CouplingBounds> bounds(num_couplings());
        for (std::size_t k = 0; k < bounds.size(); ++k) {
            const auto& p = pulse_for_edge(k);
            bounds[k] = {p.omega_min * scales_[k], p.omega_max * scales_[k]};
        }
        return ChainSpec((num_sites_ - 1) / 2, std::move(bounds));
    }

private:
    std::size_t num_sites_;
    double t_max_;
    PulseSpec odd_;
    PulseSpec even_;
    std::vector<double> scales_;
};

namespace detail {

inline void check_time(const PulseSchedule& schedule, double t) {
    if (!(t >= 0.0 && t <= schedule.t_max())) {
        throw DomainError("time " + std::to_string(t) + " ns outside [0, " + std::to_string(schedule.t_max()) +
                          "]");
    }
}

// Half-angle forms keep the endpoints exact: rising(0) = 0, falling(t_max) = 0.
inline double pulse_profile(PulseShape shape, double phase) {
    const double c = std::cos(phase);
    return shape == PulseShape::Rising ? 0.5 * (1.0 - c) : 0.5 * (1.0 + c);
}

inline double pulse_profile_rate(PulseShape shape, double phase, double t_max) {
    const double r = std::numbers::pi / (2.0 * t_max) * std::sin(phase);
    return shape == PulseShape::Rising ? r : -r;
}

}  // namespace detail

/// Couplings Omega(t) for every edge.
inline Eigen::VectorXd evaluate(const PulseSchedule& schedule, double t) {
    detail::check_time(schedule, t);
    const double phase = std::numbers::pi * (t / schedule.t_max());
    Eigen::VectorXd omegas(static_cast<Eigen::Index>(schedule.num_couplings()));
    for (std::size_t k = 0; k < schedule.num_couplings(); ++k) {
        const auto& p = schedule.pulse_for_edge(k);
        const double value = p.omega_min + (p.omega_max - p.omega_min) * detail::pulse_profile(p.shape, phase);
        omegas(static_cast<Eigen::Index>(k)) = value * schedule.scale_factors()[k];
    }
    return omegas;
}

/// dOmega/dt for every edge, in ns^-2.
inline Eigen::VectorXd evaluate_derivative(const PulseSchedule& schedule, double t) {
    detail::check_time(schedule, t);
    const double phase = std::numbers::pi * (t / schedule.t_max());
    Eigen::VectorXd rates(static_cast<Eigen::Index>(schedule.num_couplings()));
    for (std::size_t k = 0; k < schedule.num_couplings(); ++k) {
        const auto& p = schedule.pulse_for_edge(k);
        const double rate = (p.omega_max - p.omega_min) * detail::pulse_profile_rate(p.shape, phase, schedule.t_max());
        rates(static_cast<Eigen::Index>(k)) = rate * schedule.scale_factors()[k];
    }
    return rates;
}

/// Uniform grid of `points` times spanning [0, t_max] inclusive.
inline std::vector<double> time_grid(double t_max, std::size_t points) {
    if (points < 2) {
        throw DomainError("time grid needs at least 2 points");
    }
    std::vector<double> grid(points);
    for (std::size_t i = 0; i < points; ++i) {
        grid[i] = t_max * (static_cast<double>(i) / static_cast<double>(points - 1));
    }
    return grid;
}

}  // namespace ctap
