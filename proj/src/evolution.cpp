#include "ctap/evolution.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "ctap/dark_state.hpp"
#include "ctap/errors.hpp"
#include "ctap/parallel.hpp"

namespace ctap {

namespace {

// Gauss-Legendre nodes on [0, 1] and the commutator-free weights that pair
// with them for a fourth-order Magnus step.
const double kGaussLow = 0.5 - std::sqrt(3.0) / 6.0;
const double kGaussHigh = 0.5 + std::sqrt(3.0) / 6.0;
const double kWeightSmall = (3.0 - 2.0 * std::sqrt(3.0)) / 12.0;
const double kWeightLarge = (3.0 + 2.0 * std::sqrt(3.0)) / 12.0;

class MagnusStepper {
public:
    explicit MagnusStepper(Eigen::Index sites) : diag_(Eigen::VectorXd::Zero(sites)) {}

    // psi <- exp(-i * generator) psi for the tridiagonal generator with zero
    // diagonal and off-diagonal `offdiag`.
    void apply(const Eigen::VectorXd& offdiag, StateVector<double>& psi) {
        solver_.computeFromTridiagonal(diag_, offdiag, Eigen::ComputeEigenvectors);
        if (solver_.info() != Eigen::Success) {
            throw IntegratorError("tridiagonal eigensolver did not converge");
        }
        const Eigen::MatrixXd& v = solver_.eigenvectors();
        const Eigen::VectorXd& lambda = solver_.eigenvalues();
        const Eigen::VectorXd re = v.transpose() * psi.real();
        const Eigen::VectorXd im = v.transpose() * psi.imag();
        const Eigen::ArrayXd c = lambda.array().cos();
        const Eigen::ArrayXd s = lambda.array().sin();
        const Eigen::VectorXd new_re = (c * re.array() + s * im.array()).matrix();
        const Eigen::VectorXd new_im = (c * im.array() - s * re.array()).matrix();
        psi.real() = v * new_re;
        psi.imag() = v * new_im;
    }

private:
    Eigen::VectorXd diag_;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver_;
};

// Step indices at which the state is recorded: both endpoints plus an even
// spread in between, at most max_samples in total.
std::vector<std::size_t> sample_indices(std::size_t steps, std::size_t max_samples) {
    const std::size_t count = std::max<std::size_t>(2, std::min(steps + 1, max_samples));
    std::vector<std::size_t> idx(count);
    for (std::size_t i = 0; i < count; ++i) {
        idx[i] = static_cast<std::size_t>((static_cast<unsigned long long>(i) * steps) / (count - 1));
    }
    return idx;
}

Eigen::VectorXd checked_couplings(const CouplingProtocol& couplings, double t, std::size_t expected) {
    Eigen::VectorXd omegas = couplings(t);
    if (static_cast<std::size_t>(omegas.size()) != expected) {
        throw DimensionError("coupling protocol returned " + std::to_string(omegas.size()) + " couplings, expected " +
                             std::to_string(expected));
    }
    detail::check_couplings(omegas);
    return omegas;
}

}  // namespace

EvolutionTrace propagate(const ChainSpec& spec, const CouplingProtocol& couplings, double t_max,
                         const StateVector<double>& initial, std::size_t steps, const PropagationOptions& options) {
    const auto sites = static_cast<Eigen::Index>(spec.num_sites());
    if (initial.size() != sites) {
        throw DimensionError("initial state has " + std::to_string(initial.size()) + " amplitudes, chain has " +
                             std::to_string(sites) + " sites");
    }
    if (std::abs(initial.norm() - 1.0) > 1e-12) {
        throw DomainError("initial state must be normalised");
    }
    if (steps < 100) {
        throw DomainError("propagation needs at least 100 steps, got " + std::to_string(steps));
    }
    if (!(t_max > 0.0) || !std::isfinite(t_max)) {
        throw DomainError("t_max must be positive and finite");
    }
    if (options.max_samples < 2) {
        throw DomainError("at least two output samples are required");
    }

    const auto samples = sample_indices(steps, options.max_samples);
    EvolutionTrace trace;
    trace.steps = steps;
    trace.times.reserve(samples.size());
    trace.populations.resize(static_cast<Eigen::Index>(samples.size()), sites);
    trace.dark_state_fidelity.reserve(samples.size());

    const double h = t_max / static_cast<double>(steps);
    const std::size_t edges = spec.num_couplings();
    StateVector<double> psi = initial;
    MagnusStepper stepper(sites);

    auto record = [&](std::size_t row, double t) {
        const double drift = std::abs(psi.norm() - 1.0);
        trace.max_norm_drift = std::max(trace.max_norm_drift, drift);
        if (!(drift <= kMaxNormDrift)) {
            throw IntegratorError("norm drifted by " + std::to_string(drift) + " at t = " + std::to_string(t) +
                                  " ns; step count too small");
        }
        trace.times.push_back(t);
        trace.populations.row(static_cast<Eigen::Index>(row)) = psi.cwiseAbs2().transpose();
        double overlap = std::numeric_limits<double>::quiet_NaN();
        if (options.track_dark_state) {
            try {
                const auto d0 = dark_state_amplitudes(checked_couplings(couplings, t, edges));
                overlap = std::norm(d0.cast<std::complex<double>>().dot(psi));
            } catch (const DegenerateInputError&) {
            }
        }
        trace.dark_state_fidelity.push_back(overlap);
    };

    std::size_t next_sample = 0;
    for (std::size_t step = 0;; ++step) {
        if (next_sample < samples.size() && samples[next_sample] == step) {
            const double t = (step == steps) ? t_max : h * static_cast<double>(step);
            record(next_sample, t);
            ++next_sample;
        }
        if (step == steps) break;

        const double t0 = h * static_cast<double>(step);
        const Eigen::VectorXd early = checked_couplings(couplings, t0 + kGaussLow * h, edges);
        const Eigen::VectorXd late = checked_couplings(couplings, t0 + kGaussHigh * h, edges);
        // The right-hand exponential acts first and leans on the early node.
        stepper.apply(h * (kWeightLarge * early + kWeightSmall * late), psi);
        stepper.apply(h * (kWeightSmall * early + kWeightLarge * late), psi);
    }

    trace.state_final = psi;
    trace.transfer_fidelity = std::norm(psi(sites - 1));
    return trace;
}

EvolutionTrace propagate(const ChainSpec& spec, const PulseSchedule& schedule, const StateVector<double>& initial,
                         std::size_t steps, const PropagationOptions& options) {
    if (spec.num_sites() != schedule.num_sites()) {
        throw DimensionError("schedule drives " + std::to_string(schedule.num_sites()) + " sites, chain has " +
                             std::to_string(spec.num_sites()));
    }
    return propagate(
        spec, [&schedule](double t) { return evaluate(schedule, t); }, schedule.t_max(), initial, steps, options);
}

std::size_t recommended_steps(const PulseSchedule& schedule) {
    // The relative slack keeps products like 10 * 70 that round to
    // 700.0000000001 from adding a step.
    const double cycles = schedule.peak_coupling() * schedule.t_max() * (1.0 - 1e-9);
    if (!(20.0 * cycles <= 1e10)) {
        throw IntegratorError("peak coupling * t_max too large for a fixed-step integration");
    }
    return std::max<std::size_t>(100, static_cast<std::size_t>(std::ceil(20.0 * cycles)));
}

std::vector<std::pair<double, double>> transfer_fidelity_vs_tmax(const ChainSpec& spec,
                                                                 const PulseSchedule& schedule_template,
                                                                 const std::vector<double>& tmax_list,
                                                                 unsigned threads) {
    if (tmax_list.empty()) {
        throw DomainError("t_max list must not be empty");
    }
    for (double t : tmax_list) {
        if (!(t > 0.0) || !std::isfinite(t)) {
            throw DomainError("every t_max must be positive and finite");
        }
    }
    std::vector<std::pair<double, double>> out(tmax_list.size());
    const auto initial = site_state(spec.num_sites(), 1);
    PropagationOptions options;
    options.track_dark_state = false;
    options.max_samples = 2;
    detail::parallel_for(tmax_list.size(), threads, [&](std::size_t i) {
        const auto schedule = schedule_template.with_t_max(tmax_list[i]);
        const auto trace = propagate(spec, schedule, initial, recommended_steps(schedule), options);
        out[i] = {tmax_list[i], trace.transfer_fidelity};
    });
    return out;
}

}  // namespace ctap
