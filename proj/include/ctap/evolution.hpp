#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ctap/chain.hpp"
#include "ctap/pulses.hpp"

namespace ctap {

/// Norm drift above which propagation is abandoned.
inline constexpr double kMaxNormDrift = 1e-6;

/// Couplings as a function of time, t in [0, t_max].
using CouplingProtocol = std::function<Eigen::VectorXd(double)>;

struct PropagationOptions {
    /// Upper bound on the number of output samples (endpoints included).
    std::size_t max_samples = 2000;
    /// Record |<D0(t)|psi(t)>|^2 at every sample.
    bool track_dark_state = true;
};

struct EvolutionTrace {
    std::vector<double> times;
    /// One row per sample, one column per site.
    Eigen::MatrixXd populations;
    StateVector<double> state_final;
    /// Final population of site 2n+1.
    double transfer_fidelity = 0.0;
    /// NaN at samples where the dark state is undefined or not tracked.
    std::vector<double> dark_state_fidelity;
    /// Largest | ||psi|| - 1 | seen at any sample.
    double max_norm_drift = 0.0;
    std::size_t steps = 0;
};

/// Integrates i dpsi/dt = H(t) psi on a uniform grid of `steps` steps with a
/// fourth-order commutator-free Magnus scheme. Each step is a product of two
/// exponentials of real symmetric matrices, so the map is unitary up to
/// rounding. Throws IntegratorError if the norm drifts by more than
/// kMaxNormDrift.
EvolutionTrace propagate(const ChainSpec& spec, const CouplingProtocol& couplings, double t_max,
                         const StateVector<double>& initial, std::size_t steps,
                         const PropagationOptions& options = {});

EvolutionTrace propagate(const ChainSpec& spec, const PulseSchedule& schedule, const StateVector<double>& initial,
                         std::size_t steps, const PropagationOptions& options = {});

/// Step count giving at least 20 steps per unit of (peak coupling * t_max),
/// never fewer than 100.
std::size_t recommended_steps(const PulseSchedule& schedule);

/// Final fidelity for each t_max, reusing `schedule_template` with only t_max
/// changed and starting from |1>. Runs are independent and may execute on
/// `threads` workers; the result order follows `tmax_list`.
std::vector<std::pair<double, double>> transfer_fidelity_vs_tmax(const ChainSpec& spec,
                                                                 const PulseSchedule& schedule_template,
                                                                 const std::vector<double>& tmax_list,
                                                                 unsigned threads = 1);

}  // namespace ctap
