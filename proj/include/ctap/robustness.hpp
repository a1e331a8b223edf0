#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ctap/chain.hpp"
#include "ctap/pulses.hpp"

namespace ctap {

/// Static per-edge disorder: every coupling is multiplied by a factor drawn
/// log-uniformly from [1/spread, spread]. This is a stand-in for donor
/// placement straggle, not a fitted model.
struct DisorderSpec {
    double spread = 1.0;
    std::size_t samples = 1;
    std::uint64_t seed = 0;

    void validate() const;
};

struct DisorderOptions {
    /// 0 picks recommended_steps for the clean schedule with every edge at
    /// its largest possible factor.
    std::size_t steps = 0;
    std::size_t adiabaticity_points = 1001;
    unsigned threads = 1;
};

struct DisorderSample {
    std::size_t index = 0;
    std::vector<double> factors;
    bool ok = false;
    double transfer_fidelity = 0.0;
    double a_peak = 0.0;
    /// The analytic dark state was defined at every adiabaticity grid time.
    bool dark_state_defined = false;
    /// Empty unless the sample failed.
    std::string error;
};

/// Factors for one sample. The stream depends only on (seed, sample_index).
std::vector<double> disorder_factors(const DisorderSpec& disorder, std::size_t sample_index, std::size_t num_edges);

/// One propagation and one adiabaticity scan per sample. Failures are stored
/// in the sample instead of aborting the batch.
std::vector<DisorderSample> sample_disordered_run(const ChainSpec& spec, const PulseSchedule& schedule,
                                                  const DisorderSpec& disorder, const DisorderOptions& options = {});

}  // namespace ctap
