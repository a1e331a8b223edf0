#include "ctap/robustness.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "ctap/adiabaticity.hpp"
#include "ctap/dark_state.hpp"
#include "ctap/errors.hpp"
#include "ctap/evolution.hpp"
#include "ctap/parallel.hpp"

namespace ctap {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Uniform in [0, 1) from the top 53 bits; avoids the library-specific
// behaviour of std::uniform_real_distribution.
double unit_uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

void DisorderSpec::validate() const {
    if (!(spread >= 1.0) || !std::isfinite(spread)) {
        throw DomainError("disorder spread must be >= 1");
    }
    if (samples < 1) {
        throw DomainError("disorder needs at least one sample");
    }
}

std::vector<double> disorder_factors(const DisorderSpec& disorder, std::size_t sample_index, std::size_t num_edges) {
    disorder.validate();
    std::mt19937_64 rng(splitmix64(disorder.seed ^ splitmix64(static_cast<std::uint64_t>(sample_index))));
    const double log_spread = std::log(disorder.spread);
    std::vector<double> factors(num_edges);
    for (auto& f : factors) {
        f = std::exp((2.0 * unit_uniform(rng) - 1.0) * log_spread);
    }
    return factors;
}

std::vector<DisorderSample> sample_disordered_run(const ChainSpec& spec, const PulseSchedule& schedule,
                                                  const DisorderSpec& disorder, const DisorderOptions& options) {
    disorder.validate();
    if (spec.num_sites() != schedule.num_sites()) {
        throw DimensionError("schedule and chain disagree on the number of sites");
    }

    std::size_t steps = options.steps;
    if (steps == 0) {
        std::vector<double> widest = schedule.scale_factors();
        for (auto& s : widest) s *= disorder.spread;
        steps = recommended_steps(schedule.with_scale_factors(widest));
    }

    const auto initial = site_state(spec.num_sites(), 1);
    PropagationOptions prop;
    prop.track_dark_state = false;
    prop.max_samples = 2;

    std::vector<DisorderSample> out(disorder.samples);
    detail::parallel_for(disorder.samples, options.threads, [&](std::size_t i) {
        DisorderSample& sample = out[i];
        sample.index = i;
        sample.factors = disorder_factors(disorder, i, schedule.num_couplings());
        try {
            std::vector<double> scales = schedule.scale_factors();
            for (std::size_t k = 0; k < scales.size(); ++k) scales[k] *= sample.factors[k];
            const auto disordered = schedule.with_scale_factors(std::move(scales));
            const ChainSpec chain = disordered.chain();

            const auto trace = propagate(chain, disordered, initial, steps, prop);
            const auto adiabatic = adiabaticity_trace(chain, disordered, options.adiabaticity_points);

            sample.dark_state_defined = true;
            for (double t : adiabatic.times) {
                try {
                    dark_state_amplitudes(evaluate(disordered, t));
                } catch (const DegenerateInputError&) {
                    sample.dark_state_defined = false;
                    break;
                }
            }
            sample.transfer_fidelity = trace.transfer_fidelity;
            sample.a_peak = adiabatic.a_peak;
            sample.ok = true;
        } catch (const Error& e) {
            sample.ok = false;
            sample.transfer_fidelity = std::numeric_limits<double>::quiet_NaN();
            sample.a_peak = std::numeric_limits<double>::quiet_NaN();
            sample.error = e.what();
        }
    });
    return out;
}

}  // namespace ctap
