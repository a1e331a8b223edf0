#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace ctap::app {

enum class ExperimentKind { Spectrum, Evolve, SweepTmax, Adiabaticity, Contrast, Disorder };

std::string_view to_string(ExperimentKind kind);
/// Accepts the subcommand spellings: spectrum, evolve, sweep-tmax, ...
ExperimentKind parse_kind(std::string_view name);
const std::vector<ExperimentKind>& all_kinds();

/// Invalid or inconsistent run configuration (maps to exit status 2).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Everything one CLI invocation needs. Defaults reproduce the five-site
/// headline case: Omega_max = 10 ns^-1 on both pulses, target adiabaticity
/// 0.01 (which fixes t_max when it is not given).
struct RunConfig {
    ExperimentKind kind = ExperimentKind::Evolve;

    std::size_t num_sites = 5;

    double odd_min = 0.0;
    double odd_max = 10.0;
    double even_min = 0.0;
    double even_max = 10.0;
    std::optional<double> t_max;
    double a_target = 0.01;

    std::optional<std::size_t> steps;
    /// Output samples for evolve and grid points for spectrum.
    std::size_t samples = 2000;
    unsigned threads = 1;

    std::vector<double> tmax_grid{7.0, 14.0, 35.0, 70.0, 140.0, 350.0, 700.0};
    std::vector<double> omega_min_grid{0.0, 0.1, 0.5, 1.0, 3.0};

    double disorder_spread = 2.0;
    std::size_t disorder_samples = 100;
    std::uint64_t seed = 0;

    std::string out;

    /// Larger of the two pulse maxima.
    double omega_max() const;
    /// Configured t_max, or the time that meets a_target at omega_max().
    double resolved_t_max() const;
    /// Configured output path, or ctap_<kind>.csv.
    std::string resolved_out() const;
};

/// Overlays the keys present in `doc` onto `base`. Unknown keys are errors.
///
/// Recognised layout (every key optional):
///   experiment: "evolve" | "spectrum" | ...
///   chain:       { num_sites }
///   pulses:      { t_max, omega_max, omega_min, a_target,
///                  odd: { min, max }, even: { min, max } }
///   integration: { steps, samples, threads }
///   sweep:       { t_max: [..], omega_min: [..] }
///   disorder:    { ratio, samples }
///   seed, output
RunConfig config_from_json(const nlohmann::json& doc, RunConfig base = {});
RunConfig load_config_file(const std::string& path, RunConfig base = {});

/// Throws ConfigError describing the first violated constraint.
void validate(const RunConfig& config);

/// Header row of the CSV written for `kind`.
std::vector<std::string> csv_columns(ExperimentKind kind, std::size_t num_sites);

/// foo.csv -> foo.json; anything else gets ".json" appended.
std::string summary_path_for(const std::string& csv_path);

struct RunResult {
    std::string csv_path;
    std::string summary_path;
    nlohmann::json summary;
};

/// Validates, runs the experiment and writes the CSV plus JSON summary.
/// Numerical failures surface as ctap::Error.
RunResult run(const RunConfig& config);

}  // namespace ctap::app
