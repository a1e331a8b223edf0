#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "ctap/adiabaticity.hpp"
#include "ctap/contrast.hpp"
#include "ctap/csv.hpp"
#include "ctap/errors.hpp"
#include "ctap/evolution.hpp"
#include "ctap/parallel.hpp"
#include "ctap/robustness.hpp"
#include "ctap/run_config.hpp"
#include "ctap/spectrum.hpp"

namespace ctap::app {

namespace {

using nlohmann::json;

constexpr std::size_t kAdiabaticityPoints = 1001;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

PulseSchedule schedule_for(const RunConfig& c) {
    return PulseSchedule::counter_intuitive(c.num_sites, c.resolved_t_max(), c.odd_min, c.odd_max, c.even_min,
                                            c.even_max);
}

std::size_t steps_for(const RunConfig& c, const PulseSchedule& schedule) {
    return c.steps ? *c.steps : recommended_steps(schedule);
}

// JSON has no NaN; failed quantities become null.
json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json common_summary(const RunConfig& c) {
    return {
        {"experiment", std::string(to_string(c.kind))},
        {"num_sites", c.num_sites},
        {"t_max_ns", c.resolved_t_max()},
        {"omega_max", c.omega_max()},
        {"odd_pulse", {{"min", c.odd_min}, {"max", c.odd_max}}},
        {"even_pulse", {{"min", c.even_min}, {"max", c.even_max}}},
    };
}

io::Table run_spectrum(const RunConfig& c, json& summary) {
    const auto schedule = schedule_for(c);
    io::Table table{csv_columns(c.kind, c.num_sites), {}};
    double worst_zero = 0.0;
    double min_gap = std::numeric_limits<double>::infinity();
    for (double t : time_grid(schedule.t_max(), c.samples)) {
        const auto eigs = diagonalize(build_hamiltonian(evaluate(schedule, t)));
        std::vector<double> row{t};
        for (Eigen::Index k = 0; k < eigs.size(); ++k) row.push_back(eigs.eigenvalues(k));
        table.rows.push_back(std::move(row));
        worst_zero = std::max(worst_zero, eigs.eigenvalues.cwiseAbs().minCoeff());
        min_gap = std::min(min_gap, gap_to_nearest(eigs));
    }
    summary["max_abs_zero_branch"] = worst_zero;
    summary["min_gap"] = min_gap;
    return table;
}

io::Table run_evolve(const RunConfig& c, json& summary) {
    const auto schedule = schedule_for(c);
    const auto chain = schedule.chain();
    PropagationOptions options;
    options.max_samples = c.samples;
    const auto trace = propagate(chain, schedule, site_state(c.num_sites, 1), steps_for(c, schedule), options);

    io::Table table{csv_columns(c.kind, c.num_sites), {}};
    double max_even = 0.0;
    double min_d0 = 1.0;
    for (std::size_t r = 0; r < trace.times.size(); ++r) {
        const double t = trace.times[r];
        std::vector<double> row{t};
        for (Eigen::Index s = 0; s < trace.populations.cols(); ++s) {
            const double p = trace.populations(static_cast<Eigen::Index>(r), s);
            row.push_back(p);
            if (s % 2 == 1) max_even = std::max(max_even, p);
        }
        double a = kNaN;
        try {
            a = adiabaticity_general(chain, schedule, t);
        } catch (const DegenerateSpectrumError&) {
        } catch (const ProtocolStateError&) {
        }
        row.push_back(a);
        row.push_back(trace.dark_state_fidelity[r]);
        if (std::isfinite(trace.dark_state_fidelity[r])) min_d0 = std::min(min_d0, trace.dark_state_fidelity[r]);
        table.rows.push_back(std::move(row));
    }

    const auto adiabatic = adiabaticity_trace(chain, schedule, kAdiabaticityPoints);
    summary["steps"] = trace.steps;
    summary["transfer_fidelity"] = trace.transfer_fidelity;
    summary["a_peak"] = adiabatic.a_peak;
    summary["t_peak_ns"] = adiabatic.t_peak;
    summary["max_norm_drift"] = trace.max_norm_drift;
    summary["max_even_site_population"] = max_even;
    summary["min_dark_state_fidelity"] = min_d0;
    return table;
}

io::Table run_sweep_tmax(const RunConfig& c, json& summary) {
    const auto base = schedule_for(c);
    const auto chain = base.chain();
    const auto initial = site_state(c.num_sites, 1);
    std::vector<std::vector<double>> rows(c.tmax_grid.size());
    PropagationOptions options;
    options.track_dark_state = false;
    options.max_samples = 2;
    detail::parallel_for(c.tmax_grid.size(), c.threads, [&](std::size_t i) {
        const double t_max = c.tmax_grid[i];
        const auto schedule = base.with_t_max(t_max);
        const std::size_t steps = steps_for(c, schedule);
        const auto trace = propagate(chain, schedule, initial, steps, options);
        const auto adiabatic = adiabaticity_trace(chain, schedule, kAdiabaticityPoints);
        rows[i] = {t_max,
                   c.omega_max(),
                   static_cast<double>(steps),
                   trace.transfer_fidelity,
                   adiabatic.a_peak,
                   adiabaticity_peak_closed_form(c.omega_max(), t_max)};
    });
    summary["points"] = rows.size();
    return {csv_columns(c.kind, c.num_sites), std::move(rows)};
}

io::Table run_adiabaticity(const RunConfig& c, json& summary) {
    const auto base = schedule_for(c);
    const auto chain = base.chain();
    std::vector<std::vector<double>> rows(c.tmax_grid.size());
    detail::parallel_for(c.tmax_grid.size(), c.threads, [&](std::size_t i) {
        const double t_max = c.tmax_grid[i];
        const auto adiabatic = adiabaticity_trace(chain, base.with_t_max(t_max), kAdiabaticityPoints);
        rows[i] = {t_max,           c.omega_max(),
                   adiabatic.a_peak, adiabatic.t_peak,
                   adiabaticity_peak_closed_form(c.omega_max(), t_max), adiabatic.a_peak * t_max};
    });
    summary["a_target"] = c.a_target;
    summary["required_t_max_ns"] = required_tmax(c.omega_max(), c.a_target);
    return {csv_columns(c.kind, c.num_sites), std::move(rows)};
}

io::Table run_contrast(const RunConfig& c, json& summary) {
    io::Table table{csv_columns(c.kind, c.num_sites), {}};
    for (double m : c.omega_min_grid) {
        const ContrastSpec spec{m, c.odd_max, m, c.even_max};
        const auto f = contrast_fidelity(spec);
        table.rows.push_back({m, c.omega_max(), endpoint_overlap_initial(spec), endpoint_overlap_final(spec), f.exact,
                              f.first_order, f.first_order_error});
    }
    const ContrastSpec configured{c.odd_min, c.odd_max, c.even_min, c.even_max};
    const auto f = contrast_fidelity(configured);
    summary["overlap_initial"] = endpoint_overlap_initial(configured);
    summary["overlap_final"] = endpoint_overlap_final(configured);
    summary["fidelity_exact"] = f.exact;
    summary["fidelity_first_order"] = f.first_order;
    summary["error_first_order"] = f.first_order_error;
    return table;
}

io::Table run_disorder(const RunConfig& c, json& summary) {
    const auto schedule = schedule_for(c);
    const DisorderSpec disorder{c.disorder_spread, c.disorder_samples, c.seed};
    DisorderOptions options;
    options.steps = c.steps.value_or(0);
    options.adiabaticity_points = kAdiabaticityPoints;
    options.threads = c.threads;
    const auto samples = sample_disordered_run(schedule.chain(), schedule, disorder, options);

    io::Table table{csv_columns(c.kind, c.num_sites), {}};
    double min_f = 1.0;
    double sum_f = 0.0;
    std::size_t ok = 0;
    bool dark_everywhere = true;
    json errors = json::array();
    for (const auto& s : samples) {
        std::vector<double> row{static_cast<double>(s.index)};
        row.insert(row.end(), s.factors.begin(), s.factors.end());
        row.push_back(s.ok ? 1.0 : 0.0);
        row.push_back(s.transfer_fidelity);
        row.push_back(s.a_peak);
        row.push_back(s.dark_state_defined ? 1.0 : 0.0);
        table.rows.push_back(std::move(row));
        if (s.ok) {
            ++ok;
            min_f = std::min(min_f, s.transfer_fidelity);
            sum_f += s.transfer_fidelity;
            dark_everywhere = dark_everywhere && s.dark_state_defined;
        } else {
            errors.push_back({{"sample", s.index}, {"error", s.error}});
        }
    }
    summary["distribution"] = "log-uniform per-edge factors (surrogate for placement straggle)";
    summary["ratio"] = c.disorder_spread;
    summary["samples"] = c.disorder_samples;
    summary["seed"] = c.seed;
    summary["succeeded"] = ok;
    summary["min_transfer_fidelity"] = number_or_null(ok ? min_f : kNaN);
    summary["mean_transfer_fidelity"] = number_or_null(ok ? sum_f / static_cast<double>(ok) : kNaN);
    summary["dark_state_defined_for_all"] = dark_everywhere;
    summary["failures"] = errors;
    return table;
}

}  // namespace

RunResult run(const RunConfig& config) {
    validate(config);
    RunResult result;
    result.csv_path = config.resolved_out();
    result.summary_path = summary_path_for(result.csv_path);
    result.summary = common_summary(config);

    io::Table table;
    switch (config.kind) {
        case ExperimentKind::Spectrum: table = run_spectrum(config, result.summary); break;
        case ExperimentKind::Evolve: table = run_evolve(config, result.summary); break;
        case ExperimentKind::SweepTmax: table = run_sweep_tmax(config, result.summary); break;
        case ExperimentKind::Adiabaticity: table = run_adiabaticity(config, result.summary); break;
        case ExperimentKind::Contrast: table = run_contrast(config, result.summary); break;
        case ExperimentKind::Disorder: table = run_disorder(config, result.summary); break;
    }

    io::write_csv(result.csv_path, table);
    std::ofstream out(result.summary_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + result.summary_path + "' for writing");
    out << result.summary.dump(2) << '\n';
    return result;
}

}  // namespace ctap::app
