// Command-line front end: one subcommand per experiment kind. Values from
// --config are loaded first; explicit flags override them.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ctap/errors.hpp"
#include "ctap/run_config.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

struct Flags {
    std::string config_path;
    std::optional<std::size_t> sites;
    std::optional<double> omega_max;
    std::optional<double> omega_min;
    std::optional<double> odd_min, odd_max, even_min, even_max;
    std::optional<double> t_max;
    std::optional<double> a_target;
    std::optional<std::size_t> steps;
    std::optional<std::size_t> samples;
    std::optional<unsigned> threads;
    std::vector<double> tmax_grid;
    std::vector<double> omega_min_grid;
    std::optional<double> ratio;
    std::optional<std::size_t> disorder_samples;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
};

void add_flags(CLI::App& app, Flags& f) {
    app.add_option("-c,--config", f.config_path, "JSON run configuration")->check(CLI::ExistingFile);
    app.add_option("--sites", f.sites, "number of sites (odd, >= 3)");
    app.add_option("--omega-max", f.omega_max, "maximum coupling of both pulses, ns^-1");
    app.add_option("--omega-min", f.omega_min, "minimum coupling of both pulses, ns^-1");
    app.add_option("--odd-min", f.odd_min, "floor of the Omega_1, Omega_3, ... pulse");
    app.add_option("--odd-max", f.odd_max, "ceiling of the Omega_1, Omega_3, ... pulse");
    app.add_option("--even-min", f.even_min, "floor of the Omega_2, Omega_4, ... pulse");
    app.add_option("--even-max", f.even_max, "ceiling of the Omega_2, Omega_4, ... pulse");
    app.add_option("--t-max", f.t_max, "protocol duration, ns (default: meets --a-target)");
    app.add_option("--a-target", f.a_target, "target peak adiabaticity");
    app.add_option("--steps", f.steps, "integration steps (default: 20 per unit of Omega_max*t_max)");
    app.add_option("--samples", f.samples, "output samples / spectrum grid points (<= 2000)");
    app.add_option("--threads", f.threads, "worker threads for sweeps");
    app.add_option("--tmax-grid", f.tmax_grid, "t_max values for sweep-tmax and adiabaticity")->delimiter(',');
    app.add_option("--omega-min-grid", f.omega_min_grid, "floor values for contrast")->delimiter(',');
    app.add_option("--ratio", f.ratio, "disorder spread r, factors in [1/r, r]");
    app.add_option("--disorder-samples", f.disorder_samples, "number of disorder samples");
    app.add_option("--seed", f.seed, "random seed");
    app.add_option("-o,--out", f.out, "output CSV path; summary goes next to it as .json");
}

ctap::app::RunConfig build_config(ctap::app::ExperimentKind kind, const Flags& f) {
    ctap::app::RunConfig cfg;
    if (!f.config_path.empty()) cfg = ctap::app::load_config_file(f.config_path, cfg);
    cfg.kind = kind;
    if (f.sites) cfg.num_sites = *f.sites;
    if (f.omega_max) cfg.odd_max = cfg.even_max = *f.omega_max;
    if (f.omega_min) cfg.odd_min = cfg.even_min = *f.omega_min;
    if (f.odd_min) cfg.odd_min = *f.odd_min;
    if (f.odd_max) cfg.odd_max = *f.odd_max;
    if (f.even_min) cfg.even_min = *f.even_min;
    if (f.even_max) cfg.even_max = *f.even_max;
    if (f.t_max) cfg.t_max = *f.t_max;
    if (f.a_target) cfg.a_target = *f.a_target;
    if (f.steps) cfg.steps = *f.steps;
    if (f.samples) cfg.samples = *f.samples;
    if (f.threads) cfg.threads = *f.threads;
    if (!f.tmax_grid.empty()) cfg.tmax_grid = f.tmax_grid;
    if (!f.omega_min_grid.empty()) cfg.omega_min_grid = f.omega_min_grid;
    if (f.ratio) cfg.disorder_spread = *f.ratio;
    if (f.disorder_samples) cfg.disorder_samples = *f.disorder_samples;
    if (f.seed) cfg.seed = *f.seed;
    if (f.out) cfg.out = *f.out;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Adiabatic passage along alternating-coupling chains"};
    app.require_subcommand(1);

    Flags flags;
    std::vector<std::pair<CLI::App*, ctap::app::ExperimentKind>> commands;
    const std::pair<ctap::app::ExperimentKind, const char*> descriptions[] = {
        {ctap::app::ExperimentKind::Spectrum, "instantaneous eigenvalues over the protocol"},
        {ctap::app::ExperimentKind::Evolve, "site populations, A(t) and dark-state fidelity"},
        {ctap::app::ExperimentKind::SweepTmax, "transfer fidelity for each t_max"},
        {ctap::app::ExperimentKind::Adiabaticity, "peak adiabaticity for each t_max"},
        {ctap::app::ExperimentKind::Contrast, "endpoint overlaps and fidelity with imperfect nulling"},
        {ctap::app::ExperimentKind::Disorder, "fidelity under random per-edge coupling factors"},
    };
    for (const auto& [kind, text] : descriptions) {
        auto* sub = app.add_subcommand(std::string(ctap::app::to_string(kind)), text);
        add_flags(*sub, flags);
        commands.emplace_back(sub, kind);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        for (const auto& [sub, kind] : commands) {
            if (!sub->parsed()) continue;
            const auto result = ctap::app::run(build_config(kind, flags));
            std::cout << result.csv_path << '\n' << result.summary_path << '\n';
        }
    } catch (const ctap::app::ConfigError& e) {
        std::cerr << "ctap: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ctap::Error& e) {
        std::cerr << "ctap: numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "ctap: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
