#include "ctap/run_config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>

#include "ctap/adiabaticity.hpp"

namespace ctap::app {

namespace {

using nlohmann::json;

struct KindName {
    ExperimentKind kind;
    std::string_view name;
};

constexpr KindName kKindNames[] = {
    {ExperimentKind::Spectrum, "spectrum"},         {ExperimentKind::Evolve, "evolve"},
    {ExperimentKind::SweepTmax, "sweep-tmax"},      {ExperimentKind::Adiabaticity, "adiabaticity"},
    {ExperimentKind::Contrast, "contrast"},         {ExperimentKind::Disorder, "disorder"},
};

void expect_object(const json& node, const std::string& where, std::initializer_list<std::string_view> allowed) {
    if (!node.is_object()) {
        throw ConfigError("'" + where + "' must be an object");
    }
    for (const auto& item : node.items()) {
        if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
            throw ConfigError("unknown key '" + where + "." + item.key() + "'");
        }
    }
}

double get_number(const json& node, const std::string& where) {
    if (!node.is_number()) throw ConfigError("'" + where + "' must be a number");
    return node.get<double>();
}

std::uint64_t get_unsigned(const json& node, const std::string& where) {
    if (!node.is_number_unsigned()) {
        throw ConfigError("'" + where + "' must be a non-negative integer");
    }
    return node.get<std::uint64_t>();
}

std::vector<double> get_number_list(const json& node, const std::string& where) {
    if (!node.is_array()) throw ConfigError("'" + where + "' must be an array of numbers");
    std::vector<double> out;
    for (const auto& v : node) out.push_back(get_number(v, where + "[]"));
    return out;
}

void read_bounds(const json& node, const std::string& where, double& lo, double& hi) {
    expect_object(node, where, {"min", "max"});
    if (node.contains("min")) lo = get_number(node["min"], where + ".min");
    if (node.contains("max")) hi = get_number(node["max"], where + ".max");
}

void require(bool ok, const std::string& message) {
    if (!ok) throw ConfigError(message);
}

bool positive_finite(double v) { return v > 0.0 && std::isfinite(v); }

}  // namespace

std::string_view to_string(ExperimentKind kind) {
    for (const auto& kn : kKindNames) {
        if (kn.kind == kind) return kn.name;
    }
    return "unknown";
}

ExperimentKind parse_kind(std::string_view name) {
    for (const auto& kn : kKindNames) {
        if (kn.name == name) return kn.kind;
    }
    throw ConfigError("unknown experiment '" + std::string(name) + "'");
}

const std::vector<ExperimentKind>& all_kinds() {
    static const std::vector<ExperimentKind> kinds = [] {
        std::vector<ExperimentKind> k;
        for (const auto& kn : kKindNames) k.push_back(kn.kind);
        return k;
    }();
    return kinds;
}

double RunConfig::omega_max() const { return std::max(odd_max, even_max); }

double RunConfig::resolved_t_max() const {
    if (t_max) return *t_max;
    return required_tmax(omega_max(), a_target);
}

std::string RunConfig::resolved_out() const {
    if (!out.empty()) return out;
    return "ctap_" + std::string(to_string(kind)) + ".csv";
}

RunConfig config_from_json(const json& doc, RunConfig cfg) {
    expect_object(doc, "config",
                  {"experiment", "chain", "pulses", "integration", "sweep", "disorder", "seed", "output"});

    if (doc.contains("experiment")) {
        if (!doc["experiment"].is_string()) throw ConfigError("'experiment' must be a string");
        cfg.kind = parse_kind(doc["experiment"].get<std::string>());
    }
    if (doc.contains("chain")) {
        const auto& chain = doc["chain"];
        expect_object(chain, "chain", {"num_sites"});
        if (chain.contains("num_sites")) cfg.num_sites = get_unsigned(chain["num_sites"], "chain.num_sites");
    }
    if (doc.contains("pulses")) {
        const auto& p = doc["pulses"];
        expect_object(p, "pulses", {"t_max", "omega_max", "omega_min", "a_target", "odd", "even"});
        if (p.contains("omega_max")) cfg.odd_max = cfg.even_max = get_number(p["omega_max"], "pulses.omega_max");
        if (p.contains("omega_min")) cfg.odd_min = cfg.even_min = get_number(p["omega_min"], "pulses.omega_min");
        if (p.contains("odd")) read_bounds(p["odd"], "pulses.odd", cfg.odd_min, cfg.odd_max);
        if (p.contains("even")) read_bounds(p["even"], "pulses.even", cfg.even_min, cfg.even_max);
        if (p.contains("t_max")) cfg.t_max = get_number(p["t_max"], "pulses.t_max");
        if (p.contains("a_target")) cfg.a_target = get_number(p["a_target"], "pulses.a_target");
    }
    if (doc.contains("integration")) {
        const auto& in = doc["integration"];
        expect_object(in, "integration", {"steps", "samples", "threads"});
        if (in.contains("steps")) cfg.steps = get_unsigned(in["steps"], "integration.steps");
        if (in.contains("samples")) cfg.samples = get_unsigned(in["samples"], "integration.samples");
        if (in.contains("threads")) cfg.threads = static_cast<unsigned>(get_unsigned(in["threads"], "integration.threads"));
    }
    if (doc.contains("sweep")) {
        const auto& s = doc["sweep"];
        expect_object(s, "sweep", {"t_max", "omega_min"});
        if (s.contains("t_max")) cfg.tmax_grid = get_number_list(s["t_max"], "sweep.t_max");
        if (s.contains("omega_min")) cfg.omega_min_grid = get_number_list(s["omega_min"], "sweep.omega_min");
    }
    if (doc.contains("disorder")) {
        const auto& d = doc["disorder"];
        expect_object(d, "disorder", {"ratio", "samples"});
        if (d.contains("ratio")) cfg.disorder_spread = get_number(d["ratio"], "disorder.ratio");
        if (d.contains("samples")) cfg.disorder_samples = get_unsigned(d["samples"], "disorder.samples");
    }
    if (doc.contains("seed")) cfg.seed = get_unsigned(doc["seed"], "seed");
    if (doc.contains("output")) {
        if (!doc["output"].is_string()) throw ConfigError("'output' must be a string");
        cfg.out = doc["output"].get<std::string>();
    }
    return cfg;
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
    }
    return config_from_json(doc, std::move(base));
}

void validate(const RunConfig& c) {
    require(c.num_sites >= 3 && c.num_sites % 2 == 1, "num_sites must be odd and >= 3");
    require(c.odd_min >= 0.0 && c.odd_min <= c.odd_max && std::isfinite(c.odd_max),
            "odd pulse needs 0 <= omega_min <= omega_max");
    require(c.even_min >= 0.0 && c.even_min <= c.even_max && std::isfinite(c.even_max),
            "even pulse needs 0 <= omega_min <= omega_max");
    require(c.omega_max() > 0.0, "omega_max must be positive");
    require(c.a_target > 0.0 && c.a_target < 1.0, "a_target must lie in (0, 1)");
    if (c.t_max) require(positive_finite(*c.t_max), "t_max must be positive");
    if (c.steps) require(*c.steps >= 100, "steps must be >= 100");
    require(c.samples >= 2 && c.samples <= 2000, "samples must lie in [2, 2000]");
    require(c.threads >= 1, "threads must be >= 1");

    switch (c.kind) {
        case ExperimentKind::SweepTmax:
        case ExperimentKind::Adiabaticity:
            require(!c.tmax_grid.empty(), "t_max sweep grid must not be empty");
            for (double t : c.tmax_grid) require(positive_finite(t), "t_max sweep values must be positive");
            break;
        case ExperimentKind::Contrast:
            require(c.odd_max > 0.0 && c.even_max > 0.0, "contrast needs both pulse maxima positive");
            require(!c.omega_min_grid.empty(), "omega_min sweep grid must not be empty");
            for (double m : c.omega_min_grid) {
                require(m >= 0.0 && m <= std::min(c.odd_max, c.even_max),
                        "omega_min sweep values must lie in [0, min(odd max, even max)]");
            }
            break;
        case ExperimentKind::Disorder:
            require(c.disorder_spread >= 1.0 && std::isfinite(c.disorder_spread), "disorder ratio must be >= 1");
            require(c.disorder_samples >= 1, "disorder samples must be >= 1");
            break;
        default:
            break;
    }
    // The default t_max depends on a_target and omega_max, both checked above.
    require(positive_finite(c.resolved_t_max()), "t_max must be positive");
}

std::vector<std::string> csv_columns(ExperimentKind kind, std::size_t num_sites) {
    std::vector<std::string> cols;
    auto indexed = [&](const std::string& prefix, std::size_t count) {
        for (std::size_t i = 1; i <= count; ++i) cols.push_back(prefix + std::to_string(i));
    };
    switch (kind) {
        case ExperimentKind::Spectrum:
            cols.push_back("t_ns");
            indexed("E", num_sites);
            break;
        case ExperimentKind::Evolve:
            cols.push_back("t_ns");
            indexed("P", num_sites);
            cols.push_back("A_t");
            cols.push_back("D0_fidelity");
            break;
        case ExperimentKind::SweepTmax:
            cols = {"t_max_ns", "omega_max", "steps", "transfer_fidelity", "a_peak", "a_closed_form"};
            break;
        case ExperimentKind::Adiabaticity:
            cols = {"t_max_ns", "omega_max", "a_peak", "t_peak_ns", "a_closed_form", "a_peak_times_t_max"};
            break;
        case ExperimentKind::Contrast:
            cols = {"omega_min",        "omega_max",      "overlap_initial",  "overlap_final",
                    "fidelity_exact",   "fidelity_first_order", "error_first_order"};
            break;
        case ExperimentKind::Disorder:
            cols.push_back("sample");
            indexed("f", num_sites - 1);
            cols.push_back("ok");
            cols.push_back("transfer_fidelity");
            cols.push_back("a_peak");
            cols.push_back("dark_state_defined");
            break;
    }
    return cols;
}

std::string summary_path_for(const std::string& csv_path) {
    constexpr std::string_view ext = ".csv";
    if (csv_path.size() > ext.size() && csv_path.compare(csv_path.size() - ext.size(), ext.size(), ext) == 0) {
        return csv_path.substr(0, csv_path.size() - ext.size()) + ".json";
    }
    return csv_path + ".json";
}

}  // namespace ctap::app
