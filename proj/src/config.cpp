#include "mzfric/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace mzfric {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double to_double(const std::string& v) {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument("not a number: " + v);
    return d;
}

std::uint64_t to_unsigned(const std::string& v) {
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) throw std::invalid_argument("not a count: " + v);
    return out;
}

std::vector<std::size_t> to_list(const std::string& v) {
    std::vector<std::size_t> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(static_cast<std::size_t>(to_unsigned(trim(item))));
    return out;
}

using Setter = std::function<void(ExperimentConfig&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table{
        {"kind", [](ExperimentConfig& c, const std::string& v) { c.kind = v; }},
        {"c", [](ExperimentConfig& c, const std::string& v) { c.c = to_double(v); }},
        {"damping", [](ExperimentConfig& c, const std::string& v) { c.damping = to_double(v); }},
        {"xi_star", [](ExperimentConfig& c, const std::string& v) { c.xi_star = to_double(v); }},
        {"mode_count", [](ExperimentConfig& c, const std::string& v) { c.mode_count = to_unsigned(v); }},
        {"mu", [](ExperimentConfig& c, const std::string& v) { c.law.mu = to_double(v); }},
        {"kappa", [](ExperimentConfig& c, const std::string& v) { c.law.kappa = to_double(v); }},
        {"sigma", [](ExperimentConfig& c, const std::string& v) { c.law.sigma = to_double(v); }},
        {"v0", [](ExperimentConfig& c, const std::string& v) { c.law.v0 = to_double(v); }},
        {"y1_0", [](ExperimentConfig& c, const std::string& v) { c.y1_0 = to_double(v); }},
        {"y2_0", [](ExperimentConfig& c, const std::string& v) { c.y2_0 = to_double(v); }},
        {"T", [](ExperimentConfig& c, const std::string& v) { c.T = to_double(v); }},
        {"dt", [](ExperimentConfig& c, const std::string& v) { c.dt = to_double(v); }},
        {"full_dt", [](ExperimentConfig& c, const std::string& v) { c.full_dt = to_double(v); }},
        {"engine", [](ExperimentConfig& c, const std::string& v) { c.engine = parse_engine(v); }},
        {"output", [](ExperimentConfig& c, const std::string& v) { c.output = v; }},
        {"gap_modes", [](ExperimentConfig& c, const std::string& v) { c.gap_modes = to_list(v); }},
        {"kernel_T", [](ExperimentConfig& c, const std::string& v) { c.kernel_T = to_double(v); }},
        {"kernel_dt", [](ExperimentConfig& c, const std::string& v) { c.kernel_dt = to_double(v); }},
        {"seed", [](ExperimentConfig& c, const std::string& v) { c.seed = to_unsigned(v); }},
        {"verify_systems", [](ExperimentConfig& c, const std::string& v) { c.verify_systems = to_unsigned(v); }},
        {"threshold_mz", [](ExperimentConfig& c, const std::string& v) { c.threshold_mz = to_double(v); }},
        {"threshold_expm", [](ExperimentConfig& c, const std::string& v) { c.threshold_expm = to_double(v); }},
        {"threshold_compare", [](ExperimentConfig& c, const std::string& v) { c.threshold_compare = to_double(v); }},
        {"threshold_holder_beta",
         [](ExperimentConfig& c, const std::string& v) { c.threshold_holder_beta = to_double(v); }},
        {"threshold_gap_ratio",
         [](ExperimentConfig& c, const std::string& v) { c.threshold_gap_ratio = to_double(v); }},
    };
    return table;
}

}  // namespace

void ExperimentConfig::validate() const {
    if (kind != "string" && kind != "beam") throw std::invalid_argument("kind must be string or beam");
    if (mode_count < 1) throw std::invalid_argument("mode_count must be at least 1");
    if (!(dt > 0.0) || !(T > dt)) throw std::invalid_argument("need dt > 0 and T > dt");
    if (!(full_dt > 0.0)) throw std::invalid_argument("full_dt must be positive");
    if (!(kernel_dt > 0.0) || !(kernel_T > kernel_dt)) {
        throw std::invalid_argument("need kernel_dt > 0 and kernel_T > kernel_dt");
    }
    if (gap_modes.empty()) throw std::invalid_argument("gap_modes must not be empty");
    for (std::size_t i = 0; i < gap_modes.size(); ++i) {
        if (gap_modes[i] < 1 || (i > 0 && gap_modes[i] <= gap_modes[i - 1])) {
            throw std::invalid_argument("gap_modes must be strictly ascending and positive");
        }
    }
    if (output.empty()) throw std::invalid_argument("output must name a directory");
    law.validate();
}

ModalStructure ExperimentConfig::structure() const { return structure(mode_count); }

ModalStructure ExperimentConfig::structure(std::size_t modes) const {
    if (kind == "beam") return build_beam(damping, modes);
    if (kind == "string") return build_string(c, damping, xi_star, modes);
    throw std::invalid_argument("unknown structure kind: " + kind);
}

Engine parse_engine(const std::string& name) {
    if (name == "reduced") return Engine::reduced;
    if (name == "full") return Engine::full;
    if (name == "both") return Engine::both;
    throw std::invalid_argument("engine must be reduced, full or both (got " + name + ")");
}

std::string engine_name(Engine e) {
    switch (e) {
        case Engine::reduced: return "reduced";
        case Engine::full: return "full";
        case Engine::both: return "both";
    }
    return "both";
}

ExperimentConfig parse_config(std::istream& in, ExperimentConfig base) {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto it = setters().find(key);
        if (it == setters().end()) {
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
        try {
            it->second(base, value);
        } catch (const std::exception& e) {
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": bad value for '" + key +
                                        "': " + e.what());
        }
    }
    return base;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path.string());
    return parse_config(in);
}

void write_config(std::ostream& out, const ExperimentConfig& cfg) {
    const auto flags = out.flags();
    const auto prec = out.precision();
    out << std::setprecision(17);
    out << "kind = " << cfg.kind << "\n"
        << "c = " << cfg.c << "\n"
        << "damping = " << cfg.damping << "\n"
        << "xi_star = " << cfg.xi_star << "\n"
        << "mode_count = " << cfg.mode_count << "\n"
        << "mu = " << cfg.law.mu << "\n"
        << "kappa = " << cfg.law.kappa << "\n"
        << "sigma = " << cfg.law.sigma << "\n"
        << "v0 = " << cfg.law.v0 << "\n"
        << "y1_0 = " << cfg.y1_0 << "\n"
        << "y2_0 = " << cfg.y2_0 << "\n"
        << "T = " << cfg.T << "\n"
        << "dt = " << cfg.dt << "\n"
        << "full_dt = " << cfg.full_dt << "\n"
        << "engine = " << engine_name(cfg.engine) << "\n"
        << "output = " << cfg.output << "\n"
        << "gap_modes = ";
    for (std::size_t i = 0; i < cfg.gap_modes.size(); ++i) out << (i ? "," : "") << cfg.gap_modes[i];
    out << "\n"
        << "kernel_T = " << cfg.kernel_T << "\n"
        << "kernel_dt = " << cfg.kernel_dt << "\n"
        << "seed = " << cfg.seed << "\n"
        << "verify_systems = " << cfg.verify_systems << "\n"
        << "threshold_mz = " << cfg.threshold_mz << "\n"
        << "threshold_expm = " << cfg.threshold_expm << "\n"
        << "threshold_compare = " << cfg.threshold_compare << "\n"
        << "threshold_holder_beta = " << cfg.threshold_holder_beta << "\n"
        << "threshold_gap_ratio = " << cfg.threshold_gap_ratio << "\n";
    out.flags(flags);
    out.precision(prec);
}

}  // namespace mzfric
