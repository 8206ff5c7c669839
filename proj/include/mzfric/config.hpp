#pragma once

#include "mzfric/friction.hpp"
#include "mzfric/modal_model.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace mzfric {

enum class Engine { reduced, full, both };

// Flat `key = value` run description; `#` starts a comment.  Defaults are
// the bowed-string setup (c = 1, D = 0.1, xi* = 0.4, N = 160).
struct ExperimentConfig {
    // structure
    std::string kind = "string";  // string | beam
    double c = 1.0;
    double damping = 0.1;
    double xi_star = 0.4;
    std::size_t mode_count = 160;
    // friction law
    FrictionLaw law;
    // run
    double y1_0 = -2.9224;
    double y2_0 = -2.7668;
    double T = 8.0;
    double dt = 5e-4;
    double full_dt = 1e-4;
    Engine engine = Engine::both;
    std::string output = ".";
    std::vector<std::size_t> gap_modes{20, 40, 80, 160};
    // kernel export
    double kernel_T = 4.0;
    double kernel_dt = 1e-3;
    // verification
    std::uint64_t seed = 1;
    std::size_t verify_systems = 20;
    double threshold_mz = 1e-6;
    double threshold_expm = 1e-10;
    double threshold_compare = 2e-2;
    double threshold_holder_beta = 0.8;
    double threshold_gap_ratio = 0.5;

    // Throws std::invalid_argument on inconsistent values.
    void validate() const;

    ModalStructure structure() const;
    ModalStructure structure(std::size_t modes) const;
    Eigen::Vector2d y0() const { return {y1_0, y2_0}; }
};

Engine parse_engine(const std::string& name);
std::string engine_name(Engine e);

// Applies the assignments in `in` on top of `base`.  Unknown keys and
// malformed values throw std::invalid_argument naming the line.
ExperimentConfig parse_config(std::istream& in, ExperimentConfig base = {});
ExperimentConfig load_config(const std::filesystem::path& path);

// Writes every key; parse_config reads it back to an equal config.
void write_config(std::ostream& out, const ExperimentConfig& cfg);

}  // namespace mzfric
