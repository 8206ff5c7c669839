#pragma once

#include "mzfric/config.hpp"
#include "mzfric/trajectory.hpp"
#include "mzfric/verify.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace mzfric {

struct KernelExport {
    std::filesystem::path path;
    std::optional<double> holder;  // empty when L1 is not positive on the fit window
    std::optional<double> jump;
    double linf = 0.0;
};

// Writes kernel.csv for the configured structure on the kernel_dt grid up to kernel_T.
KernelExport run_kernel_export(const ExperimentConfig& cfg, const std::filesystem::path& out_dir);

struct EngineRuns {
    std::optional<Trajectory> reduced;
    std::optional<Trajectory> full;
};

// Runs the engines selected by cfg.engine.  The full model starts from the
// lifted initial state and records every dt so both share a grid.
EngineRuns run_engines(const ExperimentConfig& cfg);

// run_engines plus trajectory_<engine>.csv and events_<engine>.csv.
EngineRuns run_simulate(const ExperimentConfig& cfg, const std::filesystem::path& out_dir);

struct CompareSummary {
    TrajectoryComparison comparison;
    std::size_t reduced_stick_phases = 0;
    std::size_t full_stick_phases = 0;
    double reduced_plateau_deviation = 0.0;  // max |y2 - v0| over stick samples
    double full_plateau_deviation = 0.0;
};

CompareSummary summarize(const Trajectory& reduced, const Trajectory& full, double v0);

// Both engines, their CSVs, and compare.txt.
CompareSummary run_compare(const ExperimentConfig& cfg, const std::filesystem::path& out_dir);

struct CheckResult {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool pass = false;
    std::string detail;
};

// suite: mz | expm | holder | gap | all.
std::vector<CheckResult> run_verify(const ExperimentConfig& cfg, const std::string& suite);

// Strictly decreasing gaps and gap(last) < ratio * gap(first).
CheckResult check_gap_table(const std::vector<GapPoint>& gaps, double ratio);

// figure5_reduced.csv, figure5_full.csv, figure5_gap.csv (plus event files).
struct Figure5Result {
    Trajectory reduced;
    Trajectory full;
    std::vector<GapPoint> gaps;
};

Figure5Result run_figure5(const ExperimentConfig& cfg, const std::filesystem::path& out_dir);

}  // namespace mzfric
