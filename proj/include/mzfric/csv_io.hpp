#pragma once

#include "mzfric/kernel.hpp"
#include "mzfric/trajectory.hpp"
#include "mzfric/verify.hpp"

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <vector>

namespace mzfric {

// All writers emit a header row and 17 significant digits.

// tau, L0_1, L0_2, L1_1, L1_2
void write_kernel_csv(std::ostream& out, const KernelTable& table);

// t, y1, y2, fc, phase (0 = slip, 1 = stick)
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

// step, t, kind, force_gap, slip_force_limit
void write_events_csv(std::ostream& out, const Trajectory& traj);

// N, gap, stick_phases (gap empty when the run never sticks)
void write_gap_csv(std::ostream& out, const std::vector<GapPoint>& gaps);

// Opens `path` (creating parent directories) and runs `writer` on it.
// Throws std::runtime_error when the file cannot be written.
void write_file(const std::filesystem::path& path, const std::function<void(std::ostream&)>& writer);

}  // namespace mzfric
