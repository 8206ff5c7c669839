#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <vector>

namespace mzfric {

enum class Phase : std::uint8_t { slip = 0, stick = 1 };

enum class EventKind { stick_on, stick_off };

struct PhaseEvent {
    std::size_t step = 0;  // sample index into the trajectory
    EventKind kind = EventKind::stick_on;
    double time = 0.0;
    // stick_on only: |stick force at onset - slip_force_limit|
    double force_gap = 0.0;
    double slip_force_limit = 0.0;
};

// Resolved-variable time series.  Sample q holds the state y(t_q), the
// contact force applied over [t_q, t_q + dt) and the phase in effect there.
struct Trajectory {
    double dt = 0.0;
    std::vector<double> times;
    std::vector<Eigen::Vector2d> y;
    std::vector<double> fc;
    std::vector<Phase> phase;
    std::vector<PhaseEvent> events;

    std::size_t size() const { return times.size(); }
    std::size_t stick_phase_count() const;
    // Index into `events` of the first event of `kind`, or events.size().
    std::size_t first_event(EventKind kind) const;

    void reserve(std::size_t n);
    void push(double t, const Eigen::Vector2d& state, double force, Phase p);
};

struct TrajectoryComparison {
    // sup_t |a - ref| / sup_t |ref| per component
    double rel_error_y1 = 0.0;
    double rel_error_y2 = 0.0;
    double abs_error_y1 = 0.0;
    double abs_error_y2 = 0.0;
    std::size_t samples = 0;

    double worst() const { return rel_error_y1 > rel_error_y2 ? rel_error_y1 : rel_error_y2; }
};

// Compares samples with matching times (to 1e-9 dt) over the common prefix.
// Throws std::invalid_argument if the time grids disagree.
TrajectoryComparison compare_trajectories(const Trajectory& a, const Trajectory& reference);

}  // namespace mzfric
