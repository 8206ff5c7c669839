#include "mzfric/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mzfric {

std::size_t Trajectory::stick_phase_count() const {
    return static_cast<std::size_t>(std::count_if(events.begin(), events.end(), [](const PhaseEvent& e) {
        return e.kind == EventKind::stick_on;
    }));
}

std::size_t Trajectory::first_event(EventKind kind) const {
    const auto it = std::find_if(events.begin(), events.end(), [&](const PhaseEvent& e) { return e.kind == kind; });
    return static_cast<std::size_t>(it - events.begin());
}

void Trajectory::reserve(std::size_t n) {
    times.reserve(n);
    y.reserve(n);
    fc.reserve(n);
    phase.reserve(n);
}

void Trajectory::push(double t, const Eigen::Vector2d& state, double force, Phase p) {
    times.push_back(t);
    y.push_back(state);
    fc.push_back(force);
    phase.push_back(p);
}

TrajectoryComparison compare_trajectories(const Trajectory& a, const Trajectory& reference) {
    const std::size_t n = std::min(a.size(), reference.size());
    if (n == 0) throw std::invalid_argument("cannot compare empty trajectories");
    const double tol = 1e-9 * std::max(a.dt, reference.dt);
    double d1 = 0.0, d2 = 0.0, r1 = 0.0, r2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(a.times[i] - reference.times[i]) > tol) {
            throw std::invalid_argument("trajectory time grids do not match");
        }
        d1 = std::max(d1, std::abs(a.y[i][0] - reference.y[i][0]));
        d2 = std::max(d2, std::abs(a.y[i][1] - reference.y[i][1]));
        r1 = std::max(r1, std::abs(reference.y[i][0]));
        r2 = std::max(r2, std::abs(reference.y[i][1]));
    }
    TrajectoryComparison c;
    c.samples = n;
    c.abs_error_y1 = d1;
    c.abs_error_y2 = d2;
    c.rel_error_y1 = r1 > 0.0 ? d1 / r1 : d1;
    c.rel_error_y2 = r2 > 0.0 ? d2 / r2 : d2;
    return c;
}

}  // namespace mzfric
