#include "mzfric/reduced_sim.hpp"

#include "mzfric/history.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

namespace mzfric {

namespace {

std::size_t step_count(double T, double dt) {
    if (!(dt > 0.0) || !(T > 0.0)) throw std::invalid_argument("simulation needs T > 0 and dt > 0");
    const auto q = std::llround(T / dt);
    if (q < 1) throw std::invalid_argument("simulation needs T >= dt");
    return static_cast<std::size_t>(q);
}

void check_horizon(const ReducedModel& m, std::size_t q) {
    if (m.weights.empty() || q > m.max_step()) {
        throw std::out_of_range("step " + std::to_string(q) + " lies beyond the kernel table horizon");
    }
}

Eigen::Vector2d advance(const ReducedModel& m, const Eigen::Vector2d& y, double f, double f_prev, double memory) {
    Eigen::Vector2d rate = m.A * y;
    rate[1] += m.linf * f + m.weights[0] * (f - f_prev) + memory;
    return y + m.dt() * rate;
}

double implicit_force(const ReducedModel& m, const Eigen::Vector2d& y, double f_prev, double memory) {
    const double den = m.linf + m.weights[0];
    if (den == 0.0 || !std::isfinite(den)) {
        throw SingularityError("stick force undefined: L_inf + W_0 vanishes");
    }
    return (m.weights[0] * f_prev - (m.A * y)[1] - memory) / den;
}

double memory_unchecked(const ReducedModel& m, std::size_t q, const ForceHistory& hist, bool parallel) {
    if (q == 0) return 0.0;
    const double conv = parallel ? history_convolution(m.weights, hist.increments(), q)
                                 : history_convolution_serial(m.weights, hist.increments(), q);
    return conv + m.weights[q] * hist[0];
}

}  // namespace

ReducedModel make_reduced_model(const ModalStructure& s, double dt, double horizon_time) {
    const std::size_t steps = step_count(horizon_time, dt);
    return make_reduced_model(reduced_A(s).a, build_kernel_table(s, dt, static_cast<double>(steps + 1) * dt));
}

ReducedModel make_reduced_model(const Eigen::Matrix2d& A, KernelTable table) {
    if (table.horizon < 1) throw std::invalid_argument("kernel table needs at least two samples");
    ReducedModel m;
    m.A = A;
    m.linf = table.Linf[1];
    m.l1_jump = table.L1_jump;
    m.weights.resize(table.horizon);
    for (std::size_t j = 0; j < table.horizon; ++j) {
        m.weights[j] = (table.L1[j + 1][1] - table.L1[j][1]) / table.dt;
    }
    m.table = std::move(table);
    return m;
}

void ForceHistory::reserve(std::size_t n) {
    f_.reserve(n);
    df_.reserve(n);
}

void ForceHistory::push(double f) {
    if (!f_.empty()) df_.push_back(f - f_.back());
    f_.push_back(f);
}

void ForceHistory::clear() {
    f_.clear();
    df_.clear();
}

double memory_term(const ReducedModel& m, std::size_t q, const ForceHistory& hist, bool parallel) {
    check_horizon(m, q);
    if (hist.size() < q) throw std::invalid_argument("force history shorter than step index");
    return memory_unchecked(m, q, hist, parallel);
}

Eigen::Vector2d step_slip(const ReducedModel& m, std::size_t q, const ForceHistory& hist,
                          const Eigen::Vector2d& y) {
    if (hist.size() < q + 1) throw std::invalid_argument("step_slip needs f_0..f_q");
    const double memory = memory_term(m, q, hist);
    const double f_prev = q > 0 ? hist[q - 1] : 0.0;
    return advance(m, y, hist[q], f_prev, memory);
}

double stick_force(const ReducedModel& m, std::size_t q, const ForceHistory& hist, const Eigen::Vector2d& y) {
    const double memory = memory_term(m, q, hist);
    const double f_prev = q > 0 ? hist[q - 1] : 0.0;
    return implicit_force(m, y, f_prev, memory);
}

double stick_force_rate(const ReducedModel& m, const Eigen::Vector2d& y, double f, double memory) {
    if (!m.l1_jump || *m.l1_jump == 0.0) {
        throw std::invalid_argument("stick force rate needs a kernel with a jump at 0");
    }
    return -((m.A * y)[1] + m.linf * f + memory) / *m.l1_jump;
}

std::vector<double> integrate_stick_force_by_rate(const ReducedModel& m, const Trajectory& traj,
                                                  std::size_t event_index) {
    if (event_index >= traj.events.size() || traj.events[event_index].kind != EventKind::stick_on) {
        throw std::invalid_argument("event index does not name a stick onset");
    }
    const PhaseEvent& onset = traj.events[event_index];
    const std::size_t first = onset.step;
    std::size_t last = first;
    while (last < traj.size() && traj.phase[last] == Phase::stick) ++last;

    ForceHistory hist;
    hist.reserve(last);
    for (std::size_t q = 0; q < first; ++q) hist.push(traj.fc[q]);
    hist.push(onset.slip_force_limit);

    std::vector<double> out{onset.slip_force_limit};
    for (std::size_t q = first + 1; q < last; ++q) {
        const double memory = memory_term(m, q, hist);
        const double f_prev = hist[q - 1];
        const double f = f_prev + m.dt() * stick_force_rate(m, traj.y[q], f_prev, memory);
        hist.push(f);
        out.push_back(f);
    }
    return out;
}

Trajectory simulate(const ReducedModel& m, const FrictionLaw& law, const Eigen::Vector2d& y0, double T,
                    const ReducedOptions& options) {
    law.validate();
    if (!y0.allFinite()) throw std::invalid_argument("initial state must be finite");
    const double dt = m.dt();
    const std::size_t steps = step_count(T, dt);
    check_horizon(m, steps);

    const double tol_h = 1e-9 * std::max(1.0, std::abs(law.v0));
    Trajectory traj;
    traj.dt = dt;
    traj.reserve(steps + 1);
    ForceHistory hist;
    hist.reserve(steps + 1);

    Eigen::Vector2d y = y0;
    bool stick = false;
    for (std::size_t q = 0; q <= steps; ++q) {
        const double t = static_cast<double>(q) * dt;
        if (!y.allFinite()) {
            std::ostringstream msg;
            msg << "reduced simulation diverged at step " << q << " (t = " << t << ")";
            throw std::runtime_error(msg.str());
        }
        const double memory = memory_unchecked(m, q, hist, options.parallel_history);
        const double f_prev = q > 0 ? hist[q - 1] : 0.0;
        const bool last = q == steps;

        if (stick) {
            const double f = implicit_force(m, y, f_prev, memory);
            if (stick_admissible(f, law)) {
                traj.push(t, y, f, Phase::stick);
                hist.push(f);
                if (!last) {
                    y = advance(m, y, f, f_prev, memory);
                    y[1] = law.v0;
                }
                continue;
            }
            stick = false;
            const double f_exit = std::clamp(f, -law.mu, law.mu);
            traj.events.push_back({traj.size(), EventKind::stick_off, t, 0.0, 0.0});
            traj.push(t, y, f_exit, Phase::slip);
            hist.push(f_exit);
            if (!last) y = advance(m, y, f_exit, f_prev, memory);
            continue;
        }

        const double h = switching_h(y, law);
        const double f_slip = slip_contact_force(h, law);
        const Eigen::Vector2d y_slip = advance(m, y, f_slip, f_prev, memory);
        const bool crossing = h * switching_h(y_slip, law) <= 0.0 || std::abs(h) < tol_h;
        if (crossing) {
            const Eigen::Vector2d y_snap(y[0], law.v0);
            const double f = implicit_force(m, y_snap, f_prev, memory);
            if (stick_admissible(f, law)) {
                stick = true;
                const double limit = slip_force_limit(h, law);
                traj.events.push_back({traj.size(), EventKind::stick_on, t, std::abs(f - limit), limit});
                traj.push(t, y_snap, f, Phase::stick);
                hist.push(f);
                if (!last) {
                    y = advance(m, y_snap, f, f_prev, memory);
                    y[1] = law.v0;
                }
                continue;
            }
        }
        traj.push(t, y, f_slip, Phase::slip);
        hist.push(f_slip);
        y = y_slip;
    }
    return traj;
}

Trajectory simulate(const ModalStructure& s, const FrictionLaw& law, const Eigen::Vector2d& y0, double T,
                    double dt) {
    return simulate(make_reduced_model(s, dt, T), law, y0, T);
}

}  // namespace mzfric
