#include "mzfric/full_sim.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mzfric {

namespace {

using Eigen::VectorXd;

struct ModalArrays {
    VectorXd n;
    VectorXd damp;   // 2 D w
    VectorXd stiff;  // w^2
    double nn = 0.0;
};

ModalArrays arrays(const ModalStructure& s) {
    const auto N = static_cast<Eigen::Index>(s.mode_count());
    ModalArrays a;
    a.n.resize(N);
    a.damp.resize(N);
    a.stiff.resize(N);
    for (Eigen::Index k = 0; k < N; ++k) {
        const auto ku = static_cast<std::size_t>(k);
        a.n[k] = s.contact[ku];
        a.damp[k] = 2.0 * s.damping[ku] * s.omega[ku];
        a.stiff[k] = s.omega[ku] * s.omega[ku];
    }
    a.nn = a.n.squaredNorm();
    return a;
}

struct Point {
    VectorXd x;
    VectorXd v;
};

class Integrator {
public:
    Integrator(const ModalStructure& s, const FrictionLaw& law) : m_(arrays(s)), law_(law) {}

    double h(const Point& p) const { return m_.n.dot(p.v) - law_.v0; }
    double y1(const Point& p) const { return m_.n.dot(p.x); }
    double y2(const Point& p) const { return m_.n.dot(p.v); }

    double f_star(const Point& p) const {
        return m_.n.dot(m_.damp.cwiseProduct(p.v) + m_.stiff.cwiseProduct(p.x)) / m_.nn;
    }

    // Slip branch of the side being integrated, extended smoothly across the
    // surface so that RK4 stages never see the sign flip.
    double f_slip(const Point& p) const {
        return -side_ * (law_.mu - law_.kappa + law_.kappa * std::exp(-law_.sigma * std::abs(h(p))));
    }

    double force(const Point& p, bool stick) const { return stick ? f_star(p) : f_slip(p); }

    double side() const { return side_; }
    void set_side(double side) { side_ = side; }

    Point rk4(const Point& p, double dt, bool stick) const {
        const auto accel = [&](const VectorXd& x, const VectorXd& v) {
            const double f = force({x, v}, stick);
            VectorXd a = -m_.damp.cwiseProduct(v) - m_.stiff.cwiseProduct(x) + m_.n * f;
            return a;
        };
        const VectorXd a1 = accel(p.x, p.v);
        const VectorXd x2 = p.x + 0.5 * dt * p.v;
        const VectorXd v2 = p.v + 0.5 * dt * a1;
        const VectorXd a2 = accel(x2, v2);
        const VectorXd x3 = p.x + 0.5 * dt * v2;
        const VectorXd v3 = p.v + 0.5 * dt * a2;
        const VectorXd a3 = accel(x3, v3);
        const VectorXd x4 = p.x + dt * v3;
        const VectorXd v4 = p.v + dt * a3;
        const VectorXd a4 = accel(x4, v4);
        Point out;
        out.x = p.x + dt / 6.0 * (p.v + 2.0 * v2 + 2.0 * v3 + v4);
        out.v = p.v + dt / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4);
        return out;
    }

    void project(Point& p) const { p.v += (law_.v0 - m_.n.dot(p.v)) / m_.nn * m_.n; }

private:
    ModalArrays m_;
    FrictionLaw law_;
    double side_ = 0.0;
};

constexpr int bisection_steps = 60;

double sign(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

FullModalState lift_initial_state(const ModalStructure& s, const Eigen::Vector2d& y0) {
    s.validate();
    const auto N = static_cast<Eigen::Index>(s.mode_count());
    FullModalState st;
    st.x = Eigen::Map<const VectorXd>(s.lift.data(), N) * y0[0];
    st.v = Eigen::Map<const VectorXd>(s.lift.data(), N) * y0[1];
    return st;
}

double sliding_force(const FullModalState& state, const ModalStructure& s) {
    const ModalArrays a = arrays(s);
    return a.n.dot(a.damp.cwiseProduct(state.v) + a.stiff.cwiseProduct(state.x)) / a.nn;
}

double modal_energy(const FullModalState& state, const ModalStructure& s) {
    const ModalArrays a = arrays(s);
    return 0.5 * (state.v.squaredNorm() + a.stiff.dot(state.x.cwiseAbs2()));
}

Trajectory simulate_full(const ModalStructure& s, const FrictionLaw& law, const FullModalState& initial,
                         double T, const FullOptions& options) {
    s.validate();
    law.validate();
    const auto N = static_cast<Eigen::Index>(s.mode_count());
    if (initial.x.size() != N || initial.v.size() != N) {
        throw std::invalid_argument("initial modal state must have mode_count entries");
    }
    if (!(options.dt > 0.0) || !(T > 0.0) || options.output_stride == 0) {
        throw std::invalid_argument("full simulation needs T > 0, dt > 0 and stride >= 1");
    }
    const auto steps = static_cast<std::size_t>(std::llround(T / options.dt));
    const double dt = options.dt;
    const std::size_t stride = options.output_stride;

    Integrator in(s, law);
    Point p{initial.x, initial.v};
    bool stick = initial.phase == Phase::stick;

    Trajectory traj;
    traj.dt = dt * static_cast<double>(stride);
    traj.reserve(steps / stride + 1);
    const auto record = [&](std::size_t i) {
        if (options.observer) {
            options.observer({p.x, p.v, static_cast<double>(i) * dt, stick ? Phase::stick : Phase::slip});
        }
        traj.push(static_cast<double>(i) * dt, Eigen::Vector2d(in.y1(p), in.y2(p)), in.force(p, stick),
                  stick ? Phase::stick : Phase::slip);
    };
    // First output sample at or after step i + frac.
    const auto sample_after = [&](std::size_t i, double frac) {
        const double pos = (static_cast<double>(i) + frac) / static_cast<double>(stride);
        return static_cast<std::size_t>(std::ceil(pos - 1e-12));
    };

    // Starting on the surface: stick if possible, otherwise leave on the saturated side.
    if (!stick && in.h(p) == 0.0) {
        const double f = in.f_star(p);
        if (stick_admissible(f, law)) {
            stick = true;
            traj.events.push_back({0, EventKind::stick_on, 0.0, 0.0, 0.0});
        } else {
            in.set_side(-sign(f));
        }
    }

    for (std::size_t i = 0; i < steps; ++i) {
        if (i % stride == 0) record(i);
        const double t = static_cast<double>(i) * dt;
        if (!p.x.allFinite() || !p.v.allFinite()) {
            std::ostringstream msg;
            msg << "full simulation diverged at t = " << t;
            throw std::runtime_error(msg.str());
        }

        if (stick) {
            Point next = in.rk4(p, dt, true);
            if (stick_admissible(in.f_star(next), law)) {
                in.project(next);
                p = std::move(next);
                continue;
            }
            double a = 0.0, b = dt;
            for (int it = 0; it < bisection_steps; ++it) {
                const double mid = 0.5 * (a + b);
                if (stick_admissible(in.f_star(in.rk4(p, mid, true)), law)) a = mid;
                else b = mid;
            }
            Point exit = in.rk4(p, a, true);
            // f* = +mu leaves towards h < 0 and vice versa.
            in.set_side(-sign(in.f_star(exit)));
            stick = false;
            traj.events.push_back({sample_after(i, a / dt), EventKind::stick_off, t + a, 0.0, 0.0});
            p = in.rk4(exit, dt - a, false);
            continue;
        }

        const double h0 = in.h(p);
        if (h0 != 0.0) in.set_side(sign(h0));
        const double side = in.side();
        Point next = in.rk4(p, dt, false);
        if (side * in.h(next) < 0.0 || (h0 != 0.0 && in.h(next) == 0.0)) {
            double a = 0.0, b = dt, mid = dt;
            for (int it = 0; it < bisection_steps; ++it) {
                mid = 0.5 * (a + b);
                const double hm = in.h(in.rk4(p, mid, false));
                if (side * hm > 0.0) a = mid;
                else b = mid;
                if (std::abs(hm) < options.event_tolerance) break;
            }
            Point onset = in.rk4(p, mid, false);
            const double f = in.f_star(onset);
            if (stick_admissible(f, law)) {
                const double limit = slip_force_limit(side, law);
                traj.events.push_back(
                    {sample_after(i, mid / dt), EventKind::stick_on, t + mid, std::abs(f - limit), limit});
                stick = true;
                in.project(onset);
                p = in.rk4(onset, dt - mid, true);
                in.project(p);
                continue;
            }
            // Crosses the surface: finish the step on the other slip branch.
            in.set_side(-side);
            p = in.rk4(onset, dt - mid, false);
            continue;
        }
        p = std::move(next);
    }
    if (steps % stride == 0) record(steps);
    return traj;
}

}  // namespace mzfric
