#include "mzfric/verify.hpp"

#include "mzfric/reduced_sim.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <limits>
#include <random>
#include <stdexcept>

namespace mzfric {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

MatrixXd expm(const MatrixXd& M) { return M.exp(); }

}  // namespace

double RandomReducibleSystem::force(double t) const {
    double f = 0.0;
    for (const Sinusoid& s : forcing) f += s.amplitude * std::sin(s.frequency * t + s.phase);
    return f;
}

MatrixXd RandomReducibleSystem::Q() const {
    const auto n = R.rows();
    return MatrixXd::Identity(n, n) - S();
}

RandomReducibleSystem make_random_system(std::size_t modes, std::uint64_t seed) {
    if (modes < 1 || modes > 10) throw std::invalid_argument("random systems have 1 to 10 modes");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> freq(0.5, 4.0);
    std::uniform_real_distribution<double> damp(0.01, 0.3);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> lift_mag(0.3, 1.0);
    std::uniform_int_distribution<std::size_t> slot(0, modes - 1);

    std::vector<double> omega(modes);
    do {
        for (double& w : omega) w = freq(rng);
        std::sort(omega.begin(), omega.end());
    } while (std::adjacent_find(omega.begin(), omega.end()) != omega.end());

    std::vector<double> damping(modes), contact(modes), lift(modes, 0.0);
    for (std::size_t k = 0; k < modes; ++k) {
        damping[k] = damp(rng);
        contact[k] = unit(rng);
    }
    const std::size_t p = slot(rng);
    contact[p] = std::copysign(lift_mag(rng), unit(rng));
    lift[p] = 1.0 / contact[p];

    RandomReducibleSystem sys;
    sys.seed = seed;
    sys.structure = make_structure(std::move(omega), std::move(damping), std::move(contact), std::move(lift));
    const FirstOrderForm f = build_first_order(sys.structure);
    sys.R = f.R;
    sys.V = f.V;
    sys.W = f.W;
    sys.A = reduced_A(sys.structure).a;
    const auto n = static_cast<Eigen::Index>(modes);
    sys.b = VectorXd::Zero(2 * n);
    for (Eigen::Index k = 0; k < n; ++k) sys.b[n + k] = sys.structure.contact[static_cast<std::size_t>(k)];

    std::uniform_real_distribution<double> amp(0.2, 1.0);
    std::uniform_real_distribution<double> fr(0.5, 3.0);
    std::uniform_real_distribution<double> ph(0.0, 2.0 * 3.14159265358979323846);
    for (int i = 0; i < 3; ++i) sys.forcing.push_back({amp(rng), fr(rng), ph(rng)});
    return sys;
}

double spectral_abscissa(const MatrixXd& R) {
    const Eigen::EigenSolver<MatrixXd> es(R, false);
    return es.eigenvalues().real().maxCoeff();
}

MatrixXd exp_integral(const MatrixXd& R, double t) {
    const auto n = R.rows();
    const Eigen::FullPivLU<MatrixXd> lu(R);
    if (lu.isInvertible()) return lu.solve(expm(R * t) - MatrixXd::Identity(n, n));
    MatrixXd aug = MatrixXd::Zero(2 * n, 2 * n);
    aug.topLeftCorner(n, n) = R;
    aug.topRightCorner(n, n) = MatrixXd::Identity(n, n);
    return expm(aug * t).topRightCorner(n, n);
}

double expRQ_identity(const RandomReducibleSystem& sys, const std::vector<double>& t_samples) {
    const MatrixXd RQ = sys.R * sys.Q();
    const MatrixXd RS = sys.R * sys.S();
    double worst = 0.0;
    for (const double t : t_samples) {
        const MatrixXd lhs = expm(RQ * t);
        const MatrixXd rhs = expm(sys.R * t) - RS * exp_integral(sys.R, t);
        worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
    }
    return worst;
}

double noise_on_range(const MatrixXd& R, const MatrixXd& V, const MatrixXd& W,
                      const std::vector<double>& t_samples) {
    const auto n = R.rows();
    const MatrixXd RQ = R * (MatrixXd::Identity(n, n) - W * V);
    double worst = 0.0;
    for (const double t : t_samples) {
        worst = std::max(worst, (V * RQ * expm(RQ * t) * W).cwiseAbs().maxCoeff());
    }
    return worst;
}

double mz_equivalence(const RandomReducibleSystem& sys, const MzEquivalenceOptions& options) {
    if (!(options.dt > 0.0) || !(options.T > 0.0)) throw std::invalid_argument("mz_equivalence needs T, dt > 0");
    const auto steps = static_cast<std::size_t>(std::llround(options.T / options.dt));
    const double dt = options.dt;
    const double half = 0.5 * dt;
    const auto force = [&](double t) { return options.zero_forcing ? 0.0 : sys.force(t); };

    const VectorXd z0 = options.z0 ? *options.z0 : VectorXd(sys.W * Eigen::Vector2d(1.0, -0.5));
    if (z0.size() != sys.R.rows()) throw std::invalid_argument("initial state has the wrong dimension");

    const MatrixXd RQ = sys.R * sys.Q();
    const MatrixXd P = sys.V * RQ;
    const Eigen::Vector2d c = sys.V * sys.b;

    // Exact propagator over half a step plus Gauss-Legendre for the forcing integral.
    const MatrixXd E = expm(RQ * half);
    const std::array<double, 3> nodes{-std::sqrt(0.6), 0.0, std::sqrt(0.6)};
    const std::array<double, 3> gl_weights{5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
    std::array<VectorXd, 3> G;
    std::array<double, 3> offset{};
    for (std::size_t i = 0; i < 3; ++i) {
        offset[i] = 0.5 * half * (1.0 + nodes[i]);
        G[i] = 0.5 * half * gl_weights[i] * (expm(RQ * (half - offset[i])) * sys.b);
    }
    const auto advance_w = [&](const VectorXd& w, double t) {
        VectorXd out = E * w;
        for (std::size_t i = 0; i < 3; ++i) out += G[i] * force(t + offset[i]);
        return out;
    };

    VectorXd z = z0;
    VectorXd w = z0;
    Eigen::Vector2d y = sys.V * z0;
    double worst = 0.0;
    for (std::size_t k = 0; k < steps; ++k) {
        const double t = static_cast<double>(k) * dt;
        const double f0 = force(t), fm = force(t + half), f1 = force(t + dt);

        const VectorXd k1 = sys.R * z + sys.b * f0;
        const VectorXd k2 = sys.R * (z + half * k1) + sys.b * fm;
        const VectorXd k3 = sys.R * (z + half * k2) + sys.b * fm;
        const VectorXd k4 = sys.R * (z + dt * k3) + sys.b * f1;
        z += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        const VectorXd w_mid = advance_w(w, t);
        const VectorXd w_end = advance_w(w_mid, t + half);
        const Eigen::Vector2d g0 = P * w, gm = P * w_mid, g1 = P * w_end;
        const Eigen::Vector2d r1 = sys.A * y + c * f0 + g0;
        const Eigen::Vector2d r2 = sys.A * (y + half * r1) + c * fm + gm;
        const Eigen::Vector2d r3 = sys.A * (y + half * r2) + c * fm + gm;
        const Eigen::Vector2d r4 = sys.A * (y + dt * r3) + c * f1 + g1;
        y += dt / 6.0 * (r1 + 2.0 * r2 + 2.0 * r3 + r4);
        w = w_end;

        worst = std::max(worst, (sys.V * z - y).cwiseAbs().maxCoeff());
    }
    return worst;
}

HolderFit stick_force_holder(const Trajectory& traj, std::size_t event_index, std::size_t window) {
    if (event_index >= traj.events.size() || traj.events[event_index].kind != EventKind::stick_on) {
        throw std::invalid_argument("event index does not name a stick onset");
    }
    if (window < 2) throw std::invalid_argument("Hoelder fit needs a window of at least 2 samples");
    const std::size_t q0 = traj.events[event_index].step;
    std::size_t after = 0;
    while (q0 + after + 1 < traj.size() && traj.phase[q0 + after + 1] == Phase::stick) ++after;

    HolderFit fit;
    fit.samples = after;
    if (after < window) return fit;

    const double f0 = traj.fc[q0];
    const double floor = 1e-12 * std::max(1.0, std::abs(f0));
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::size_t used = 0;
    for (std::size_t j = 1; j <= window; ++j) {
        const double d = std::abs(traj.fc[q0 + j] - f0);
        if (d <= floor) continue;
        const double x = std::log(traj.times[q0 + j] - traj.times[q0]);
        const double yv = std::log(d);
        sx += x;
        sy += yv;
        sxx += x * x;
        sxy += x * yv;
        ++used;
    }
    if (used < 2) {
        fit.status = HolderStatus::exact_continuity;
        return fit;
    }
    const auto n = static_cast<double>(used);
    fit.beta = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    fit.status = HolderStatus::ok;
    return fit;
}

std::vector<GapPoint> gap_convergence(const std::function<ModalStructure(std::size_t)>& build,
                                      const FrictionLaw& law, const Eigen::Vector2d& y0, double T, double dt,
                                      const std::vector<std::size_t>& mode_counts) {
    if (!std::is_sorted(mode_counts.begin(), mode_counts.end())) {
        throw std::invalid_argument("mode counts must be ascending");
    }
    std::vector<GapPoint> out(mode_counts.size());
    std::vector<std::exception_ptr> errors(mode_counts.size());
    const auto count = static_cast<std::ptrdiff_t>(mode_counts.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = count - 1; i >= 0; --i) {
        const auto iu = static_cast<std::size_t>(i);
        try {
            const Trajectory traj = simulate(build(mode_counts[iu]), law, y0, T, dt);
            GapPoint g;
            g.modes = mode_counts[iu];
            g.stick_phases = traj.stick_phase_count();
            const std::size_t e = traj.first_event(EventKind::stick_on);
            if (e < traj.events.size()) g.gap = traj.events[e].force_gap;
            out[iu] = g;
        } catch (...) {
            errors[iu] = std::current_exception();
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

}  // namespace mzfric
