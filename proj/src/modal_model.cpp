#include "mzfric/modal_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace mzfric {

namespace {

constexpr double pi = std::numbers::pi;

// Scaled beam frequency function; same roots as 1 + cos(s) cosh(s) without overflow.
double beam_characteristic(double s) { return std::cos(s) + 1.0 / std::cosh(s); }

}  // namespace

std::size_t ModalStructure::lift_slot() const {
    for (std::size_t k = 0; k < lift.size(); ++k) {
        if (lift[k] != 0.0) return k;
    }
    throw std::invalid_argument("lifting vector has no nonzero entry");
}

void ModalStructure::validate() const {
    const std::size_t n = omega.size();
    if (n == 0) throw std::invalid_argument("structure needs at least one mode");
    if (damping.size() != n || contact.size() != n || lift.size() != n) {
        throw std::invalid_argument("modal arrays must all have mode_count entries");
    }
    for (std::size_t k = 0; k < n; ++k) {
        if (!(omega[k] > 0.0) || !std::isfinite(omega[k])) {
            throw std::invalid_argument("natural frequencies must be positive and finite");
        }
        if (k > 0 && !(omega[k] > omega[k - 1])) {
            throw std::invalid_argument("natural frequencies must be strictly increasing");
        }
        if (!(damping[k] >= 0.0 && damping[k] < 1.0)) {
            throw std::invalid_argument("damping ratios must satisfy 0 <= D < 1 (mode " +
                                        std::to_string(k + 1) + ")");
        }
        if (!std::isfinite(contact[k]) || !std::isfinite(lift[k])) {
            throw std::invalid_argument("contact and lift coefficients must be finite");
        }
    }
    const auto nonzero = std::count_if(lift.begin(), lift.end(), [](double v) { return v != 0.0; });
    if (nonzero != 1) {
        throw std::invalid_argument("lifting vector must have exactly one nonzero entry");
    }
    const std::size_t p = lift_slot();
    const double dot = lift[p] * contact[p];
    if (std::abs(dot - 1.0) > 4.0 * std::numeric_limits<double>::epsilon()) {
        throw std::invalid_argument("lifting vector must satisfy m.n = 1");
    }
}

ModalStructure build_string(double wave_speed, double damping, double xi_star,
                            std::size_t modes) {
    if (!(wave_speed > 0.0)) throw std::invalid_argument("wave speed must be positive");
    if (!(xi_star > 0.0 && xi_star < 1.0)) {
        throw std::invalid_argument("contact position must lie in (0, 1)");
    }
    if (!(damping >= 0.0 && damping < 1.0)) throw std::invalid_argument("damping must be in [0, 1)");
    if (modes == 0) throw std::invalid_argument("mode count must be at least 1");
    const double first_shape = std::sin(pi * xi_star);
    if (std::abs(first_shape) < 1e-12) {
        throw std::invalid_argument("sin(pi xi*) vanishes; lifting vector undefined");
    }

    ModalStructure s;
    s.kind = StructureKind::string;
    s.wave_speed = wave_speed;
    s.contact_position = xi_star;
    s.omega.resize(modes);
    s.damping.assign(modes, damping);
    s.contact.resize(modes);
    s.lift.assign(modes, 0.0);
    for (std::size_t k = 0; k < modes; ++k) {
        const double kk = static_cast<double>(k + 1);
        s.omega[k] = wave_speed * kk * pi;
        s.contact[k] = std::sin(kk * pi * xi_star);
    }
    s.lift[0] = 1.0 / first_shape;
    s.validate();
    return s;
}

double beam_frequency_root(std::size_t k) {
    if (k == 0) throw std::invalid_argument("beam mode index is 1-based");
    const double seed = static_cast<double>(k) * pi - pi / 2.0;
    // cos(seed) = 0 and sech(seed) < 1e-13 beyond this point.
    if (seed > 30.0) return seed;

    double lo = seed - 0.7;
    double hi = seed + 0.7;
    double g_lo = beam_characteristic(lo);
    const double g_hi = beam_characteristic(hi);
    if (!(g_lo * g_hi < 0.0)) {
        throw std::runtime_error("beam frequency bracket holds no root for mode " + std::to_string(k));
    }
    // Runs past the 1e-12 bracket down to adjacent doubles: the unscaled
    // residual grows like cosh(s) times the bracket width.
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) return std::abs(g_lo) < std::abs(beam_characteristic(hi)) ? lo : hi;
        const double g_mid = beam_characteristic(mid);
        if (g_mid == 0.0) return mid;
        if ((g_mid < 0.0) == (g_lo < 0.0)) {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
        }
    }
    throw std::runtime_error("beam frequency bisection did not converge for mode " + std::to_string(k));
}

ModalStructure build_beam(double damping, std::size_t modes) {
    if (!(damping >= 0.0 && damping < 1.0)) throw std::invalid_argument("damping must be in [0, 1)");
    if (modes == 0) throw std::invalid_argument("mode count must be at least 1");

    ModalStructure s;
    s.kind = StructureKind::beam;
    s.omega.resize(modes);
    s.damping.assign(modes, damping);
    s.contact.resize(modes);
    s.lift.assign(modes, 0.0);
    for (std::size_t k = 0; k < modes; ++k) {
        const double root = beam_frequency_root(k + 1);
        s.omega[k] = root * root;
        s.contact[k] = (k % 2 == 0) ? 2.0 : -2.0;
    }
    s.lift[0] = 0.5;
    s.validate();
    return s;
}

ModalStructure make_structure(std::vector<double> omega, std::vector<double> damping,
                              std::vector<double> contact, std::vector<double> lift) {
    ModalStructure s;
    s.kind = StructureKind::custom;
    s.omega = std::move(omega);
    s.damping = std::move(damping);
    s.contact = std::move(contact);
    s.lift = std::move(lift);
    s.validate();
    return s;
}

ReducedMatrixA reduced_A(const ModalStructure& s) {
    const std::size_t p = s.lift_slot();
    const double w = s.omega[p];
    ReducedMatrixA out;
    out.a << 0.0, 1.0, -w * w, -2.0 * s.damping[p] * w;
    return out;
}

FirstOrderForm build_first_order(const ModalStructure& s) {
    const auto n = static_cast<Eigen::Index>(s.mode_count());
    FirstOrderForm f;
    f.R = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    f.V = Eigen::MatrixXd::Zero(2, 2 * n);
    f.W = Eigen::MatrixXd::Zero(2 * n, 2);
    for (Eigen::Index k = 0; k < n; ++k) {
        const auto ku = static_cast<std::size_t>(k);
        const double w = s.omega[ku];
        f.R(k, n + k) = 1.0;
        f.R(n + k, k) = -w * w;
        f.R(n + k, n + k) = -2.0 * s.damping[ku] * w;
        f.V(0, k) = s.contact[ku];
        f.V(1, n + k) = s.contact[ku];
        f.W(k, 0) = s.lift[ku];
        f.W(n + k, 1) = s.lift[ku];
    }
    return f;
}

double ProjectionReport::worst() const { return std::max({vw_identity, q_w, range}); }

ProjectionReport check_projection_identities(const ModalStructure& s) {
    const FirstOrderForm f = build_first_order(s);
    const Eigen::Matrix2d a = reduced_A(s).a;
    const Eigen::Index dim = f.R.rows();
    const Eigen::MatrixXd S = f.W * f.V;
    const Eigen::MatrixXd Q = Eigen::MatrixXd::Identity(dim, dim) - S;

    ProjectionReport r;
    r.vw_identity = (f.V * f.W - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff();
    r.q_w = (Q * f.W).cwiseAbs().maxCoeff();
    r.range = (f.R * f.W - f.W * a).cwiseAbs().maxCoeff();
    return r;
}

}  // namespace mzfric
