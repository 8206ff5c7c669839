#include "mzfric/kernel.hpp"

#include "mzfric/compensated_sum.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace mzfric {

namespace {

void require_subcritical(double damping) {
    if (!(damping >= 0.0 && damping < 1.0)) {
        throw std::invalid_argument("kernel formulas need 0 <= D < 1 (critically damped mode)");
    }
}

// Sum term(k) for k = N-1 down to 0.
template <class Term>
double descending_sum(const ModalStructure& s, Term&& term) {
    CompensatedSum acc;
    for (std::size_t k = s.mode_count(); k-- > 0;) acc.add(term(k));
    return acc.value();
}

struct KernelPair {
    double l0 = 0.0;
    double l1 = 0.0;
};

// L0 and L1 share the per-mode trig evaluation.
KernelPair kernel_pair(double tau, const ModalStructure& s) {
    const std::size_t p = s.lift_slot();
    const double wp = s.omega[p];
    const double dp = s.damping[p];
    CompensatedSum l0;
    CompensatedSum l1;
    for (std::size_t k = s.mode_count(); k-- > 0;) {
        const double wk = s.omega[k];
        const double dk = s.damping[k];
        const double n2 = s.contact[k] * s.contact[k];
        const double r = wp / wk;
        const ModeResponse m = mode_response(wk, dk, tau);
        l0.add(n2 * ((1.0 - r * r) * m.dz + 2.0 * (dp * wp - dk * wk * r * r) * m.z));
        l1.add(n2 * ((1.0 - r * r) * m.z + 2.0 * (dp * wp - dk * wp * r) * m.iz));
    }
    return {l0.value(), l1.value()};
}

KernelTable empty_table(const ModalStructure& s, double dt, double horizon_time) {
    s.validate();
    if (!(dt > 0.0) || !(horizon_time > 0.0)) {
        throw std::invalid_argument("kernel table needs dt > 0 and horizon > 0");
    }
    KernelTable t;
    t.dt = dt;
    t.horizon = static_cast<std::size_t>(std::llround(horizon_time / dt));
    t.L0.assign(t.horizon + 1, Eigen::Vector2d::Zero());
    t.L1.assign(t.horizon + 1, Eigen::Vector2d::Zero());
    t.Linf = kernel_Linf(s);
    t.mode_count = s.mode_count();
    if (s.kind == StructureKind::string && s.wave_speed) {
        t.L1_jump = kernel_L1_jump(*s.wave_speed, s.damping.front());
    }
    return t;
}

void fill_sample(KernelTable& t, const ModalStructure& s, std::size_t q) {
    const KernelPair v = kernel_pair(t.tau(q), s);
    t.L0[q] = Eigen::Vector2d(0.0, v.l0);
    t.L1[q] = Eigen::Vector2d(0.0, v.l1);
}

}  // namespace

ModeResponse mode_response(double omega, double damping, double tau) {
    require_subcritical(damping);
    const double root = std::sqrt(1.0 - damping * damping);
    const double wd = root * omega;
    const double decay = std::exp(-damping * omega * tau);
    const double sn = std::sin(wd * tau);
    const double cs = std::cos(wd * tau);
    const double ratio = damping / root;
    ModeResponse m;
    m.z = decay * sn / wd;
    m.dz = decay * (cs - ratio * sn);
    m.iz = (1.0 - decay * (cs + ratio * sn)) / (omega * omega);
    return m;
}

double kernel_L2(double tau, const ModalStructure& s) {
    if (tau < 0.0) throw std::invalid_argument("kernel evaluated at negative delay");
    const std::size_t p = s.lift_slot();
    const double wp = s.omega[p];
    const double dp = s.damping[p];
    return descending_sum(s, [&](std::size_t k) {
        const double n2 = s.contact[k] * s.contact[k];
        const ModeResponse m = mode_response(s.omega[k], s.damping[k], tau);
        return n2 * (m.dz + 2.0 * dp * wp * m.z + wp * wp * m.iz);
    });
}

Eigen::Vector2d kernel_Linf(const ModalStructure& s) {
    const double wp = s.omega[s.lift_slot()];
    const double sum = descending_sum(s, [&](std::size_t k) {
        const double r = wp / s.omega[k];
        return s.contact[k] * s.contact[k] * r * r;
    });
    return {0.0, sum};
}

double kernel_L0(double tau, const ModalStructure& s) {
    if (tau < 0.0) throw std::invalid_argument("kernel evaluated at negative delay");
    return kernel_pair(tau, s).l0;
}

double kernel_L1(double tau, const ModalStructure& s) {
    if (tau < 0.0) throw std::invalid_argument("kernel evaluated at negative delay");
    return kernel_pair(tau, s).l1;
}

double kernel_L1_jump(double wave_speed, double damping) {
    if (!(wave_speed > 0.0)) throw std::invalid_argument("wave speed must be positive");
    require_subcritical(damping);
    return std::acos(damping) / (2.0 * std::numbers::pi * wave_speed * std::sqrt(1.0 - damping * damping));
}

KernelTable build_kernel_table(const ModalStructure& s, double dt, double horizon_time) {
    KernelTable t = empty_table(s, dt, horizon_time);
    const auto count = static_cast<std::ptrdiff_t>(t.horizon + 1);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t q = 0; q < count; ++q) fill_sample(t, s, static_cast<std::size_t>(q));
    return t;
}

KernelTable build_kernel_table_serial(const ModalStructure& s, double dt, double horizon_time) {
    KernelTable t = empty_table(s, dt, horizon_time);
    for (std::size_t q = 0; q <= t.horizon; ++q) fill_sample(t, s, q);
    return t;
}

IndexRange default_holder_window(const KernelTable& table) {
    return {std::min<std::size_t>(2, table.horizon), std::min<std::size_t>(100, table.horizon)};
}

double holder_exponent(const KernelTable& table, IndexRange window) {
    if (window.first == 0 || window.last > table.horizon || window.last <= window.first) {
        throw std::invalid_argument("Hoelder fit window must lie in [1, horizon] with >= 2 samples");
    }
    const auto n = static_cast<double>(window.last - window.first + 1);
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t q = window.first; q <= window.last; ++q) {
        const double v = table.L1[q][1];
        if (!(v > 0.0)) throw std::invalid_argument("non-positive kernel value in Hoelder fit window");
        const double x = std::log(table.tau(q));
        const double y = std::log(v);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return std::clamp(slope, 0.0, 1.0);
}

ResolventScan resolvent_scan(const ModalStructure& s, double gamma, double omega_max,
                             std::size_t samples) {
    if (!(gamma > 0.0)) throw std::invalid_argument("resolvent scan needs gamma > 0");
    if (!(omega_max >= 0.0) || samples < 2) {
        throw std::invalid_argument("resolvent scan needs omega_max >= 0 and >= 2 samples");
    }
    std::vector<double> modulus(samples);
    const auto count = static_cast<std::ptrdiff_t>(samples);
    const double step = omega_max / static_cast<double>(samples - 1);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t j = 0; j < count; ++j) {
        const std::complex<double> lambda(gamma, step * static_cast<double>(j));
        std::complex<double> sum(0.0, 0.0);
        bool pole = false;
        for (std::size_t k = s.mode_count(); k-- > 0;) {
            const double wk = s.omega[k];
            const std::complex<double> den = wk * wk + 2.0 * s.damping[k] * wk * lambda + lambda * lambda;
            if (std::abs(den) == 0.0) {
                pole = true;
                break;
            }
            sum += s.contact[k] * s.contact[k] / den;
        }
        const double value = pole ? INFINITY : std::abs(lambda * sum);
        modulus[static_cast<std::size_t>(j)] = std::isfinite(value) ? value : INFINITY;
    }
    ResolventScan out;
    for (std::size_t j = 0; j < samples; ++j) {
        if (!std::isfinite(modulus[j])) {
            out.unbounded = true;
            out.max_modulus = INFINITY;
            out.omega_at_max = step * static_cast<double>(j);
            return out;
        }
        if (modulus[j] > out.max_modulus) {
            out.max_modulus = modulus[j];
            out.omega_at_max = step * static_cast<double>(j);
        }
    }
    return out;
}

}  // namespace mzfric
