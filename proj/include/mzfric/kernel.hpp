#pragma once

#include "mzfric/modal_model.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <vector>

namespace mzfric {

// Response of a single damped mode to a unit initial velocity:
//   z(t)  = e^{-D w t} sin(wd t) / wd,   wd = sqrt(1 - D^2) w
//   dz(t) = z'(t)
//   iz(t) = int_0^t z
struct ModeResponse {
    double z = 0.0;
    double dz = 0.0;
    double iz = 0.0;
};

ModeResponse mode_response(double omega, double damping, double tau);

// Memory kernels of the single-contact reduction at finite truncation.  All
// mode sums run from the highest mode down with Kahan compensation.
//
// [L(tau)]_2 = sum_k n_k^2 (z_k' + 2 D_p w_p z_k + w_p^2 int z_k), p = lift slot.
double kernel_L2(double tau, const ModalStructure& s);

// (0, sum_k n_k^2 w_p^2 / w_k^2); the damping ratios do not enter.
Eigen::Vector2d kernel_Linf(const ModalStructure& s);

// [L^0(tau)]_2 = [L(tau)]_2 - [L_inf]_2, evaluated per mode to avoid the
// cancellation between the two large sums.
double kernel_L0(double tau, const ModalStructure& s);

// [L^1(tau)]_2 = int_0^tau [L^0]_2.  Per mode:
//   n_k^2 [ (1 - w_p^2/w_k^2) z_k(tau) + 2 (D_p w_p - D_k w_p^2 / w_k) int_0^tau z_k ].
double kernel_L1(double tau, const ModalStructure& s);

// Right limit of [L^1]_2 at 0 for the uniformly damped string:
// acos(D) / (2 pi c sqrt(1 - D^2)).
double kernel_L1_jump(double wave_speed, double damping);

// Kernels sampled on the grid tau_q = q dt, q = 0..horizon.
struct KernelTable {
    double dt = 0.0;
    std::size_t horizon = 0;
    std::vector<Eigen::Vector2d> L0;
    std::vector<Eigen::Vector2d> L1;
    Eigen::Vector2d Linf = Eigen::Vector2d::Zero();
    std::optional<double> L1_jump;  // string presets only
    std::size_t mode_count = 0;

    double tau(std::size_t q) const { return static_cast<double>(q) * dt; }
};

// Tabulates to horizon = round(horizon_time / dt) samples; samples are
// evaluated in parallel and each is an independent fixed-order mode sum, so
// the result is bit-identical to build_kernel_table_serial.
KernelTable build_kernel_table(const ModalStructure& s, double dt, double horizon_time);

// Single-threaded reference for build_kernel_table.
KernelTable build_kernel_table_serial(const ModalStructure& s, double dt, double horizon_time);

// Inclusive index range into a kernel table.
struct IndexRange {
    std::size_t first = 0;
    std::size_t last = 0;
};

// [2, 100] clipped to the table horizon.
IndexRange default_holder_window(const KernelTable& table);

// Least-squares slope of log [L^1]_2 against log tau over `window`, clamped
// to [0, 1].  Throws std::invalid_argument if the window is out of range,
// contains tau = 0, or holds a non-positive kernel value.
double holder_exponent(const KernelTable& table, IndexRange window);

struct ResolventScan {
    double max_modulus = 0.0;
    double omega_at_max = 0.0;
    bool unbounded = false;
};

// max over lambda = gamma + i w, w in [0, omega_max] (`samples` points) of
// |lambda sum_k n_k^2 / (w_k^2 + 2 D_k w_k lambda + lambda^2)|.
ResolventScan resolvent_scan(const ModalStructure& s, double gamma, double omega_max,
                             std::size_t samples);

}  // namespace mzfric
