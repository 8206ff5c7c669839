#pragma once

#include "mzfric/friction.hpp"
#include "mzfric/modal_model.hpp"
#include "mzfric/trajectory.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace mzfric {

struct Sinusoid {
    double amplitude = 0.0;
    double frequency = 0.0;
    double phase = 0.0;
};

// Random modal-block system with a single-window lift, so RW = WA holds by
// construction.  z' = R z + b f(t), y = V z.
struct RandomReducibleSystem {
    ModalStructure structure;
    Eigen::MatrixXd R;
    Eigen::MatrixXd V;
    Eigen::MatrixXd W;
    Eigen::Matrix2d A;
    Eigen::VectorXd b;  // (0, n)
    std::vector<Sinusoid> forcing;
    std::uint64_t seed = 0;

    std::size_t dimension() const { return static_cast<std::size_t>(R.rows()); }
    double force(double t) const;
    Eigen::MatrixXd S() const { return W * V; }
    Eigen::MatrixXd Q() const;
};

// modes in [1, 10]; frequencies in [0.5, 4], damping in [0.01, 0.3], a
// random lift slot, three forcing sinusoids.  Deterministic in seed.
RandomReducibleSystem make_random_system(std::size_t modes, std::uint64_t seed);

// max Re(lambda) over the eigenvalues of R.
double spectral_abscissa(const Eigen::MatrixXd& R);

// int_0^t e^{R s} ds: R^{-1}(e^{Rt} - I) when R is invertible, otherwise the
// top-right block of the exponential of [[R, I], [0, 0]] t.
Eigen::MatrixXd exp_integral(const Eigen::MatrixXd& R, double t);

// max over t of max|e^{RQt} - (e^{Rt} - R S int_0^t e^{Rs} ds)|.
double expRQ_identity(const RandomReducibleSystem& sys, const std::vector<double>& t_samples);

// max over t of max|V R Q e^{RQt} W|: the noise term vanishes on range(W).
double noise_on_range(const Eigen::MatrixXd& R, const Eigen::MatrixXd& V, const Eigen::MatrixXd& W,
                      const std::vector<double>& t_samples);

struct MzEquivalenceOptions {
    double T = 5.0;
    double dt = 1e-4;
    bool zero_forcing = false;
    // Initial state; defaults to W y0 with y0 = (1, -0.5) when empty.
    std::optional<Eigen::VectorXd> z0;
};

// Integrates z' = R z + b f directly (RK4) and the reduced equation
//   y' = A y + V b f + V R Q w,   w' = R Q w + b f,   w(0) = z0,
// where V R Q w(t) = H(t) z0 + int_0^t L(t - s) f(s) ds carries the noise and
// memory terms.  w advances exactly in the homogeneous part (matrix
// exponential) with 3-point Gauss-Legendre quadrature for the forcing.
// Returns sup_t |y_direct - y_reduced|.
double mz_equivalence(const RandomReducibleSystem& sys, const MzEquivalenceOptions& options = {});

enum class HolderStatus { ok, rejected, exact_continuity };

struct HolderFit {
    HolderStatus status = HolderStatus::rejected;
    double beta = 0.0;
    std::size_t samples = 0;
};

// Fits |F(t_q) - F(t*)| ~ C (t_q - t*)^beta over the first `window` stick
// samples after the onset traj.events[event_index].  Rejected when the stick
// phase holds fewer than `window` further samples.
HolderFit stick_force_holder(const Trajectory& traj, std::size_t event_index, std::size_t window = 100);

struct GapPoint {
    std::size_t modes = 0;
    std::optional<double> gap;  // empty when the run never sticks
    std::size_t stick_phases = 0;
};

// One reduced run per mode count (in parallel), first stick-onset force gap each.
std::vector<GapPoint> gap_convergence(const std::function<ModalStructure(std::size_t)>& build,
                                      const FrictionLaw& law, const Eigen::Vector2d& y0, double T, double dt,
                                      const std::vector<std::size_t>& mode_counts);

}  // namespace mzfric
