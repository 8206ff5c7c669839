#pragma once

#include "mzfric/friction.hpp"
#include "mzfric/kernel.hpp"
#include "mzfric/modal_model.hpp"
#include "mzfric/trajectory.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace mzfric {

// Raised when the stick-force denominator vanishes (two-fold type degeneracy).
class SingularityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Everything the time march needs, precomputed.
struct ReducedModel {
    Eigen::Matrix2d A = Eigen::Matrix2d::Zero();
    KernelTable table;
    // Exact cell weights W_j = ([L1]_2((j+1) dt) - [L1]_2(j dt)) / dt, j < horizon.
    // W_j dt is the exact kernel mass over [j dt, (j+1) dt].
    std::vector<double> weights;
    double linf = 0.0;  // [L_inf]_2
    std::optional<double> l1_jump;

    double dt() const { return table.dt; }
    // Largest step index q the weights support.
    std::size_t max_step() const { return weights.empty() ? 0 : weights.size() - 1; }
};

// Tabulates the kernels one step past horizon_time so that steps
// q = 0..round(horizon_time / dt) are all covered.
ReducedModel make_reduced_model(const ModalStructure& s, double dt, double horizon_time);
ReducedModel make_reduced_model(const Eigen::Matrix2d& A, KernelTable table);

// Contact-force samples f_0, f_1, ... with their forward increments.
class ForceHistory {
public:
    void reserve(std::size_t n);
    void push(double f);
    void clear();

    std::size_t size() const { return f_.size(); }
    double operator[](std::size_t i) const { return f_[i]; }
    std::span<const double> values() const { return f_; }
    std::span<const double> increments() const { return df_; }

private:
    std::vector<double> f_;
    std::vector<double> df_;
};

// M_q = sum_{j=1}^{q-1} W_j (f_{q-j} - f_{q-j-1}) + W_q f_0, and M_0 = 0.
// Needs hist.size() >= q.  Throws std::out_of_range past the kernel horizon.
double memory_term(const ReducedModel& m, std::size_t q, const ForceHistory& hist, bool parallel = true);

// y_{q+1} = y_q + dt (A y_q + (0, L_inf f_q + W_0 (f_q - f_{q-1}) + M_q)), f_{-1} = 0.
// Needs hist.size() >= q + 1.
Eigen::Vector2d step_slip(const ReducedModel& m, std::size_t q, const ForceHistory& hist,
                          const Eigen::Vector2d& y);

// Force f_q that keeps y2 constant over the step:
//   (L_inf + W_0) f_q = W_0 f_{q-1} - (A y_q)_2 - M_q.
// Needs hist.size() >= q.  Throws SingularityError if L_inf + W_0 vanishes.
double stick_force(const ReducedModel& m, std::size_t q, const ForceHistory& hist, const Eigen::Vector2d& y);

// dF/dt during stick with the kernel jump as leading coefficient:
//   -((A y)_2 + L_inf f + memory) / L1_jump.
// Throws std::invalid_argument when the model carries no jump (continuous kernel).
double stick_force_rate(const ReducedModel& m, const Eigen::Vector2d& y, double f, double memory);

// Explicit Euler on stick_force_rate over the stick phase opened by
// traj.events[event_index], starting from the slip-side limit at onset.  Uses
// the trajectory's states and its forces before onset as history.  Returns
// one force per stick sample.
std::vector<double> integrate_stick_force_by_rate(const ReducedModel& m, const Trajectory& traj,
                                                  std::size_t event_index);

struct ReducedOptions {
    bool parallel_history = true;
};

// Explicit Euler march of the reduced equation with stick-slip switching on
// the grid t_q = q dt, q = 0..round(T / dt).  Throws std::runtime_error on a
// non-finite state.
Trajectory simulate(const ReducedModel& m, const FrictionLaw& law, const Eigen::Vector2d& y0, double T,
                    const ReducedOptions& options = {});

Trajectory simulate(const ModalStructure& s, const FrictionLaw& law, const Eigen::Vector2d& y0, double T,
                    double dt);

}  // namespace mzfric
