#pragma once

#include "mzfric/friction.hpp"
#include "mzfric/modal_model.hpp"
#include "mzfric/trajectory.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <functional>

namespace mzfric {

struct FullModalState {
    Eigen::VectorXd x;
    Eigen::VectorXd v;
    double t = 0.0;
    Phase phase = Phase::slip;
};

// x = y1 m, v = y2 m: the modal state whose first-order form lies in the
// range of the lifting operator.
FullModalState lift_initial_state(const ModalStructure& s, const Eigen::Vector2d& y0);

// Filippov sliding force that keeps n.v constant:
//   sum_k n_k (2 D_k w_k v_k + w_k^2 x_k) / sum_k n_k^2.
double sliding_force(const FullModalState& state, const ModalStructure& s);

// 1/2 sum_k (v_k^2 + w_k^2 x_k^2)
double modal_energy(const FullModalState& state, const ModalStructure& s);

struct FullOptions {
    double dt = 1e-4;
    std::size_t output_stride = 1;  // record every stride-th step
    double event_tolerance = 1e-10;  // |h| at located stick onsets
    // Called with the modal state at every recorded sample.
    std::function<void(const FullModalState&)> observer;
};

// Fixed-step RK4 on x'' + 2 D w x' + w^2 x = n f with event location by
// bisection.  Slip: f = slip_contact_force(n.v - v0).  Stick: f = f*, with
// n.v re-projected onto v0 after every step; exit where |f*| reaches mu.
// Events carry the output sample index at or after the event time.
Trajectory simulate_full(const ModalStructure& s, const FrictionLaw& law, const FullModalState& initial,
                         double T, const FullOptions& options = {});

}  // namespace mzfric
