#pragma once

#include <Eigen/Dense>

namespace mzfric {

// Velocity-weakening Coulomb law with bow speed v0.  mu may be +inf (the
// contact never leaves stick once it enters).
struct FrictionLaw {
    double mu = 4.0;
    double kappa = 0.32;
    double sigma = 1.0;
    double v0 = 1.5;

    // Throws std::invalid_argument unless mu > 0, 0 <= kappa < mu, sigma >= 0.
    void validate() const;
};

// sign(v) (mu - kappa + kappa exp(-sigma |v|)), with sign(0) = 0.
double friction_force(double v_rel, const FrictionLaw& law);

// h = y2 - v0.
double switching_h(const Eigen::Vector2d& y, const FrictionLaw& law);

// -mu <= f <= mu.
bool stick_admissible(double f, const FrictionLaw& law);

// Force the contact exerts on the structure while slipping with relative
// velocity h.  It opposes the slip: -friction_force(h).
double slip_contact_force(double h, const FrictionLaw& law);

// One-sided limit of slip_contact_force as h -> 0 from the side of h_side:
// -sign(h_side) mu.
double slip_force_limit(double h_side, const FrictionLaw& law);

}  // namespace mzfric
