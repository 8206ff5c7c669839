#include "mzfric/friction.hpp"

#include <cmath>
#include <stdexcept>

namespace mzfric {

namespace {

double sign(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

void FrictionLaw::validate() const {
    if (!(mu > 0.0)) throw std::invalid_argument("friction law needs mu > 0");
    if (!(kappa >= 0.0 && kappa < mu)) throw std::invalid_argument("friction law needs 0 <= kappa < mu");
    if (!(sigma >= 0.0)) throw std::invalid_argument("friction law needs sigma >= 0");
    if (!std::isfinite(v0)) throw std::invalid_argument("bow speed must be finite");
}

double friction_force(double v_rel, const FrictionLaw& law) {
    if (v_rel == 0.0) return 0.0;
    return sign(v_rel) * (law.mu - law.kappa + law.kappa * std::exp(-law.sigma * std::abs(v_rel)));
}

double switching_h(const Eigen::Vector2d& y, const FrictionLaw& law) { return y[1] - law.v0; }

bool stick_admissible(double f, const FrictionLaw& law) { return -law.mu <= f && f <= law.mu; }

double slip_contact_force(double h, const FrictionLaw& law) { return -friction_force(h, law); }

double slip_force_limit(double h_side, const FrictionLaw& law) { return -sign(h_side) * law.mu; }

}  // namespace mzfric
