#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <vector>

namespace mzfric {

enum class StructureKind { string, beam, custom };

// Truncated modal model of a linear structure with a single point contact.
//
// The modal equations are  x'' + 2 D Omega x' + Omega^2 x = n f  and the
// resolved variables are y = (n.x, n.x').  `lift` is the lifting vector m
// with m.n = 1 and exactly one nonzero entry (the lift slot), which makes
// the range of the lifting operator invariant under the first-order system
// matrix.
struct ModalStructure {
    StructureKind kind = StructureKind::custom;
    std::vector<double> omega;    // natural frequencies, strictly increasing
    std::vector<double> damping;  // damping ratios, 0 <= D < 1
    std::vector<double> contact;  // mode shapes sampled at the contact point (n)
    std::vector<double> lift;     // lifting coefficients (m)
    std::optional<double> wave_speed;        // string presets only
    std::optional<double> contact_position;  // string presets only

    std::size_t mode_count() const { return omega.size(); }

    // Index of the single nonzero entry of `lift`.
    std::size_t lift_slot() const;

    // Throws std::invalid_argument when an invariant is violated.
    void validate() const;
};

// Pre-tensed string: omega_k = c k pi, n_k = sin(k pi xi*), m = (1/sin(pi xi*), 0, ...).
ModalStructure build_string(double wave_speed, double damping, double xi_star,
                            std::size_t modes);

// Cantilever Euler-Bernoulli beam sampled at the free end:
// 1 + cos(sqrt w) cosh(sqrt w) = 0, n = (2, -2, 2, ...), m = (1/2, 0, ...).
ModalStructure build_beam(double damping, std::size_t modes);

// User-defined structure; validated before it is returned.
ModalStructure make_structure(std::vector<double> omega, std::vector<double> damping,
                              std::vector<double> contact, std::vector<double> lift);

// k-th root (1-based) s_k = sqrt(omega_k) of cos(s) + 1/cosh(s) = 0.
// Bisection on [s0 - 0.7, s0 + 0.7] around s0 = k pi - pi/2 to 1e-12; for
// s0 > 30 the root is s0 itself to double precision.  Throws
// std::runtime_error if the bracket holds no sign change or bisection stalls.
double beam_frequency_root(std::size_t k);

// A = V R W for the single-contact reduction; only depends on the lift-slot mode.
struct ReducedMatrixA {
    Eigen::Matrix2d a;

    double trace() const { return a.trace(); }
    double determinant() const { return a.determinant(); }
};

ReducedMatrixA reduced_A(const ModalStructure& s);

// Dense first-order form z' = R z + (0, n) f with projection data V, W.
struct FirstOrderForm {
    Eigen::MatrixXd R;  // 2N x 2N
    Eigen::MatrixXd V;  // 2 x 2N
    Eigen::MatrixXd W;  // 2N x 2
};

FirstOrderForm build_first_order(const ModalStructure& s);

struct ProjectionReport {
    double vw_identity = 0.0;  // max |VW - I|
    double q_w = 0.0;          // max |QW|
    double range = 0.0;        // max |RW - WA|

    double worst() const;
};

ProjectionReport check_projection_identities(const ModalStructure& s);

}  // namespace mzfric
