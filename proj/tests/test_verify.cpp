#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mzfric/verify.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <stdexcept>

using namespace mzfric;

namespace {

const Eigen::Vector2d bowed_y0(-2.9224, -2.7668);

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

// Synthetic stick phase: onset at sample 1, force F(t) after it.
Trajectory synthetic_stick(const std::function<double(double)>& F, std::size_t stick_samples) {
    Trajectory t;
    t.dt = 1e-3;
    t.push(0.0, {0.0, 0.0}, 0.0, Phase::slip);
    for (std::size_t j = 0; j < stick_samples; ++j) {
        const double s = static_cast<double>(j) * t.dt;
        t.push(t.dt + s, {0.0, 1.5}, F(s), Phase::stick);
    }
    t.push(t.dt * static_cast<double>(stick_samples + 1), {0.0, 0.0}, 0.0, Phase::slip);
    t.events.push_back({1, EventKind::stick_on, t.dt, 0.0, 0.0});
    t.events.push_back({stick_samples + 1, EventKind::stick_off, 0.0, 0.0, 0.0});
    return t;
}

}  // namespace

TEST_CASE("random reducible systems satisfy the range condition") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const RandomReducibleSystem sys = make_random_system(1 + seed % 10, seed);
        const auto n = static_cast<Eigen::Index>(sys.dimension());
        CHECK(max_abs(sys.V * sys.W - Eigen::Matrix2d::Identity()) < 1e-14);
        CHECK(max_abs(sys.R * sys.W - sys.W * sys.A) < 1e-13);
        CHECK(max_abs(sys.Q() * sys.W) < 1e-14);
        CHECK(max_abs(sys.Q() + sys.S() - Eigen::MatrixXd::Identity(n, n)) < 1e-15);
        CHECK(spectral_abscissa(sys.R) < 0.0);
        const RandomReducibleSystem again = make_random_system(1 + seed % 10, seed);
        CHECK(again.R == sys.R);
        CHECK(again.force(0.7) == sys.force(0.7));
    }
    CHECK_THROWS_AS(make_random_system(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(make_random_system(11, 1), std::invalid_argument);
}

TEST_CASE("exponential integral") {
    const RandomReducibleSystem sys = make_random_system(3, 5);
    const double t = 0.8;
    const auto n = sys.R.rows();
    const Eigen::MatrixXd ref = sys.R.fullPivLu().solve(Eigen::MatrixXd((sys.R * t).exp()) -
                                                         Eigen::MatrixXd::Identity(n, n));
    CHECK(max_abs(exp_integral(sys.R, t) - ref) < 1e-12);
    // Singular generator: int_0^t e^{Ns} ds = t I + N t^2 / 2 for nilpotent N.
    Eigen::MatrixXd N = Eigen::MatrixXd::Zero(2, 2);
    N(0, 1) = 1.0;
    Eigen::MatrixXd expected(2, 2);
    expected << t, t * t / 2, 0.0, t;
    CHECK(max_abs(exp_integral(N, t) - expected) < 1e-14);
}

TEST_CASE("closed form of the orthogonal dynamics exponential") {
    const RandomReducibleSystem sys = make_random_system(6, 11);
    CHECK(expRQ_identity(sys, {0.0}) == 0.0);
    CHECK(expRQ_identity(sys, {0.1, 0.5, 1.0, 2.0, 5.0}) < 1e-10);
    const Eigen::MatrixXd E = (sys.R * sys.Q() * 1.3).exp();
    CHECK(max_abs(E * sys.W - sys.W) < 1e-12);
}

TEST_CASE("noise term vanishes on the range of the lift") {
    const std::vector<double> ts{0.1, 1.0, 3.0};
    const FirstOrderForm s = build_first_order(build_string(1.0, 0.1, 0.4, 8));
    CHECK(noise_on_range(s.R, s.V, s.W, ts) < 1e-12);
    const FirstOrderForm b = build_first_order(build_beam(0.02, 5));
    CHECK(noise_on_range(b.R, b.V, b.W, ts) < 1e-10);
}

TEST_CASE("reduced and direct integration agree") {
    const RandomReducibleSystem sys = make_random_system(4, 3);
    MzEquivalenceOptions opt;
    opt.T = 2.0;
    opt.dt = 1e-3;
    CHECK(mz_equivalence(sys, opt) < 1e-9);
    opt.zero_forcing = true;
    CHECK(mz_equivalence(sys, opt) < 1e-10);

    // Off the lifted range the noise term is active and still captured.
    opt.zero_forcing = false;
    Eigen::VectorXd z0 = Eigen::VectorXd::LinSpaced(static_cast<Eigen::Index>(sys.dimension()), 1.0, -1.0);
    opt.z0 = z0;
    CHECK(mz_equivalence(sys, opt) < 1e-9);
}

TEST_CASE("equivalence error is fourth order in the step") {
    const RandomReducibleSystem sys = make_random_system(3, 9);
    MzEquivalenceOptions opt;
    opt.T = 5.0;
    opt.dt = 0.05;
    const double coarse = mz_equivalence(sys, opt);
    opt.dt = 0.025;
    const double fine = mz_equivalence(sys, opt);
    CHECK(coarse / fine > 10.0);
    CHECK(coarse / fine < 24.0);
}

TEST_CASE("stick force Hoelder fit on synthetic phases") {
    const Trajectory root = synthetic_stick([](double s) { return 1.0 + 2.0 * std::sqrt(s); }, 150);
    const HolderFit a = stick_force_holder(root, 0);
    CHECK(a.status == HolderStatus::ok);
    CHECK(a.beta == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(a.samples == 149);

    const Trajectory constant = synthetic_stick([](double) { return 3.0; }, 150);
    CHECK(stick_force_holder(constant, 0).status == HolderStatus::exact_continuity);

    const Trajectory short_phase = synthetic_stick([](double s) { return s; }, 50);
    const HolderFit r = stick_force_holder(short_phase, 0);
    CHECK(r.status == HolderStatus::rejected);
    CHECK(r.samples == 49);

    CHECK_THROWS_AS(stick_force_holder(root, 1), std::invalid_argument);
    CHECK_THROWS_AS(stick_force_holder(root, 0, 1), std::invalid_argument);
}

TEST_CASE("gap convergence sweep") {
    const std::vector<GapPoint> pts = gap_convergence(
        [](std::size_t N) { return build_string(1.0, 0.1, 0.4, N); }, FrictionLaw{}, bowed_y0, 3.0, 5e-4,
        {20, 40, 80});
    REQUIRE(pts.size() == 3);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        REQUIRE(pts[i].gap.has_value());
        CHECK(pts[i].stick_phases >= 1);
        if (i > 0) CHECK(*pts[i].gap < *pts[i - 1].gap);
    }
    CHECK(pts[1].modes == 40);
    CHECK_THROWS_AS(gap_convergence([](std::size_t N) { return build_string(1.0, 0.1, 0.4, N); },
                                    FrictionLaw{}, bowed_y0, 1.0, 5e-4, {40, 20}),
                    std::invalid_argument);
    CHECK_THROWS(gap_convergence([](std::size_t N) { return build_string(1.0, 1.5, 0.4, N); }, FrictionLaw{},
                                 bowed_y0, 1.0, 5e-4, {20}));
}
