#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mzfric/full_sim.hpp"
#include "mzfric/reduced_sim.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

using namespace mzfric;

namespace {

const Eigen::Vector2d bowed_y0(-2.9224, -2.7668);

ForceHistory history_of(std::initializer_list<double> values) {
    ForceHistory h;
    for (double v : values) h.push(v);
    return h;
}

double max_diff_on(const Trajectory& coarse, const Trajectory& fine, double t_end) {
    const auto ratio = static_cast<std::size_t>(std::llround(coarse.dt / fine.dt));
    double d = 0.0;
    for (std::size_t q = 0; q < coarse.size() && coarse.times[q] <= t_end; ++q) {
        d = std::max(d, (coarse.y[q] - fine.y[q * ratio]).cwiseAbs().maxCoeff());
    }
    return d;
}

}  // namespace

TEST_CASE("unforced step is a linear Euler step") {
    const ReducedModel m = make_reduced_model(build_string(1.0, 0.1, 0.4, 40), 1e-3, 0.1);
    const ForceHistory h = history_of({0.0, 0.0, 0.0, 0.0});
    const Eigen::Vector2d y(0.3, -1.2);
    const Eigen::Vector2d expected = y + 1e-3 * (m.A * y);
    CHECK((step_slip(m, 3, h, y) - expected).cwiseAbs().maxCoeff() == 0.0);
    CHECK(memory_term(m, 3, h) == 0.0);
    CHECK(memory_term(m, 0, h) == 0.0);
}

TEST_CASE("memory term matches its defining sum") {
    const ModalStructure s = build_string(1.0, 0.1, 0.4, 30);
    const double dt = 2e-3;
    const ReducedModel m = make_reduced_model(s, dt, 0.1);
    ForceHistory h;
    for (int i = 0; i < 20; ++i) h.push(std::cos(0.3 * i) + 0.1 * i);
    const auto W = [&](std::size_t j) {
        return (kernel_L1((j + 1) * dt, s) - kernel_L1(j * dt, s)) / dt;
    };
    for (std::size_t q : {1u, 2u, 7u, 19u}) {
        double ref = W(q) * h[0];
        for (std::size_t j = 1; j + 1 <= q; ++j) ref += W(j) * (h[q - j] - h[q - j - 1]);
        CHECK(std::abs(memory_term(m, q, h) - ref) < 1e-11 * (1.0 + std::abs(ref)));
    }
}

TEST_CASE("one-mode reduction equals the one-mode ODE") {
    const ModalStructure s = build_string(1.0, 0.1, 0.4, 1);
    const double dt = 1e-3;
    const ReducedModel m = make_reduced_model(s, dt, 0.5);
    CHECK(m.linf == doctest::Approx(s.contact[0] * s.contact[0]).epsilon(1e-15));
    for (double w : m.weights) CHECK(std::abs(w) < 1e-12);

    const double n = s.contact[0], om = s.omega[0], d = s.damping[0];
    double x = 0.4 / n, v = -0.7 / n;
    Eigen::Vector2d y(0.4, -0.7);
    ForceHistory h;
    for (std::size_t q = 0; q < 500; ++q) {
        const double f = std::sin(3.0 * q * dt) + 0.5;
        h.push(f);
        y = step_slip(m, q, h, y);
        const double a = -2.0 * d * om * v - om * om * x + n * f;
        x += dt * v;
        v += dt * a;
        CHECK(std::abs(y[0] - n * x) < 1e-12);
        CHECK(std::abs(y[1] - n * v) < 1e-12);
    }
}

TEST_CASE("stick force examples") {
    const ReducedModel m = make_reduced_model(build_string(1.0, 0.1, 0.4, 40), 1e-3, 0.1);
    CHECK(stick_force(m, 3, history_of({0.0, 0.0, 0.0}), Eigen::Vector2d::Zero()) == 0.0);

    const ModalStructure one = build_string(1.0, 0.1, 0.4, 1);
    const ReducedModel m1 = make_reduced_model(one, 1e-3, 0.1);
    const Eigen::Vector2d y(0.8, 1.5);
    const FullModalState lifted = lift_initial_state(one, y);
    CHECK(stick_force(m1, 2, history_of({1.0, -2.0}), y) ==
          doctest::Approx(sliding_force(lifted, one)).epsilon(1e-13));
}

TEST_CASE("unbounded friction band sticks forever") {
    FrictionLaw law;
    law.mu = std::numeric_limits<double>::infinity();
    const Trajectory t = simulate(build_string(1.0, 0.1, 0.4, 40), law, {0.3, law.v0}, 1.0, 1e-3);
    REQUIRE(t.events.size() == 1);
    CHECK(t.events[0].kind == EventKind::stick_on);
    CHECK(t.events[0].step == 0);
    for (std::size_t q = 0; q < t.size(); ++q) {
        CHECK(t.phase[q] == Phase::stick);
        CHECK(t.y[q][1] == law.v0);
    }
}

TEST_CASE("zero input stays at rest") {
    FrictionLaw law;
    law.v0 = 0.0;
    const Trajectory t = simulate(build_string(1.0, 0.1, 0.4, 40), law, Eigen::Vector2d::Zero(), 1.0, 1e-3);
    for (std::size_t q = 0; q < t.size(); ++q) {
        CHECK(t.y[q].cwiseAbs().maxCoeff() == 0.0);
        CHECK(t.fc[q] == 0.0);
    }
}

TEST_CASE("bowed string run keeps the stick constraint") {
    const FrictionLaw law;
    const Trajectory t = simulate(build_string(1.0, 0.1, 0.4, 160), law, bowed_y0, 8.0, 5e-4);
    CHECK(t.size() == 16001);
    CHECK(t.times.back() == doctest::Approx(8.0));
    CHECK(t.stick_phase_count() >= 3);
    CHECK(t.phase[0] == Phase::slip);
    CHECK(t.fc[0] == slip_contact_force(bowed_y0[1] - law.v0, law));
    std::size_t next_event = 0;
    for (std::size_t q = 0; q < t.size(); ++q) {
        if (t.phase[q] == Phase::stick) {
            CHECK(std::abs(t.y[q][1] - law.v0) <= 1e-12);
            CHECK(std::abs(t.fc[q]) <= law.mu);
        }
        const bool changed = q > 0 && t.phase[q] != t.phase[q - 1];
        const bool at_event = next_event < t.events.size() && t.events[next_event].step == q;
        CHECK(changed == at_event);
        if (at_event) {
            CHECK((t.events[next_event].kind == EventKind::stick_on) == (t.phase[q] == Phase::stick));
            ++next_event;
        }
    }
    CHECK(next_event == t.events.size());
    for (const PhaseEvent& e : t.events) {
        if (e.kind == EventKind::stick_on) CHECK(e.force_gap == std::abs(t.fc[e.step] - e.slip_force_limit));
    }
}

TEST_CASE("slip segments converge at first order") {
    const ModalStructure s = build_string(1.0, 0.1, 0.4, 40);
    const FrictionLaw law;
    const Trajectory a = simulate(s, law, bowed_y0, 0.1, 1e-3);
    const Trajectory b = simulate(s, law, bowed_y0, 0.1, 5e-4);
    const Trajectory c = simulate(s, law, bowed_y0, 0.1, 2.5e-4);
    CHECK(a.events.empty());
    const double e1 = max_diff_on(a, b, 0.1);
    const double e2 = max_diff_on(b, c, 0.1);
    CHECK(e1 / e2 > 1.6);
    CHECK(e1 / e2 < 2.5);
}

TEST_CASE("stick onset gap shrinks with the mode count") {
    const FrictionLaw law;
    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t N : {20u, 40u, 80u, 160u}) {
        const Trajectory t = simulate(build_string(1.0, 0.1, 0.4, N), law, bowed_y0, 3.0, 5e-4);
        const std::size_t e = t.first_event(EventKind::stick_on);
        REQUIRE(e < t.events.size());
        CHECK(t.events[e].force_gap < prev);
        prev = t.events[e].force_gap;
    }
}

TEST_CASE("simulation errors") {
    const ModalStructure s = build_string(1.0, 0.1, 0.4, 20);
    const ReducedModel m = make_reduced_model(s, 1e-3, 0.1);
    const FrictionLaw law;
    CHECK_THROWS_AS(simulate(m, law, bowed_y0, 1.0), std::out_of_range);
    CHECK_NOTHROW(simulate(m, law, bowed_y0, 0.1));
    const ForceHistory h = history_of({0.0});
    CHECK_THROWS_AS(memory_term(m, 10000, h), std::out_of_range);
    CHECK_THROWS_AS(simulate(m, law, {std::nan(""), 0.0}, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(simulate(s, law, bowed_y0, 0.0, 1e-3), std::invalid_argument);

    KernelTable zero;
    zero.dt = 1e-3;
    zero.horizon = 10;
    zero.L0.assign(11, Eigen::Vector2d::Zero());
    zero.L1.assign(11, Eigen::Vector2d::Zero());
    const ReducedModel degenerate = make_reduced_model(Eigen::Matrix2d::Zero(), zero);
    CHECK_THROWS_AS(stick_force(degenerate, 1, h, Eigen::Vector2d::Zero()), SingularityError);
}

TEST_CASE("stick force rate") {
    const ReducedModel m = make_reduced_model(build_string(1.0, 0.1, 0.4, 40), 1e-3, 0.1);
    CHECK(stick_force_rate(m, Eigen::Vector2d::Zero(), 0.0, 0.0) == 0.0);
    const ReducedModel beam = make_reduced_model(build_beam(0.02, 20), 1e-3, 0.1);
    CHECK_THROWS_AS(stick_force_rate(beam, Eigen::Vector2d::Zero(), 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("rate integration agrees with implicit stick forces when resolved") {
    const double T = 0.5;
    const ReducedModel m = make_reduced_model(build_string(1.0, 0.1, 0.4, 16000), 5e-4, T);
    const Trajectory t = simulate(m, FrictionLaw{}, bowed_y0, T);
    const std::size_t e = t.first_event(EventKind::stick_on);
    REQUIRE(e < t.events.size());
    const std::vector<double> F = integrate_stick_force_by_rate(m, t, e);
    REQUIRE(F.size() > 10);
    CHECK(F.front() == t.events[e].slip_force_limit);
    double diff = 0.0, scale = 0.0;
    for (std::size_t j = 0; j < F.size(); ++j) {
        diff = std::max(diff, std::abs(F[j] - t.fc[t.events[e].step + j]));
        scale = std::max(scale, std::abs(t.fc[t.events[e].step + j]));
    }
    CHECK(diff / scale < 0.05);
    CHECK_THROWS_AS(integrate_stick_force_by_rate(m, t, t.events.size()), std::invalid_argument);
}

TEST_CASE("serial and blocked history give the same run") {
    const ReducedModel m = make_reduced_model(build_string(1.0, 0.1, 0.4, 80), 5e-4, 3.0);
    const Trajectory a = simulate(m, FrictionLaw{}, bowed_y0, 3.0, {true});
    const Trajectory b = simulate(m, FrictionLaw{}, bowed_y0, 3.0, {false});
    REQUIRE(a.events.size() == b.events.size());
    for (std::size_t i = 0; i < a.events.size(); ++i) CHECK(a.events[i].step == b.events[i].step);
    double d = 0.0;
    for (std::size_t q = 0; q < a.size(); ++q) d = std::max(d, (a.y[q] - b.y[q]).cwiseAbs().maxCoeff());
    CHECK(d < 1e-10);
}
