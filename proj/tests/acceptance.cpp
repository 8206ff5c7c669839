// Acceptance run: one PASS/FAIL line per criterion.
#include "mzfric/config.hpp"
#include "mzfric/experiments.hpp"
#include "mzfric/friction.hpp"
#include "mzfric/full_sim.hpp"
#include "mzfric/kernel.hpp"
#include "mzfric/reduced_sim.hpp"
#include "mzfric/verify.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <numbers>
#include <sstream>
#include <string>

using namespace mzfric;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void criterion(const std::string& id, double limit_seconds, const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < limit_seconds;
    const bool pass = o.pass && in_time;
    if (!pass) ++failures;
    std::cout << (pass ? "PASS " : "FAIL ") << id << "  " << o.detail << "  [" << secs << " s"
              << (in_time ? "" : ", over time limit") << "]" << std::endl;
}

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(6);
    s << v;
    return s.str();
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

int main(int argc, char** argv) {
    const std::filesystem::path out = argc > 1 ? argv[1] : "acceptance_out";
    const ExperimentConfig cfg;
    const double pi = std::numbers::pi;

    criterion("AC1 kernel jump", 1.0, [] {
        const double damped = kernel_L1(0.05, build_string(1.0, 0.1, 0.4, 2000));
        const double undamped = kernel_L1(0.05, build_string(1.0, 0.0, 0.4, 2000));
        const double target = std::acos(0.1) / (2.0 * std::numbers::pi * std::sqrt(0.99));
        const double r1 = std::abs(damped / target - 1.0);
        const double r0 = std::abs(undamped / 0.25 - 1.0);
        return Outcome{r1 < 0.02 && r0 < 0.02, "D=0.1: " + fmt(damped) + " vs " + fmt(target) +
                                                   ", D=0: " + fmt(undamped) + " vs 0.25"};
    });

    criterion("AC2 static kernel limit", 1.0, [&] {
        const double linf = kernel_Linf(build_string(1.0, 0.1, 0.4, 100000))[1];
        const double target = pi * pi * 0.4 * 0.6 / 2.0;
        return Outcome{std::abs(linf - target) < 1e-4, fmt(linf) + " vs " + fmt(target)};
    });

    criterion("AC3 orthogonal dynamics identity", 10.0, [] {
        double worst = 0.0;
        for (std::size_t i = 0; i < 20; ++i) {
            worst = std::max(worst, expRQ_identity(make_random_system(3 + i % 8, 1 + i), {0.1, 1.0, 5.0}));
        }
        return Outcome{worst < 1e-10, "max residual " + fmt(worst)};
    });

    criterion("AC4 reduced equation equivalence", 10.0, [] {
        double worst = 0.0;
        for (std::uint64_t seed = 101; seed <= 103; ++seed) {
            worst = std::max(worst, mz_equivalence(make_random_system(4, seed)));
        }
        return Outcome{worst < 1e-6, "max error " + fmt(worst)};
    });

    Trajectory reduced;
    criterion("AC5 reduced vs full model", 300.0, [&] {
        const EngineRuns runs = run_engines(cfg);
        reduced = *runs.reduced;
        const CompareSummary s = summarize(*runs.reduced, *runs.full, cfg.law.v0);
        const bool ok = s.comparison.worst() <= 2e-2 && s.reduced_stick_phases >= 3 && s.full_stick_phases >= 3 &&
                        s.reduced_plateau_deviation <= 1e-6 && s.full_plateau_deviation <= 1e-6;
        return Outcome{ok, "rel err y1 " + fmt(s.comparison.rel_error_y1) + ", y2 " + fmt(s.comparison.rel_error_y2) +
                               ", stick phases " + std::to_string(s.reduced_stick_phases) + "/" +
                               std::to_string(s.full_stick_phases) + ", plateau dev " +
                               fmt(s.reduced_plateau_deviation) + "/" + fmt(s.full_plateau_deviation)};
    });

    criterion("AC6 stick onset gap", 600.0, [&] {
        const auto gaps = gap_convergence([&](std::size_t n) { return cfg.structure(n); }, cfg.law, cfg.y0(), cfg.T,
                                          cfg.dt, {20, 40, 80, 160});
        const CheckResult c = check_gap_table(gaps, 0.5);
        return Outcome{c.pass, c.detail + ", ratio " + fmt(c.value)};
    });

    criterion("AC7 stick force continuity", 60.0, [&] {
        if (reduced.size() == 0) reduced = simulate(cfg.structure(), cfg.law, cfg.y0(), cfg.T, cfg.dt);
        std::size_t onsets = 0, fitted = 0;
        double min_beta = INFINITY;
        bool ok = true;
        for (std::size_t e = 0; e < reduced.events.size(); ++e) {
            if (reduced.events[e].kind != EventKind::stick_on) continue;
            ++onsets;
            const HolderFit fit = stick_force_holder(reduced, e);
            if (fit.status == HolderStatus::rejected) continue;
            ++fitted;
            if (fit.status == HolderStatus::ok) {
                min_beta = std::min(min_beta, fit.beta);
                ok = ok && fit.beta > 0.8;
            }
        }
        ok = ok && fitted > 0;
        return Outcome{ok, "min beta " + fmt(min_beta) + ", " + std::to_string(fitted) + " of " +
                               std::to_string(onsets) + " onsets long enough to fit"};
    });

    criterion("AC8 kernel regularity", 60.0, [&] {
        const KernelTable s = build_kernel_table(build_string(1.0, 0.1, 0.4, 160), cfg.dt, 200.0 * cfg.dt);
        const KernelTable b = build_kernel_table(build_beam(0.02, 160), cfg.dt, 200.0 * cfg.dt);
        const double as = holder_exponent(s, default_holder_window(s));
        const double ab = holder_exponent(b, default_holder_window(b));
        return Outcome{as < 0.1 && ab > 0.2 && ab < 0.9, "string " + fmt(as) + ", beam " + fmt(ab)};
    });

    criterion("AC9 friction law", 1.0, [] {
        const FrictionLaw law;
        bool ok = friction_force(0.0, law) == 0.0;
        ok = ok && std::abs(friction_force(1e-9, law) - (4.0 + 0.32 * std::expm1(-1e-9))) <= 1e-12;
        ok = ok && std::abs(friction_force(-2.0, law) + (3.68 + 0.32 * std::exp(-2.0))) <= 1e-12;
        for (int i = 0; i <= 2000; ++i) {
            const double v = -10.0 + 0.01 * i;
            ok = ok && friction_force(-v, law) == -friction_force(v, law) && std::abs(friction_force(v, law)) <= law.mu;
        }
        return Outcome{ok, "examples, odd symmetry and bound"};
    });

    criterion("AC10 determinism", 900.0, [&] {
        std::filesystem::remove_all(out);
        run_figure5(cfg, out / "a");
        run_figure5(cfg, out / "b");
        std::size_t files = 0;
        bool same = true;
        for (const auto& entry : std::filesystem::directory_iterator(out / "a")) {
            ++files;
            same = same && slurp(entry.path()) == slurp(out / "b" / entry.path().filename());
        }
        return Outcome{same && files == 5, std::to_string(files) + " CSV files compared"};
    });

    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
