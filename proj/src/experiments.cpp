#include "mzfric/experiments.hpp"

#include "mzfric/csv_io.hpp"
#include "mzfric/full_sim.hpp"
#include "mzfric/kernel.hpp"
#include "mzfric/reduced_sim.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace mzfric {

namespace {

std::size_t full_stride(const ExperimentConfig& cfg) {
    const double ratio = cfg.dt / cfg.full_dt;
    const auto stride = std::llround(ratio);
    if (stride < 1 || std::abs(ratio - static_cast<double>(stride)) > 1e-9 * ratio) {
        throw std::invalid_argument("dt must be an integer multiple of full_dt");
    }
    return static_cast<std::size_t>(stride);
}

Trajectory reduced_run(const ExperimentConfig& cfg) {
    return simulate(cfg.structure(), cfg.law, cfg.y0(), cfg.T, cfg.dt);
}

Trajectory full_run(const ExperimentConfig& cfg) {
    const ModalStructure s = cfg.structure();
    FullOptions opt;
    opt.dt = cfg.full_dt;
    opt.output_stride = full_stride(cfg);
    return simulate_full(s, cfg.law, lift_initial_state(s, cfg.y0()), cfg.T, opt);
}

void write_run(const std::filesystem::path& dir, const std::string& stem, const Trajectory& traj) {
    write_file(dir / (stem + ".csv"), [&](std::ostream& o) { write_trajectory_csv(o, traj); });
    write_file(dir / (stem + "_events.csv"), [&](std::ostream& o) { write_events_csv(o, traj); });
}

double plateau_deviation(const Trajectory& traj, double v0) {
    double worst = 0.0;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        if (traj.phase[i] == Phase::stick) worst = std::max(worst, std::abs(traj.y[i][1] - v0));
    }
    return worst;
}

CheckResult make_check(std::string name, double value, double threshold, bool pass, std::string detail = {}) {
    return {std::move(name), value, threshold, pass, std::move(detail)};
}

std::vector<CheckResult> verify_expm(const ExperimentConfig& cfg) {
    const std::vector<double> ts{0.1, 1.0, 5.0};
    double worst = 0.0, worst_noise = 0.0, abscissa = -INFINITY;
    for (std::size_t i = 0; i < cfg.verify_systems; ++i) {
        const RandomReducibleSystem sys = make_random_system(3 + i % 8, cfg.seed + i);
        worst = std::max(worst, expRQ_identity(sys, ts));
        worst_noise = std::max(worst_noise, noise_on_range(sys.R, sys.V, sys.W, ts));
        abscissa = std::max(abscissa, spectral_abscissa(sys.R));
    }
    return {make_check("expm.identity", worst, cfg.threshold_expm, worst < cfg.threshold_expm,
                       std::to_string(cfg.verify_systems) + " systems, 6 to 20 dimensional"),
            make_check("expm.noise_on_range", worst_noise, cfg.threshold_expm, worst_noise < cfg.threshold_expm),
            make_check("expm.spectral_abscissa", abscissa, 0.0, abscissa <= 0.0)};
}

std::vector<CheckResult> verify_mz(const ExperimentConfig& cfg) {
    double worst = 0.0;
    const std::size_t systems = std::min<std::size_t>(cfg.verify_systems, 3);
    for (std::size_t i = 0; i < systems; ++i) {
        worst = std::max(worst, mz_equivalence(make_random_system(4, cfg.seed + 100 + i)));
    }
    MzEquivalenceOptions free;
    free.zero_forcing = true;
    const double unforced = mz_equivalence(make_random_system(4, cfg.seed + 200), free);
    return {make_check("mz.forced", worst, cfg.threshold_mz, worst < cfg.threshold_mz,
                       std::to_string(systems) + " random 8-dimensional systems"),
            make_check("mz.unforced", unforced, 1e-10, unforced < 1e-10)};
}

std::vector<CheckResult> verify_holder(const ExperimentConfig& cfg) {
    std::vector<CheckResult> out;
    const Trajectory traj = reduced_run(cfg);
    std::size_t fitted = 0;
    double min_beta = INFINITY;
    for (std::size_t e = 0; e < traj.events.size(); ++e) {
        if (traj.events[e].kind != EventKind::stick_on) continue;
        const HolderFit fit = stick_force_holder(traj, e);
        if (fit.status == HolderStatus::ok) {
            ++fitted;
            min_beta = std::min(min_beta, fit.beta);
        } else if (fit.status == HolderStatus::exact_continuity) {
            ++fitted;
        }
    }
    out.push_back(make_check("holder.stick_force_beta", min_beta, cfg.threshold_holder_beta,
                             fitted > 0 && min_beta > cfg.threshold_holder_beta,
                             std::to_string(fitted) + " stick onsets fitted"));

    const KernelTable string_table = build_kernel_table(build_string(cfg.c, cfg.damping, cfg.xi_star, cfg.mode_count),
                                                        cfg.dt, 200.0 * cfg.dt);
    const double a_string = holder_exponent(string_table, default_holder_window(string_table));
    out.push_back(make_check("holder.string_kernel_alpha", a_string, 0.1, a_string < 0.1));

    const KernelTable beam_table = build_kernel_table(build_beam(0.02, cfg.mode_count), cfg.dt, 200.0 * cfg.dt);
    const double a_beam = holder_exponent(beam_table, default_holder_window(beam_table));
    out.push_back(make_check("holder.beam_kernel_alpha", a_beam, 0.2, a_beam > 0.2 && a_beam < 0.9,
                             "expected in (0.2, 0.9)"));
    return out;
}

}  // namespace

KernelExport run_kernel_export(const ExperimentConfig& cfg, const std::filesystem::path& out_dir) {
    cfg.validate();
    const KernelTable table = build_kernel_table(cfg.structure(), cfg.kernel_dt, cfg.kernel_T);
    KernelExport res;
    res.path = out_dir / "kernel.csv";
    write_file(res.path, [&](std::ostream& o) { write_kernel_csv(o, table); });
    try {
        res.holder = holder_exponent(table, default_holder_window(table));
    } catch (const std::invalid_argument&) {
        res.holder.reset();
    }
    res.jump = table.L1_jump;
    res.linf = table.Linf[1];
    return res;
}

EngineRuns run_engines(const ExperimentConfig& cfg) {
    cfg.validate();
    EngineRuns runs;
    if (cfg.engine != Engine::full) runs.reduced = reduced_run(cfg);
    if (cfg.engine != Engine::reduced) runs.full = full_run(cfg);
    return runs;
}

EngineRuns run_simulate(const ExperimentConfig& cfg, const std::filesystem::path& out_dir) {
    EngineRuns runs = run_engines(cfg);
    if (runs.reduced) write_run(out_dir, "trajectory_reduced", *runs.reduced);
    if (runs.full) write_run(out_dir, "trajectory_full", *runs.full);
    return runs;
}

CompareSummary summarize(const Trajectory& reduced, const Trajectory& full, double v0) {
    CompareSummary s;
    s.comparison = compare_trajectories(reduced, full);
    s.reduced_stick_phases = reduced.stick_phase_count();
    s.full_stick_phases = full.stick_phase_count();
    s.reduced_plateau_deviation = plateau_deviation(reduced, v0);
    s.full_plateau_deviation = plateau_deviation(full, v0);
    return s;
}

CompareSummary run_compare(const ExperimentConfig& cfg, const std::filesystem::path& out_dir) {
    ExperimentConfig both = cfg;
    both.engine = Engine::both;
    const EngineRuns runs = run_simulate(both, out_dir);
    const CompareSummary s = summarize(*runs.reduced, *runs.full, cfg.law.v0);
    write_file(out_dir / "compare.txt", [&](std::ostream& o) {
        o << std::setprecision(17) << "rel_error_y1 = " << s.comparison.rel_error_y1 << "\n"
          << "rel_error_y2 = " << s.comparison.rel_error_y2 << "\n"
          << "reduced_stick_phases = " << s.reduced_stick_phases << "\n"
          << "full_stick_phases = " << s.full_stick_phases << "\n"
          << "reduced_plateau_deviation = " << s.reduced_plateau_deviation << "\n"
          << "full_plateau_deviation = " << s.full_plateau_deviation << "\n";
    });
    return s;
}

CheckResult check_gap_table(const std::vector<GapPoint>& gaps, double ratio) {
    std::ostringstream detail;
    bool decreasing = !gaps.empty();
    for (std::size_t i = 0; i < gaps.size(); ++i) {
        detail << (i ? " " : "") << gaps[i].modes << ":";
        if (gaps[i].gap) detail << *gaps[i].gap;
        else detail << "none";
        if (!gaps[i].gap) decreasing = false;
        else if (i > 0 && gaps[i - 1].gap && !(*gaps[i].gap < *gaps[i - 1].gap)) decreasing = false;
    }
    double measured = INFINITY;
    if (decreasing && gaps.size() >= 2) measured = *gaps.back().gap / *gaps.front().gap;
    return make_check("gap.decreasing", measured, ratio, decreasing && measured < ratio, detail.str());
}

std::vector<CheckResult> run_verify(const ExperimentConfig& cfg, const std::string& suite) {
    cfg.validate();
    const bool all = suite == "all";
    if (!all && suite != "mz" && suite != "expm" && suite != "holder" && suite != "gap") {
        throw std::invalid_argument("unknown verify suite: " + suite);
    }
    std::vector<CheckResult> out;
    const auto append = [&](std::vector<CheckResult> v) { out.insert(out.end(), v.begin(), v.end()); };
    if (all || suite == "expm") append(verify_expm(cfg));
    if (all || suite == "mz") append(verify_mz(cfg));
    if (all || suite == "holder") append(verify_holder(cfg));
    if (all || suite == "gap") {
        const auto gaps = gap_convergence([&](std::size_t n) { return cfg.structure(n); }, cfg.law, cfg.y0(), cfg.T,
                                          cfg.dt, cfg.gap_modes);
        out.push_back(check_gap_table(gaps, cfg.threshold_gap_ratio));
    }
    return out;
}

Figure5Result run_figure5(const ExperimentConfig& cfg, const std::filesystem::path& out_dir) {
    cfg.validate();
    Figure5Result r{reduced_run(cfg), full_run(cfg), {}};
    r.gaps = gap_convergence([&](std::size_t n) { return cfg.structure(n); }, cfg.law, cfg.y0(), cfg.T, cfg.dt,
                             cfg.gap_modes);
    write_run(out_dir, "figure5_reduced", r.reduced);
    write_run(out_dir, "figure5_full", r.full);
    write_file(out_dir / "figure5_gap.csv", [&](std::ostream& o) { write_gap_csv(o, r.gaps); });
    return r;
}

}  // namespace mzfric
