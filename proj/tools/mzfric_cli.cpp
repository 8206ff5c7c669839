#include "mzfric/config.hpp"
#include "mzfric/experiments.hpp"

#include <CLI11.hpp>

#include <exception>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

namespace {

struct Overrides {
    std::string config;
    std::string out;
    std::optional<std::size_t> modes;
    std::string engine;
};

mzfric::ExperimentConfig resolve(const Overrides& o) {
    mzfric::ExperimentConfig cfg = o.config.empty() ? mzfric::ExperimentConfig{} : mzfric::load_config(o.config);
    if (!o.out.empty()) cfg.output = o.out;
    if (o.modes) cfg.mode_count = *o.modes;
    if (!o.engine.empty()) cfg.engine = mzfric::parse_engine(o.engine);
    cfg.validate();
    return cfg;
}

void print_trajectory_line(const char* name, const mzfric::Trajectory& t) {
    std::cout << name << ": " << t.size() << " samples, " << t.stick_phase_count() << " stick phases\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reduced-order stick-slip simulation of structures with point-contact friction"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    Overrides ov;
    app.add_option("--config", ov.config, "key = value configuration file")->check(CLI::ExistingFile);
    app.add_option("--out", ov.out, "output directory");
    app.add_option("--modes", ov.modes, "mode count N")->check(CLI::PositiveNumber);
    app.add_option("--engine", ov.engine, "reduced, full or both")
        ->check(CLI::IsMember({"reduced", "full", "both"}));

    auto* kernel = app.add_subcommand("kernel", "tabulate the memory kernels to kernel.csv");
    auto* sim = app.add_subcommand("simulate", "run the selected engine(s) and write trajectories");
    auto* compare = app.add_subcommand("compare", "run both engines and report their difference");
    auto* verify = app.add_subcommand("verify", "numerical identity and convergence checks");
    std::string suite = "all";
    verify->add_option("--suite", suite, "mz, expm, holder, gap or all")
        ->check(CLI::IsMember({"mz", "expm", "holder", "gap", "all"}));
    auto* fig5 = app.add_subcommand("figure5", "bowed-string trajectories of both engines and the gap table");
    auto* dump = app.add_subcommand("config", "print the resolved configuration");

    CLI11_PARSE(app, argc, argv);

    try {
        const mzfric::ExperimentConfig cfg = resolve(ov);
        const std::filesystem::path out = cfg.output;
        std::cout << std::setprecision(10);

        if (*kernel) {
            const auto res = mzfric::run_kernel_export(cfg, out);
            std::cout << "wrote " << res.path.string() << "\n"
                      << "L_inf_2 = " << res.linf << "\n";
            if (res.holder) std::cout << "holder_exponent = " << *res.holder << "\n";
            else std::cout << "holder_exponent = n/a (L1 not positive on the fit window)\n";
            if (res.jump) std::cout << "L1_jump = " << *res.jump << "\n";
        } else if (*sim) {
            const auto runs = mzfric::run_simulate(cfg, out);
            if (runs.reduced) print_trajectory_line("reduced", *runs.reduced);
            if (runs.full) print_trajectory_line("full", *runs.full);
        } else if (*compare) {
            const auto s = mzfric::run_compare(cfg, out);
            std::cout << "rel_error_y1 = " << s.comparison.rel_error_y1 << "\n"
                      << "rel_error_y2 = " << s.comparison.rel_error_y2 << "\n"
                      << "stick phases (reduced, full) = " << s.reduced_stick_phases << ", "
                      << s.full_stick_phases << "\n";
            return s.comparison.worst() <= cfg.threshold_compare ? 0 : 1;
        } else if (*verify) {
            const auto checks = mzfric::run_verify(cfg, suite);
            bool ok = true;
            for (const auto& c : checks) {
                std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << " value=" << c.value
                          << " threshold=" << c.threshold;
                if (!c.detail.empty()) std::cout << " (" << c.detail << ")";
                std::cout << "\n";
                ok = ok && c.pass;
            }
            return ok ? 0 : 1;
        } else if (*fig5) {
            const auto r = mzfric::run_figure5(cfg, out);
            print_trajectory_line("reduced", r.reduced);
            print_trajectory_line("full", r.full);
            for (const auto& g : r.gaps) {
                std::cout << "N=" << g.modes << " gap=";
                if (g.gap) std::cout << *g.gap;
                else std::cout << "none";
                std::cout << "\n";
            }
        } else if (*dump) {
            mzfric::write_config(std::cout, cfg);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
