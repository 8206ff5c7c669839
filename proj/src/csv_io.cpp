#include "mzfric/csv_io.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <stdexcept>

namespace mzfric {

namespace {

// Restores the stream format on scope exit.
class PrecisionGuard {
public:
    explicit PrecisionGuard(std::ostream& out) : out_(out), flags_(out.flags()), prec_(out.precision()) {
        out_.unsetf(std::ios::floatfield);
        out_ << std::setprecision(17);
    }
    ~PrecisionGuard() {
        out_.flags(flags_);
        out_.precision(prec_);
    }
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;

private:
    std::ostream& out_;
    std::ios::fmtflags flags_;
    std::streamsize prec_;
};

}  // namespace

void write_kernel_csv(std::ostream& out, const KernelTable& table) {
    PrecisionGuard guard(out);
    out << "tau,L0_1,L0_2,L1_1,L1_2\n";
    for (std::size_t q = 0; q <= table.horizon; ++q) {
        out << table.tau(q) << ',' << table.L0[q][0] << ',' << table.L0[q][1] << ',' << table.L1[q][0] << ','
            << table.L1[q][1] << '\n';
    }
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
    PrecisionGuard guard(out);
    out << "t,y1,y2,fc,phase\n";
    for (std::size_t i = 0; i < traj.size(); ++i) {
        out << traj.times[i] << ',' << traj.y[i][0] << ',' << traj.y[i][1] << ',' << traj.fc[i] << ','
            << static_cast<int>(traj.phase[i]) << '\n';
    }
}

void write_events_csv(std::ostream& out, const Trajectory& traj) {
    PrecisionGuard guard(out);
    out << "step,t,kind,force_gap,slip_force_limit\n";
    for (const PhaseEvent& e : traj.events) {
        out << e.step << ',' << e.time << ',' << (e.kind == EventKind::stick_on ? "stick_on" : "stick_off") << ','
            << e.force_gap << ',' << e.slip_force_limit << '\n';
    }
}

void write_gap_csv(std::ostream& out, const std::vector<GapPoint>& gaps) {
    PrecisionGuard guard(out);
    out << "N,gap,stick_phases\n";
    for (const GapPoint& g : gaps) {
        out << g.modes << ',';
        if (g.gap) out << *g.gap;
        out << ',' << g.stick_phases << '\n';
    }
}

void write_file(const std::filesystem::path& path, const std::function<void(std::ostream&)>& writer) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) throw std::runtime_error("cannot create directory " + path.parent_path().string() + ": " + ec.message());
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    writer(out);
    out.flush();
    if (!out) throw std::runtime_error("write to " + path.string() + " failed");
}

}  // namespace mzfric
