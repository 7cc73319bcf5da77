#ifndef WPC_RUN_HPP
#define WPC_RUN_HPP

#include <iosfwd>
#include <optional>
#include <vector>

#include "wpc/config.hpp"
#include "wpc/energy.hpp"

namespace wpc {

struct StepStats {
    long step = 0;
    double t = 0.0;
    double alpha_min = 1.0;
    int iterations = 0;
    /// Largest d_{k+1}/d_k over the Picard iterations of the step; 0 if fewer than two.
    double max_picard_ratio = 0.0;
};

struct Snapshot {
    double t = 0.0;
    NodeField p, p_t, theta;
    FaceField q;
};

struct RunOptions {
    HeatPath path = HeatPath::automatic;
    /// Keep (p, p_t, Theta) at every output step; needed by the tau sweep.
    bool record_fields = false;
};

struct RunResult {
    std::vector<EnergyReport> reports;   // step 0 and every output_stride steps
    std::vector<Snapshot> snapshots;     // one per configured snapshot time, in config order
    std::vector<StepStats> steps;        // every accepted step
    std::vector<Snapshot> output_fields; // aligned with reports when record_fields is set
    std::optional<CoupledState> final_state;
};

/// Integrates the coupled system from 0 to T. Deterministic for a fixed config.
RunResult simulate(const SimConfig& config, const RunOptions& options = {});

struct SweepEntry {
    double tau = 0.0;
    double e_theta = 0.0;
    double e_p = 0.0;
    double e_pt = 0.0;
    std::vector<EnergyReport> reports;
};

struct SweepResult {
    std::vector<SweepEntry> entries; // ordered by tau, descending
    std::vector<EnergyReport> reference_reports;
    long reference_steps = 0;
    double dt = 0.0;
    double T = 0.0;
};

/// Runs the config once per tau (Cattaneo path) and once with tau = 0 (Fourier path), and
/// measures max over output times of the L2 distance to the reference. Member runs execute
/// concurrently. Failures are rethrown as SweepMemberFailed carrying the tau (0 = reference).
SweepResult tau_sweep(const SimConfig& base, const std::vector<double>& tau_list);

struct ModeSample {
    double t = 0.0;
    double numeric = 0.0;
    double oracle = 0.0;
    double abs_err = 0.0;
};

/// Unforced heat conduction from Theta0 = A sin(k pi x / L), q0 = 0, compared with the
/// closed-form telegraph solution at the discrete eigenvalue. A = amplitude_theta, or 1 if zero.
std::vector<ModeSample> mode_study(const SimConfig& config);

void write_timeseries_csv(std::ostream& os, const std::vector<EnergyReport>& reports);
void write_snapshot_csv(std::ostream& os, const Snapshot& snapshot);
void write_sweep_csv(std::ostream& os, const SweepResult& sweep);
void write_modes_csv(std::ostream& os, const std::vector<ModeSample>& samples);

} // namespace wpc

#endif
