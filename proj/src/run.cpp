#include "wpc/run.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <numbers>
#include <ostream>
#include <string>

namespace wpc {

namespace {

Snapshot snapshot_of(const CoupledState& s) {
    return {s.t, s.acoustic.p(), s.acoustic.v(), s.thermal.theta(), s.thermal.q()};
}

double max_ratio(const std::vector<double>& d) {
    double worst = 0.0;
    for (std::size_t k = 1; k < d.size(); ++k) {
        if (d[k - 1] > 0.0) worst = std::max(worst, d[k] / d[k - 1]);
    }
    return worst;
}

} // namespace

RunResult simulate(const SimConfig& config, const RunOptions& options) {
    const auto violations = validate_params(config.params, config.speed_model);
    if (!violations.empty()) throw ValidationError("params", violations.front());

    const InitialFields init = make_initial_fields(config);
    const double dt = config.time.dt;
    const long n_steps = config.time.steps();
    const long stride = config.time.output_stride;

    CoupledState state = initial_coupled_state(init.p0, init.p1, init.theta0, init.q0, dt,
                                               config.picard.gamma_bar, config.params,
                                               config.speed_model);
    RunResult result;
    XNormAccumulator x_norm;
    x_norm.observe(state.acoustic, state.thermal);

    std::vector<long> snap_steps;
    for (double t : config.time.snapshot_times) snap_steps.push_back(std::lround(t / dt));
    std::vector<std::optional<Snapshot>> snaps(snap_steps.size());

    auto record = [&](const CoupledState& s) {
        if (s.step % stride == 0) {
            result.reports.push_back(make_energy_report(s, config.params, x_norm.norms()));
            if (options.record_fields) result.output_fields.push_back(snapshot_of(s));
        }
        for (std::size_t k = 0; k < snap_steps.size(); ++k) {
            if (snap_steps[k] == s.step) snaps[k] = snapshot_of(s);
        }
    };
    record(state);

    for (long n = 1; n <= n_steps; ++n) {
        state = coupled_step(state, dt, config.picard, config.params, config.speed_model, options.path);
        x_norm.observe(state.acoustic, state.thermal);
        result.steps.push_back({state.step, state.t, state.alpha_min_last,
                                state.picard_iterations_last,
                                max_ratio(state.picard_differences_last)});
        record(state);
    }

    for (auto& s : snaps) {
        if (s) result.snapshots.push_back(std::move(*s));
    }
    result.final_state = std::move(state);
    return result;
}

SweepResult tau_sweep(const SimConfig& base, const std::vector<double>& tau_list) {
    for (std::size_t i = 0; i < tau_list.size(); ++i) {
        if (!(tau_list[i] > 0.0)) throw ValidationError("sweep.tau_list", "entries must be positive");
        if (i > 0 && tau_list[i] > tau_list[i - 1]) {
            throw ValidationError("sweep.tau_list", "must be decreasing");
        }
    }

    auto member = [&base](double tau, HeatPath path) {
        try {
            SimConfig c = base;
            c.params.tau = tau;
            return simulate(c, {path, true});
        } catch (const std::exception& e) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "tau=%.17g: ", tau);
            throw SweepMemberFailed(tau, std::current_exception(), buf + std::string(e.what()));
        }
    };

    auto reference_future = std::async(std::launch::async, member, 0.0, HeatPath::fourier);
    std::vector<std::future<RunResult>> futures;
    for (double tau : tau_list) futures.push_back(std::async(std::launch::async, member, tau, HeatPath::cattaneo));

    const RunResult reference = reference_future.get();
    SweepResult out;
    out.dt = base.time.dt;
    out.T = base.time.T;
    out.reference_steps = static_cast<long>(reference.steps.size());
    out.reference_reports = reference.reports;

    for (std::size_t i = 0; i < futures.size(); ++i) {
        RunResult run = futures[i].get();
        SweepEntry e;
        e.tau = tau_list[i];
        for (std::size_t n = 0; n < run.output_fields.size(); ++n) {
            const Snapshot& a = run.output_fields[n];
            const Snapshot& r = reference.output_fields[n];
            e.e_theta = std::max(e.e_theta, l2_norm(a.theta - r.theta));
            e.e_p = std::max(e.e_p, l2_norm(a.p - r.p));
            e.e_pt = std::max(e.e_pt, l2_norm(a.p_t - r.p_t));
        }
        e.reports = std::move(run.reports);
        out.entries.push_back(std::move(e));
    }
    std::stable_sort(out.entries.begin(), out.entries.end(),
                     [](const SweepEntry& a, const SweepEntry& b) { return a.tau > b.tau; });
    return out;
}

std::vector<ModeSample> mode_study(const SimConfig& config) {
    const PhysicalParams& params = config.params;
    const Grid1D g = config.make_grid();
    const int k = config.initial_data.mode_k;
    if (k < 1 || static_cast<std::size_t>(k) > g.nodes()) throw InvalidMode("mode index out of range");
    const double amplitude =
        config.initial_data.amplitude_theta != 0.0 ? config.initial_data.amplitude_theta : 1.0;
    const double wave = k * std::numbers::pi / g.length();
    const NodeField shape = NodeField::from_function(g, [&](double x) { return std::sin(wave * x); });
    const double shape_sq = l2_inner(shape, shape);
    const double lambda = g.eigenvalue(k);
    const double rate0 = -params.ell() * amplitude / params.m();

    const NodeField f(g);
    const double dt = config.time.dt;
    ThermalState state = thermal_initial_state(amplitude * shape, FaceField(g), f, dt, params);

    std::vector<ModeSample> out;
    auto sample = [&](long n) {
        const double t = n * dt;
        const double numeric = l2_inner(state.theta(), shape) / shape_sq;
        const double oracle = telegraph_mode_oracle(params, lambda, amplitude, rate0, t);
        out.push_back({t, numeric, oracle, std::abs(numeric - oracle)});
    };
    sample(0);
    const long n_steps = config.time.steps();
    for (long n = 1; n <= n_steps; ++n) {
        state = params.tau == 0.0 ? fourier_state_step(state, f, dt, params)
                                  : cattaneo_step(state, f, dt, params);
        if (n % config.time.output_stride == 0) sample(n);
    }
    return out;
}

namespace {

struct CsvRow {
    std::string text;
    CsvRow& operator<<(double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return append(buf);
    }
    CsvRow& operator<<(int v) { return append(std::to_string(v)); }
    CsvRow& append(const std::string& s) {
        if (!text.empty()) text += ',';
        text += s;
        return *this;
    }
};

std::ostream& operator<<(std::ostream& os, const CsvRow& row) { return os << row.text << '\n'; }

} // namespace

void write_timeseries_csv(std::ostream& os, const std::vector<EnergyReport>& reports) {
    os << "t,E0,E1,E2,E_tau,D0,D1,D2,cal_E0,cal_E1,acE1,acE2,acE3,acE_total,lambda,frakF,"
          "alpha_min,picard_iters,heat_residual,acoustic_residual\n";
    for (const EnergyReport& r : reports) {
        CsvRow row;
        row << r.t << r.E[0] << r.E[1] << r.E[2] << r.E_tau << r.D[0] << r.D[1] << r.D[2]
            << r.theta.cal_E0 << r.theta.cal_E1 << r.acoustic.E1 << r.acoustic.E2 << r.acoustic.E3
            << r.acoustic.total << r.coefficients.lambda << r.coefficients.frakF << r.alpha_min
            << r.picard_iterations << r.heat_residual << r.acoustic_residual;
        os << row;
    }
}

void write_snapshot_csv(std::ostream& os, const Snapshot& s) {
    os << "x,p,p_t,theta,q_at_left_face\n";
    for (std::size_t j = 0; j < s.p.size(); ++j) {
        CsvRow row;
        row << s.p.x(j) << s.p[j] << s.p_t[j] << s.theta[j] << s.q[j];
        os << row;
    }
}

void write_sweep_csv(std::ostream& os, const SweepResult& sweep) {
    os << "tau,e_theta,e_p,e_pt\n";
    for (const SweepEntry& e : sweep.entries) {
        CsvRow row;
        row << e.tau << e.e_theta << e.e_p << e.e_pt;
        os << row;
    }
}

void write_modes_csv(std::ostream& os, const std::vector<ModeSample>& samples) {
    os << "t,numeric,oracle,abs_err\n";
    for (const ModeSample& m : samples) {
        CsvRow row;
        row << m.t << m.numeric << m.oracle << m.abs_err;
        os << row;
    }
}

} // namespace wpc
