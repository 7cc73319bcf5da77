// Command-line front end: simulate, limit-sweep, verify, modes.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wpc/run.hpp"
#include "wpc/verify.hpp"

namespace fs = std::filesystem;

namespace {

enum Exit { ok = 0, other_error = 1, config_error = 2, degenerate = 3, picard_diverged = 4, verify_failed = 5 };

struct Options {
    std::string config;
    std::string out = ".";
    std::string tau;
    bool quiet = false;
};

std::vector<double> parse_tau_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size()) throw wpc::ValidationError("--tau", "not a number: '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) throw wpc::ValidationError("--tau", "empty list");
    return out;
}

wpc::SimConfig load(const Options& o) {
    wpc::SimConfig c = wpc::load_config_file(o.config);
    if (!o.tau.empty()) c.tau_list = parse_tau_list(o.tau);
    return c;
}

void write_file(const fs::path& path, auto&& writer) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw wpc::SimError("cannot write " + path.string());
    writer(os);
}

int run_simulate(const Options& o) {
    wpc::SimConfig c = load(o);
    if (!o.tau.empty()) {
        if (c.tau_list.size() != 1) throw wpc::ValidationError("--tau", "simulate takes a single value");
        if (!(c.tau_list[0] >= 0.0)) throw wpc::ValidationError("--tau", "must be nonnegative");
        c.params.tau = c.tau_list[0];
    }
    const wpc::RunResult r = wpc::simulate(c);
    fs::create_directories(o.out);
    write_file(fs::path(o.out) / "timeseries.csv", [&](std::ostream& os) { wpc::write_timeseries_csv(os, r.reports); });
    for (std::size_t k = 0; k < r.snapshots.size(); ++k) {
        write_file(fs::path(o.out) / ("snapshot_" + std::to_string(k) + ".csv"),
                   [&](std::ostream& os) { wpc::write_snapshot_csv(os, r.snapshots[k]); });
    }
    if (!o.quiet) {
        int max_iter = 0;
        double alpha_min = 1.0;
        for (const auto& s : r.steps) {
            max_iter = std::max(max_iter, s.iterations);
            alpha_min = std::min(alpha_min, s.alpha_min);
        }
        std::printf("steps=%zu max_picard_iters=%d min_alpha=%.6g\n", r.steps.size(), max_iter, alpha_min);
    }
    return ok;
}

int run_sweep(const Options& o) {
    const wpc::SimConfig c = load(o);
    if (c.tau_list.empty()) throw wpc::ValidationError("sweep.tau_list", "required for limit-sweep");
    const wpc::SweepResult s = wpc::tau_sweep(c, c.tau_list);
    fs::create_directories(o.out);
    write_file(fs::path(o.out) / "sweep.csv", [&](std::ostream& os) { wpc::write_sweep_csv(os, s); });
    write_file(fs::path(o.out) / "timeseries_reference.csv",
               [&](std::ostream& os) { wpc::write_timeseries_csv(os, s.reference_reports); });
    for (std::size_t i = 0; i < s.entries.size(); ++i) {
        char name[48];
        std::snprintf(name, sizeof name, "timeseries_tau_%02zu.csv", i);
        write_file(fs::path(o.out) / name,
                   [&](std::ostream& os) { wpc::write_timeseries_csv(os, s.entries[i].reports); });
    }
    if (!o.quiet) {
        for (const auto& e : s.entries) {
            std::printf("tau=%-10g e_theta=%.6e e_p=%.6e e_pt=%.6e\n", e.tau, e.e_theta, e.e_p, e.e_pt);
        }
    }
    return ok;
}

int run_verify(const Options& o) {
    const wpc::SimConfig c = load(o);
    std::vector<wpc::CheckResult> checks = wpc::operator_exactness_checks(c);
    for (auto&& r : wpc::manufactured_solution_checks()) checks.push_back(std::move(r));
    for (auto&& r : wpc::energy_balance_checks(c)) checks.push_back(std::move(r));
    fs::create_directories(o.out);
    write_file(fs::path(o.out) / "verify.csv", [&](std::ostream& os) { wpc::write_verify_csv(os, checks); });
    bool all = true;
    for (const auto& r : checks) {
        all = all && r.passed;
        if (!r.passed) std::fprintf(stderr, "check failed: %s value=%.6g threshold=%.6g\n", r.name.c_str(), r.value, r.threshold);
        if (!o.quiet) std::printf("%s %s value=%.6g threshold=%.6g\n", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.value, r.threshold);
    }
    return all ? ok : verify_failed;
}

int run_modes(const Options& o) {
    wpc::SimConfig c = load(o);
    if (!o.tau.empty()) {
        if (c.tau_list.size() != 1) throw wpc::ValidationError("--tau", "modes takes a single value");
        if (!(c.tau_list[0] >= 0.0)) throw wpc::ValidationError("--tau", "must be nonnegative");
        c.params.tau = c.tau_list[0];
    }
    const auto samples = wpc::mode_study(c);
    fs::create_directories(o.out);
    write_file(fs::path(o.out) / "modes.csv", [&](std::ostream& os) { wpc::write_modes_csv(os, samples); });
    if (!o.quiet) {
        double worst = 0.0;
        for (const auto& m : samples) worst = std::max(worst, m.abs_err);
        std::printf("samples=%zu max_abs_err=%.6e\n", samples.size(), worst);
    }
    return ok;
}

int report(const std::exception_ptr& error) {
    try {
        std::rethrow_exception(error);
    } catch (const wpc::SweepMemberFailed& e) {
        std::fprintf(stderr, "sweep member tau=%g failed\n", e.tau);
        return report(e.cause);
    } catch (const wpc::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return config_error;
    } catch (const wpc::Degenerate& e) {
        std::fprintf(stderr, "degenerate: step=%ld t=%.17g node=%zu alpha_min=%.17g\n", e.step, e.time, e.node, e.alpha_min);
        return degenerate;
    } catch (const wpc::PicardDiverged& e) {
        std::fprintf(stderr, "picard diverged: step=%ld t=%.17g iterations=%d last_difference=%.17g\n", e.step,
                     e.time, e.iterations, e.last_difference);
        return picard_diverged;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return other_error;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Westervelt-Pennes-Cattaneo thermo-acoustic simulator"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", o.config, "JSON configuration file")->required();
        sub->add_option("--out", o.out, "output directory");
        sub->add_option("--tau", o.tau, "comma-separated relaxation times overriding the config");
        sub->add_flag("--quiet", o.quiet, "suppress the summary on stdout");
    };
    CLI::App* simulate = app.add_subcommand("simulate", "coupled run; writes timeseries.csv and snapshots");
    CLI::App* sweep = app.add_subcommand("limit-sweep", "tau -> 0 sweep; writes sweep.csv and per-tau time series");
    CLI::App* verify = app.add_subcommand("verify", "operator, manufactured-solution and energy checks");
    CLI::App* modes = app.add_subcommand("modes", "single-mode heat conduction against the closed form");
    for (CLI::App* sub : {simulate, sweep, verify, modes}) add_common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : config_error;
    }

    try {
        if (simulate->parsed()) return run_simulate(o);
        if (sweep->parsed()) return run_sweep(o);
        if (verify->parsed()) return run_verify(o);
        return run_modes(o);
    } catch (...) {
        return report(std::current_exception());
    }
}
