#include <sstream>
#include <string>

#include "doctest.h"
#include "wpc/run.hpp"

using namespace wpc;

namespace {

SimConfig small(const char* name = "canonical") {
    SimConfig c = load_config_file(std::string(WPC_CONFIG_DIR) + "/" + name + ".json");
    c.grid.N = 32;
    c.time.T = 0.05;
    c.time.snapshot_times = {0.0, 0.05};
    return c;
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

std::size_t count_lines(const std::string& s) {
    std::size_t n = 0;
    for (char ch : s) n += ch == '\n';
    return n;
}

} // namespace

TEST_SUITE("run") {

TEST_CASE("T = 0 produces a single report") {
    SimConfig c = small();
    c.time.T = 0.0;
    c.time.snapshot_times = {0.0};
    const RunResult r = simulate(c);
    CHECK(r.reports.size() == 1);
    CHECK(r.steps.empty());
    CHECK(r.snapshots.size() == 1);
    CHECK(r.reports[0].t == 0.0);
}

TEST_CASE("reports follow the output stride") {
    SimConfig c = small();
    c.time.output_stride = 10;
    const RunResult r = simulate(c);
    CHECK(r.reports.size() == 6);
    CHECK(r.steps.size() == 50);
    CHECK(r.reports.back().t == doctest::Approx(0.05));
    REQUIRE(r.snapshots.size() == 2);
    CHECK(r.snapshots[0].t == 0.0);
    CHECK(r.snapshots[1].t == doctest::Approx(0.05));
}

TEST_CASE("zero data give identically zero energies") {
    const RunResult r = simulate(small("zero"));
    for (const EnergyReport& e : r.reports) {
        CHECK(e.E[0] == 0.0);
        CHECK(e.E_tau == 0.0);
        CHECK(e.acoustic.total == 0.0);
        CHECK(e.heat_residual == 0.0);
        CHECK(e.alpha_min == 1.0);
    }
}

TEST_CASE("timeseries CSV layout") {
    const RunResult r = simulate(small());
    std::ostringstream os;
    write_timeseries_csv(os, r.reports);
    CHECK(first_line(os.str()) ==
          "t,E0,E1,E2,E_tau,D0,D1,D2,cal_E0,cal_E1,acE1,acE2,acE3,acE_total,lambda,frakF,"
          "alpha_min,picard_iters,heat_residual,acoustic_residual");
    CHECK(count_lines(os.str()) == r.reports.size() + 1);

    std::ostringstream snap;
    write_snapshot_csv(snap, r.snapshots.back());
    CHECK(first_line(snap.str()) == "x,p,p_t,theta,q_at_left_face");
    CHECK(count_lines(snap.str()) == 33);
}

TEST_CASE("output is byte-for-byte reproducible") {
    const SimConfig c = small();
    std::ostringstream a, b;
    write_timeseries_csv(a, simulate(c).reports);
    write_timeseries_csv(b, simulate(c).reports);
    CHECK(a.str() == b.str());
}

TEST_CASE("sweep and mode CSV layout") {
    SimConfig c = small("sweep");
    const SweepResult s = tau_sweep(c, {0.1, 0.05});
    std::ostringstream os;
    write_sweep_csv(os, s);
    CHECK(first_line(os.str()) == "tau,e_theta,e_p,e_pt");
    CHECK(count_lines(os.str()) == 3);
    CHECK(s.entries[0].tau == 0.1);
    CHECK(s.entries[0].e_theta > s.entries[1].e_theta);

    SimConfig m = small("modes");
    const auto samples = mode_study(m);
    std::ostringstream ms;
    write_modes_csv(ms, samples);
    CHECK(first_line(ms.str()) == "t,numeric,oracle,abs_err");
    CHECK(samples.front().t == 0.0);
    CHECK(samples.front().abs_err == 0.0);
    for (const ModeSample& x : samples) CHECK(x.abs_err == doctest::Approx(std::abs(x.numeric - x.oracle)));
}

} // TEST_SUITE
