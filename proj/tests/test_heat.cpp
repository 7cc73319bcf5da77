#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "wpc/energy.hpp"
#include "wpc/heat.hpp"

using namespace wpc;

namespace {

PhysicalParams unit_params(double tau) {
    PhysicalParams p;
    p.tau = tau;
    return p;
}

double e_tau(const ThermalState& s, const PhysicalParams& p) {
    return 0.5 * (p.m() * p.kappa_a * l2_inner(s.theta(), s.theta()) + p.tau * l2_inner(s.q(), s.q()));
}

} // namespace

TEST_SUITE("heat") {

TEST_CASE("zero state stays zero") {
    const Grid1D g(1.0, 16);
    const PhysicalParams p = unit_params(0.1);
    const ThermalState s{NodeField(g), FaceField(g)};
    const ThermalState next = cattaneo_step(s, NodeField(g), 0.01, p);
    CHECK(linf_norm(next.theta()) == 0.0);
    CHECK(linf_norm(next.q()) == 0.0);
    CHECK(linf_norm(fourier_step(NodeField(g), NodeField(g), 0.01, p)) == 0.0);
}

TEST_CASE("tau = 0 Cattaneo step is bit-identical to the Fourier step") {
    std::mt19937_64 rng(21);
    const Grid1D g(1.3, 57);
    PhysicalParams p = unit_params(0.0);
    p.kappa_a = 0.7;
    p.W = 2.0;
    for (int trial = 0; trial < 10; ++trial) {
        const auto theta = oracle::random_field<NodeField>(g, rng);
        const auto q = oracle::random_field<FaceField>(g, rng);
        const auto f = oracle::random_field<NodeField>(g, rng);
        const ThermalState next = cattaneo_step(ThermalState(theta, q), f, 0.003, p);
        CHECK(next.theta() == fourier_step(theta, f, 0.003, p));
    }
}

TEST_CASE("single-mode Cattaneo step against the modal recurrence") {
    const Grid1D g(1.0, 128);
    const PhysicalParams p = unit_params(0.1);
    const double dt = 0.01;
    const NodeField s = oracle::sine(g);
    const FaceField gs = gradient_to_faces(s);
    const double lambda = oracle::discrete_eigenvalue(1.0, 128, 1);

    ThermalState state(s, FaceField(g));
    double a = 1.0, c = 0.0;
    for (int n = 0; n < 20; ++n) {
        const ThermalState next = cattaneo_step(state, NodeField(g), dt, p);
        const auto [r1, r2] = cattaneo_scheme_residual(state, next, NodeField(g), dt, p);
        CHECK(r1 <= 1e-10);
        CHECK(r2 <= 1e-10);
        std::tie(a, c) = oracle::heat_mode_step(1.0, 1.0, 1.0, 0.1, lambda, dt, a, c);
        CHECK(linf_norm(next.theta() - a * s) <= 1e-13);
        CHECK(linf_norm(next.q() - c * gs) <= 1e-12 * (1.0 + linf_norm(next.q())));
        state = next;
    }
}

TEST_CASE("scheme residual is small on random data") {
    std::mt19937_64 rng(4);
    const Grid1D g(2.0, 90);
    PhysicalParams p = unit_params(0.03);
    p.rho_a = 3.0;
    p.kappa_a = 0.2;
    const ThermalState s(oracle::random_field<NodeField>(g, rng), oracle::random_field<FaceField>(g, rng));
    const auto f = oracle::random_field<NodeField>(g, rng);
    const ThermalState next = cattaneo_step(s, f, 0.02, p);
    const auto [r1, r2] = cattaneo_scheme_residual(s, next, f, 0.02, p);
    CHECK(r1 <= 1e-10);
    CHECK(r2 <= 1e-10);
}

TEST_CASE("Fourier step on a discrete eigenmode") {
    const Grid1D g(1.0, 128);
    const PhysicalParams p = unit_params(0.0);
    const NodeField s = oracle::sine(g);
    const double lambda = oracle::discrete_eigenvalue(1.0, 128, 1);
    const NodeField next = fourier_step(s, NodeField(g), 0.1, p);
    CHECK(linf_norm(next - (1.0 / (1.0 + 0.1 * (1.0 + lambda))) * s) <= 1e-14);

    // Manufactured stationary forcing.
    const double A = 2.5;
    const NodeField theta = A * s;
    const NodeField f = A * (1.0 + lambda) * s;
    CHECK(linf_norm(fourier_step(theta, f, 0.1, p) - theta) <= 1e-12);
}

TEST_CASE("Fourier state step stores the Fourier flux") {
    const Grid1D g(1.0, 32);
    PhysicalParams p = unit_params(0.0);
    p.kappa_a = 3.0;
    const ThermalState s(oracle::sine(g), FaceField(g));
    const ThermalState next = fourier_state_step(s, NodeField(g), 0.01, p);
    CHECK(linf_norm(next.q() + 3.0 * gradient_to_faces(next.theta())) <= 1e-14);
    CHECK(next.t() == doctest::Approx(0.01));
}

TEST_CASE("telegraph oracle closed forms") {
    PhysicalParams p = unit_params(0.1);
    const double pi2 = oracle::pi * oracle::pi;
    CHECK(telegraph_mode_oracle(p, pi2, 1.7, -3.0, 0.0) == doctest::Approx(1.7));

    p.tau = 0.0;
    // The closed form is 0.337240; the four-digit value 0.33718 is only a rough guide.
    CHECK(telegraph_mode_oracle(p, pi2, 1.0, 0.0, 0.1) == doctest::Approx(0.33718).epsilon(2e-4));
    CHECK(telegraph_mode_oracle(p, pi2, 1.0, 0.0, 0.1) == doctest::Approx(std::exp(-(1.0 + pi2) * 0.1)).epsilon(1e-15));

    CHECK_THROWS_AS(telegraph_mode_oracle(p, -1.0, 1.0, 0.0, 0.1), InvalidMode);
}

TEST_CASE("telegraph oracle against adaptive integration") {
    struct Case {
        double tau, W, lambda, T0, T0dot;
    };
    const double pi2 = oracle::pi * oracle::pi;
    const Case cases[] = {
        {0.1, 1.0, pi2, 1.0, -1.0},   // complex roots
        {0.001, 1.0, pi2, 1.0, -2.0}, // real distinct roots
        {0.1, 0.0, 2.5, 0.7, 0.4},    // repeated root: 1 - 4 tau lambda = 0
        {0.5, 1.0, 0.0, 1.0, 0.0},    // zero eigenvalue
    };
    for (const Case& c : cases) {
        PhysicalParams p = unit_params(c.tau);
        p.W = c.W;
        for (double t : {0.05, 0.3, 1.0}) {
            const double closed = telegraph_mode_oracle(p, c.lambda, c.T0, c.T0dot, t);
            const double numeric = oracle::telegraph_numeric(p.m(), p.ell(), p.kappa_a, c.tau, c.lambda, c.T0, c.T0dot, t);
            CHECK(closed == doctest::Approx(numeric).epsilon(1e-10).scale(1.0));
            CHECK(std::abs(closed - numeric) <= 1e-10 * std::max(1.0, std::abs(numeric)));
        }
    }
}

TEST_CASE("history differencing") {
    const Grid1D g(1.0, 16);
    const NodeField s = oracle::sine(g);
    const FaceField c = oracle::cosine_faces(g);
    const double dt = 0.25;

    auto build = [&](auto profile) {
        TimeHistory<ThermalLevel> h;
        for (int i = 2; i >= 0; --i) {
            const double t = 1.0 - i * dt;
            h.push({t, profile(t) * s, profile(t) * c});
        }
        return ThermalState(std::move(h));
    };
    const ThermalState constant = build([](double) { return 2.0; });
    for (int k : {1, 2}) {
        const auto [th, q] = reconstruct_time_derivatives(constant, k);
        CHECK(linf_norm(th) == 0.0);
        CHECK(linf_norm(q) == 0.0);
    }
    const ThermalState linear = build([](double t) { return t; });
    CHECK(linf_norm(reconstruct_time_derivatives(linear, 1).first - s) <= 1e-14);
    const ThermalState quadratic = build([](double t) { return t * t; });
    CHECK(linf_norm(reconstruct_time_derivatives(quadratic, 2).first - 2.0 * s) <= 1e-13);
    CHECK(linf_norm(reconstruct_time_derivatives(quadratic, 2).second - 2.0 * c) <= 1e-13);

    const ThermalState single(s, c);
    CHECK_THROWS_AS(reconstruct_time_derivatives(single, 1), InsufficientHistory);
}

TEST_CASE("Cattaneo converges to Fourier linearly in tau") {
    const Grid1D g(1.0, 64);
    std::mt19937_64 rng(12);
    const auto theta = oracle::random_field<NodeField>(g, rng);
    const auto q = oracle::random_field<FaceField>(g, rng);
    const double dt = 0.01;
    const NodeField fourier = fourier_step(theta, NodeField(g), dt, unit_params(0.0));
    auto gap = [&](double tau) {
        return linf_norm(cattaneo_step(ThermalState(theta, q), NodeField(g), dt, unit_params(tau)).theta() - fourier);
    };
    for (double tau : {1e-4, 1e-5}) {
        const double ratio = gap(tau) / gap(tau / 2.0);
        CHECK(ratio >= 1.7);
        CHECK(ratio <= 2.3);
    }
}

TEST_CASE("energy never increases without forcing, for any dt") {
    std::mt19937_64 rng(31);
    const Grid1D g(1.0, 40);
    for (double tau : {0.0, 0.01, 1.0, 50.0}) {
        const PhysicalParams p = unit_params(tau);
        for (double dt : {1e-4, 0.1, 10.0, 1e3}) {
            ThermalState s(oracle::random_field<NodeField>(g, rng), oracle::random_field<FaceField>(g, rng));
            double e = e_tau(s, p);
            for (int n = 0; n < 30; ++n) {
                s = cattaneo_step(s, NodeField(g), dt, p);
                const double e_next = e_tau(s, p);
                CHECK(e_next <= e);
                e = e_next;
            }
        }
    }
}

TEST_CASE("discrete exponential decay with the certified rate") {
    std::mt19937_64 rng(32);
    const Grid1D g(1.0, 40);
    // The rate min{ell/m, 2/tau} is certified while tau <= m/ell (then it equals ell/m).
    for (double tau : {0.0, 0.05, 0.5, 1.0}) {
        PhysicalParams p = unit_params(tau);
        const double c = p.decay_rate();
        const double dt = 0.01;
        ThermalState s = thermal_initial_state(oracle::random_field<NodeField>(g, rng),
                                               oracle::random_field<FaceField>(g, rng), NodeField(g), dt, p);
        std::vector<double> energies{heat_energy(s, p, 0) + heat_energy(s, p, 1) + heat_energy(s, p, 2)};
        for (int n = 0; n < 200; ++n) {
            s = tau == 0.0 ? fourier_state_step(s, NodeField(g), dt, p) : cattaneo_step(s, NodeField(g), dt, p);
            energies.push_back(heat_energy(s, p, 0) + heat_energy(s, p, 1) + heat_energy(s, p, 2));
        }
        CHECK(decay_certificate_violations(energies, c, dt).empty());
    }
}

TEST_CASE("the sine/cosine mode pair is invariant") {
    const Grid1D g(1.0, 50);
    const PhysicalParams p = unit_params(0.2);
    for (int k : {1, 4, 13}) {
        const NodeField s = oracle::sine(g, k);
        const FaceField c = oracle::cosine_faces(g, k);
        ThermalState state(0.8 * s, -1.3 * c);
        for (int n = 0; n < 25; ++n) {
            state = cattaneo_step(state, NodeField(g), 0.005, p);
            const double a = l2_inner(state.theta(), s) / l2_inner(s, s);
            const double b = l2_inner(state.q(), c) / l2_inner(c, c);
            CHECK(linf_norm(state.theta() - a * s) <= 1e-13);
            CHECK(linf_norm(state.q() - b * c) <= 1e-12);
        }
    }
}

TEST_CASE("initial state carries a consistent virtual past") {
    const Grid1D g(1.0, 32);
    std::mt19937_64 rng(41);
    const PhysicalParams p = unit_params(0.05);
    const auto theta0 = oracle::random_field<NodeField>(g, rng);
    const auto q0 = oracle::random_field<FaceField>(g, rng);
    const auto f0 = oracle::random_field<NodeField>(g, rng);
    const double dt = 0.002;
    const ThermalState s = thermal_initial_state(theta0, q0, f0, dt, p);
    REQUIRE(s.history.size() == 3);
    CHECK(s.theta() == theta0);
    CHECK(s.q() == q0);
    CHECK(s.t() == 0.0);
    // Each stored transition is a backward-Euler step with source f0.
    for (std::size_t i = 2; i >= 1; --i) {
        const ThermalState before(s.history.back(i).theta, s.history.back(i).q, s.history.back(i).t);
        const ThermalState after(s.history.back(i - 1).theta, s.history.back(i - 1).q, s.history.back(i - 1).t);
        const auto [r1, r2] = cattaneo_scheme_residual(before, after, f0, dt, p);
        CHECK(r1 <= 1e-9 * (1.0 + linf_norm(divergence_from_faces(q0))));
        CHECK(r2 <= 1e-9 * (1.0 + linf_norm(q0) / p.tau));
    }
    // The first derivative at t = 0 is the compatibility value (f0 - div q0 - ell theta0) / m.
    const NodeField theta1 = (f0 - divergence_from_faces(q0) - p.ell() * theta0) * (1.0 / p.m());
    CHECK(linf_norm(reconstruct_time_derivatives(s, 1).first - theta1) <= 1e-9 * linf_norm(theta1));

    // For tau = 0 the stored flux is the Fourier flux.
    const ThermalState f = thermal_initial_state(theta0, q0, f0, dt, unit_params(0.0));
    CHECK(linf_norm(f.q() + gradient_to_faces(theta0)) <= 1e-14);
}

} // TEST_SUITE
