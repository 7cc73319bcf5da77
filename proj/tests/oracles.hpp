// Independent reference computations for the tests. Nothing here calls the steppers.
#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <utility>

#include <boost/numeric/odeint.hpp>

#include "wpc/grid.hpp"

namespace oracle {

inline constexpr double pi = std::numbers::pi;

inline wpc::NodeField sine(const wpc::Grid1D& g, int k = 1, double amplitude = 1.0) {
    return wpc::NodeField::from_function(
        g, [&](double x) { return amplitude * std::sin(k * pi * x / g.length()); });
}

inline wpc::FaceField cosine_faces(const wpc::Grid1D& g, int k = 1, double amplitude = 1.0) {
    return wpc::FaceField::from_function(
        g, [&](double x) { return amplitude * std::cos(k * pi * x / g.length()); });
}

/// (4/dx^2) sin^2(k pi dx / (2L)), written out independently of Grid1D::eigenvalue.
inline double discrete_eigenvalue(double L, std::size_t n, int k) {
    const double dx = L / static_cast<double>(n + 1);
    const double s = std::sin(k * pi * dx / (2.0 * L));
    return 4.0 * s * s / (dx * dx);
}

/// Solves [[a11, a12], [a21, a22]] x = b by Cramer's rule.
inline std::pair<double, double> solve2(double a11, double a12, double a21, double a22, double b1,
                                        double b2) {
    const double det = a11 * a22 - a12 * a21;
    return {(b1 * a22 - a12 * b2) / det, (a11 * b2 - a21 * b1) / det};
}

/// One backward-Euler step of the modal heat system for Theta = a s, q = c grad_h s:
///   m (a' - a)/dt - lambda c' + ell a' = f,   tau (c' - c)/dt + c' + kappa a' = 0.
inline std::pair<double, double> heat_mode_step(double m, double ell, double kappa, double tau,
                                                double lambda, double dt, double a, double c,
                                                double f = 0.0) {
    return solve2(m / dt + ell, -lambda, kappa, tau / dt + 1.0, m / dt * a + f, tau / dt * c);
}

/// One backward-Euler step of the modal damped wave system for p = P s, p_t = V s:
///   alpha (V' - V)/dt + lambda r P' + lambda b V' = g,   P' = P + dt V'.
inline std::pair<double, double> wave_mode_step(double alpha, double r, double b, double lambda,
                                                double dt, double P, double V, double g = 0.0) {
    // Unknowns (P', V').
    return solve2(lambda * r, alpha / dt + lambda * b, 1.0, -dt, alpha / dt * V + g, P);
}

/// tau m T'' + (m + tau ell) T' + (ell + kappa lambda) T = 0 by adaptive Dormand-Prince.
inline double telegraph_numeric(double m, double ell, double kappa, double tau, double lambda,
                                double T0, double T0dot, double t) {
    using State = std::array<double, 2>;
    State x{T0, T0dot};
    auto rhs = [&](const State& y, State& dy, double) {
        dy[0] = y[1];
        dy[1] = -((m + tau * ell) * y[1] + (ell + kappa * lambda) * y[0]) / (tau * m);
    };
    namespace ode = boost::numeric::odeint;
    ode::integrate_adaptive(ode::make_controlled<ode::runge_kutta_dopri5<State>>(1e-14, 1e-12),
                            rhs, x, 0.0, t, 1e-4);
    return x[0];
}

template <class Field>
Field random_field(const wpc::Grid1D& g, std::mt19937_64& rng, double scale = 1.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    Field f(g);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = u(rng);
    return f;
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

} // namespace oracle
