#include "wpc/heat.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace wpc {

namespace {

// Shared Theta solve. `weight` scales the conductivity (dt/(tau+dt) for Cattaneo, 1 for Fourier);
// `relaxed_div` is the old-flux divergence already multiplied by tau/(tau+dt), or null.
NodeField solve_theta(const NodeField& theta, const NodeField& f_next, double dt,
                      const PhysicalParams& params, double weight, const NodeField* relaxed_div) {
    theta.check(f_next);
    const Grid1D& g = theta.grid();
    const std::size_t n = g.nodes();
    const double m_dt = params.m() / dt;
    const double a = params.kappa_a * weight / (g.dx() * g.dx());

    std::vector<double> lower(n, -a), diag(n, m_dt + params.ell() + 2.0 * a), upper(n, -a);
    NodeField rhs(g);
    for (std::size_t i = 0; i < n; ++i) rhs[i] = m_dt * theta[i] + f_next[i];
    if (relaxed_div != nullptr) rhs -= *relaxed_div;
    return solve_tridiagonal(lower, diag, upper, rhs);
}

// Rebuilds the level preceding `lvl` such that one backward-Euler step from it reproduces `lvl`.
ThermalLevel previous_level(const ThermalLevel& lvl, const NodeField& f, double dt,
                            const PhysicalParams& params) {
    const double tau = params.tau;
    NodeField theta_t = f - divergence_from_faces(lvl.q) - params.ell() * lvl.theta;
    theta_t *= 1.0 / params.m();
    NodeField theta_prev = lvl.theta - dt * theta_t;
    FaceField q_prev(lvl.theta.grid());
    if (tau > 0.0) {
        FaceField q_t = lvl.q + params.kappa_a * gradient_to_faces(lvl.theta);
        q_t *= -1.0 / tau;
        q_prev = lvl.q - dt * q_t;
    } else {
        q_prev = -params.kappa_a * gradient_to_faces(theta_prev);
    }
    return {lvl.t - dt, std::move(theta_prev), std::move(q_prev)};
}

} // namespace

ThermalState::ThermalState(NodeField theta, FaceField q, double t)
    : history(ThermalLevel{t, std::move(theta), std::move(q)}) {
    const auto& lvl = history.newest();
    if (!(lvl.theta.grid() == lvl.q.grid())) throw GridMismatch("theta and q on different grids");
}

ThermalState thermal_initial_state(const NodeField& theta0, const FaceField& q0, const NodeField& f0,
                                   double dt, const PhysicalParams& params) {
    if (!(dt > 0.0)) throw SimError("dt must be positive");
    ThermalLevel l0{0.0, theta0,
                    params.tau > 0.0 ? q0 : -params.kappa_a * gradient_to_faces(theta0)};
    ThermalLevel l1 = previous_level(l0, f0, dt, params);
    ThermalLevel l2 = previous_level(l1, f0, dt, params);
    TimeHistory<ThermalLevel> h;
    h.push(std::move(l2));
    h.push(std::move(l1));
    h.push(std::move(l0));
    return ThermalState(std::move(h));
}

ThermalState cattaneo_step(const ThermalState& state, const NodeField& f_next, double dt,
                           const PhysicalParams& params) {
    if (!(dt > 0.0)) throw SimError("dt must be positive");
    const double tau = params.tau;
    const double weight = dt / (tau + dt);
    const double relax = tau / (tau + dt);

    NodeField theta_next(state.grid());
    FaceField q_next(state.grid());
    if (tau > 0.0) {
        const NodeField relaxed_div = relax * divergence_from_faces(state.q());
        theta_next = solve_theta(state.theta(), f_next, dt, params, weight, &relaxed_div);
        q_next = relax * state.q();
        q_next -= (params.kappa_a * weight) * gradient_to_faces(theta_next);
    } else {
        theta_next = solve_theta(state.theta(), f_next, dt, params, weight, nullptr);
        q_next = -(params.kappa_a * weight) * gradient_to_faces(theta_next);
    }

    ThermalState out = state;
    out.history.push({state.t() + dt, std::move(theta_next), std::move(q_next)});
    return out;
}

NodeField fourier_step(const NodeField& theta, const NodeField& f_next, double dt,
                       const PhysicalParams& params) {
    if (!(dt > 0.0)) throw SimError("dt must be positive");
    return solve_theta(theta, f_next, dt, params, 1.0, nullptr);
}

ThermalState fourier_state_step(const ThermalState& state, const NodeField& f_next, double dt,
                                const PhysicalParams& params) {
    NodeField theta_next = fourier_step(state.theta(), f_next, dt, params);
    FaceField q_next = -(params.kappa_a * 1.0) * gradient_to_faces(theta_next);
    ThermalState out = state;
    out.history.push({state.t() + dt, std::move(theta_next), std::move(q_next)});
    return out;
}

std::pair<double, double> cattaneo_scheme_residual(const ThermalState& before,
                                                   const ThermalState& after,
                                                   const NodeField& f_next, double dt,
                                                   const PhysicalParams& params) {
    NodeField r1 = (params.m() / dt) * (after.theta() - before.theta());
    r1 += divergence_from_faces(after.q());
    r1 += params.ell() * after.theta();
    r1 -= f_next;
    FaceField r2 = (params.tau / dt) * (after.q() - before.q());
    r2 += after.q();
    r2 += params.kappa_a * gradient_to_faces(after.theta());
    return {linf_norm(r1), linf_norm(r2)};
}

double telegraph_mode_oracle(const PhysicalParams& params, double lambda, double T0, double T0dot,
                             double t) {
    if (!(lambda >= 0.0)) throw InvalidMode("modal eigenvalue must be nonnegative");
    if (t < 0.0) throw SimError("oracle time must be nonnegative");
    const double m = params.m();
    const double stiffness = params.ell() + params.kappa_a * lambda;
    if (params.tau == 0.0) return T0 * std::exp(-stiffness * t / m);

    const double a = params.tau * m;
    const double b = m + params.tau * params.ell();
    const double c = stiffness;
    const double disc = b * b - 4.0 * a * c;

    if (std::abs(disc) <= 1e-14 * b * b) {
        const double r = -b / (2.0 * a);
        return (T0 + (T0dot - r * T0) * t) * std::exp(r * t);
    }
    if (disc > 0.0) {
        // Cancellation-free root pair.
        const double qr = -0.5 * (b + std::sqrt(disc));
        const double r1 = c / qr; // slow root
        const double r2 = qr / a; // fast root
        const double A = (T0dot - r2 * T0) / (r1 - r2);
        const double B = T0 - A;
        return A * std::exp(r1 * t) + B * std::exp(r2 * t);
    }
    const double sigma = -b / (2.0 * a);
    const double omega = std::sqrt(-disc) / (2.0 * a);
    return std::exp(sigma * t) *
           (T0 * std::cos(omega * t) + (T0dot - sigma * T0) / omega * std::sin(omega * t));
}

std::pair<NodeField, FaceField> reconstruct_time_derivatives(const ThermalState& state, int k) {
    if (k != 1 && k != 2) throw SimError("reconstruct_time_derivatives supports k = 1, 2");
    if (state.history.size() < static_cast<std::size_t>(k + 1)) {
        throw InsufficientHistory(static_cast<std::size_t>(k + 1), state.history.size());
    }
    return {backward_difference(state.history, k, [](const ThermalLevel& l) { return l.theta; }),
            backward_difference(state.history, k, [](const ThermalLevel& l) { return l.q; })};
}

} // namespace wpc
