#ifndef WPC_HEAT_HPP
#define WPC_HEAT_HPP

#include <utility>

#include "wpc/grid.hpp"
#include "wpc/history.hpp"
#include "wpc/model.hpp"

namespace wpc {

struct ThermalLevel {
    double t = 0.0;
    NodeField theta;
    FaceField q;
};

/// Temperature (nodes) and heat flux (faces) with the last three time levels.
struct ThermalState {
    TimeHistory<ThermalLevel> history;

    ThermalState(NodeField theta, FaceField q, double t = 0.0);
    explicit ThermalState(TimeHistory<ThermalLevel> h) : history(std::move(h)) {}

    const NodeField& theta() const { return history.newest().theta; }
    const FaceField& q() const { return history.newest().q; }
    double t() const { return history.newest().t; }
    const Grid1D& grid() const { return theta().grid(); }
};

/// Builds the initial thermal state with two virtual past levels obtained by running the
/// backward-Euler scheme in reverse with source f0, so that the stored history is a consistent
/// discrete trajectory and derivatives up to second order are available at t = 0. For tau = 0
/// the flux is taken as the Fourier flux -kappa_a grad(theta).
ThermalState thermal_initial_state(const NodeField& theta0, const FaceField& q0, const NodeField& f0,
                                   double dt, const PhysicalParams& params);

/// Backward Euler for  m Theta_t + div q + ell Theta = f,  tau q_t + q + kappa_a grad Theta = 0,
/// with q eliminated onto a symmetric tridiagonal system for Theta.
ThermalState cattaneo_step(const ThermalState& state, const NodeField& f_next, double dt,
                           const PhysicalParams& params);

/// Backward Euler for  m Theta_t - kappa_a Laplace Theta + ell Theta = f.
NodeField fourier_step(const NodeField& theta, const NodeField& f_next, double dt,
                       const PhysicalParams& params);

/// fourier_step lifted to ThermalState; the stored flux is -kappa_a grad(theta).
ThermalState fourier_state_step(const ThermalState& state, const NodeField& f_next, double dt,
                                const PhysicalParams& params);

/// Max-norm residuals of the two backward-Euler Cattaneo equations for a computed step.
std::pair<double, double> cattaneo_scheme_residual(const ThermalState& before,
                                                   const ThermalState& after,
                                                   const NodeField& f_next, double dt,
                                                   const PhysicalParams& params);

/// Closed-form modal solution of  tau m T'' + (m + tau ell) T' + (ell + kappa_a lambda) T = 0.
/// For tau = 0 the first-order decay T0 exp(-(ell + kappa_a lambda) t / m) is returned.
double telegraph_mode_oracle(const PhysicalParams& params, double lambda, double T0, double T0dot,
                             double t);

/// k-th time derivative (k = 1, 2) of (Theta, q) at the newest level from backward differences.
std::pair<NodeField, FaceField> reconstruct_time_derivatives(const ThermalState& state, int k);

} // namespace wpc

#endif
