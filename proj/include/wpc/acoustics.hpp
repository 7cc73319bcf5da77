#ifndef WPC_ACOUSTICS_HPP
#define WPC_ACOUSTICS_HPP

#include <cstddef>

#include "wpc/grid.hpp"
#include "wpc/history.hpp"
#include "wpc/model.hpp"

namespace wpc {

struct AcousticLevel {
    double t = 0.0;
    NodeField p;
    NodeField v; // p_t
};

/// Pressure and its rate at nodes, with the last three time levels.
struct AcousticState {
    TimeHistory<AcousticLevel> history;

    AcousticState(NodeField p, NodeField v, double t = 0.0);
    explicit AcousticState(TimeHistory<AcousticLevel> h) : history(std::move(h)) {}

    const NodeField& p() const { return history.newest().p; }
    const NodeField& v() const { return history.newest().v; }
    double t() const { return history.newest().t; }
    const Grid1D& grid() const { return p().grid(); }
};

/// Coefficients of  alpha p_tt - r Laplace p - b Laplace p_t = g,  frozen over one step.
struct FrozenCoefficients {
    NodeField alpha;
    NodeField r;
    NodeField g;
    double alpha_min = 0.0;
    double alpha_max = 0.0;
    double r_min = 0.0;
    std::size_t alpha_argmin = 0;

    FrozenCoefficients(NodeField alpha, NodeField r, NodeField g);
};

/// alpha = 1 - 2k(theta)p,  r = h(theta),  g = 2k(theta) p_t^2.
FrozenCoefficients assemble_coefficients(const NodeField& theta, const NodeField& p,
                                         const NodeField& p_t, const SpeedOfSoundModel& model,
                                         const PhysicalParams& params);

/// Throws Degenerate (with the offending node) unless alpha_min >= 1 - gamma_bar.
void check_nondegeneracy(const FrozenCoefficients& coeffs, double gamma_bar);

/// Backward Euler on the first-order system (p, v = p_t):
///   alpha (v' - v)/dt - r Laplace p' - b Laplace v' = g,   p' = p + dt v'.
AcousticState westervelt_linear_step(const AcousticState& state, const FrozenCoefficients& coeffs,
                                     double dt, const PhysicalParams& params);

/// Max-norm residuals of the two scheme equations for a computed step.
std::pair<double, double> westervelt_scheme_residual(const AcousticState& before,
                                                     const AcousticState& after,
                                                     const FrozenCoefficients& coeffs, double dt,
                                                     const PhysicalParams& params);

/// Initial acoustic state with two virtual past levels reconstructed by running the scheme
/// backwards with the initial coefficients, so p_tt and p_ttt are defined at t = 0.
AcousticState acoustic_initial_state(const NodeField& p0, const NodeField& p1,
                                     const FrozenCoefficients& coeffs0, double dt,
                                     const PhysicalParams& params);

/// Discrete form of the first-order acoustic energy balance
///   d/dt E1 + b |grad p_t|^2 = <g, p_t> + 1/2 <alpha_t, p_t^2> - <grad r . grad p, p_t>
///                              + 1/2 <r_t, |grad p|^2>,
/// evaluated between the two newest levels; returns |LHS - RHS|. `coeffs_new` are the
/// coefficients used for the newest step, `coeffs_old` those of the level before.
double acoustic_identity_residual(const AcousticState& state, const FrozenCoefficients& coeffs_old,
                                  const FrozenCoefficients& coeffs_new, const PhysicalParams& params);

/// E1 = 1/2 (|sqrt(alpha) p_t|^2 + |sqrt(r) grad p|^2) with r averaged onto faces.
double acoustic_first_energy(const NodeField& p, const NodeField& v, const NodeField& alpha,
                             const NodeField& r);

} // namespace wpc

#endif
