#ifndef WPC_COUPLING_HPP
#define WPC_COUPLING_HPP

#include <optional>
#include <vector>

#include "wpc/acoustics.hpp"
#include "wpc/heat.hpp"

namespace wpc {

/// Coefficients and heat source that produced a time level.
struct StepCoefficients {
    double t = 0.0;
    FrozenCoefficients coeffs;
    NodeField f;
};

/// Full (p, Theta, q) state of the coupled system at one time level.
struct CoupledState {
    AcousticState acoustic;
    ThermalState thermal;
    TimeHistory<StepCoefficients> coefficients;
    double t = 0.0;
    long step = 0;
    int picard_iterations_last = 0;
    double alpha_min_last = 1.0;
    /// Successive Picard differences d_1, d_2, ... of the last accepted step.
    std::vector<double> picard_differences_last;

    const Grid1D& grid() const { return acoustic.grid(); }
    const FrozenCoefficients& current_coefficients() const { return coefficients.newest().coeffs; }
};

struct PicardSettings {
    double tol = 1e-10;
    int max_iter = 20;
    double gamma_bar = 0.5;
};

/// Which heat-conduction scheme coupled_step uses. `automatic` picks Fourier for tau = 0.
enum class HeatPath { automatic, cattaneo, fourier };

struct CompatibilityData {
    NodeField p2;
    NodeField theta1;
    std::optional<FaceField> q1; // absent for tau = 0
};

/// Initial time derivatives from the equations:
///   p2 = [h(theta0) Lp0 + b Lp1 + 2k(theta0) p1^2] / (1 - 2k(theta0) p0),
///   theta1 = (-div q0 - ell theta0 + Q(p1)) / m,   q1 = -(q0 + kappa_a grad theta0) / tau.
CompatibilityData compatibility_data(const NodeField& p0, const NodeField& p1,
                                     const NodeField& theta0, const FaceField& q0,
                                     const PhysicalParams& params, const SpeedOfSoundModel& model);

/// q1 alone; throws TauZeroFluxDerivative for tau = 0.
FaceField compatibility_flux_rate(const NodeField& theta0, const FaceField& q0,
                                  const PhysicalParams& params);

/// Coupled state at t = 0 with backward-consistent virtual history (see thermal_initial_state,
/// acoustic_initial_state). Throws Degenerate when the initial data violate gamma_bar.
CoupledState initial_coupled_state(const NodeField& p0, const NodeField& p1,
                                   const NodeField& theta0, const FaceField& q0, double dt,
                                   double gamma_bar, const PhysicalParams& params,
                                   const SpeedOfSoundModel& model);

/// One time step of the nonlinear system by Picard iteration on the frozen-coefficient map:
/// acoustic step with coefficients from the iterate, then heat step driven by Q(p_t) of the
/// fresh acoustic result, repeated until the L2 change of (p, p_t, Theta) is below
/// tol * (1 + field scale).
CoupledState coupled_step(const CoupledState& state, double dt, const PicardSettings& picard,
                          const PhysicalParams& params, const SpeedOfSoundModel& model,
                          HeatPath path = HeatPath::automatic);

/// Max-norm residual of the nonlinear discrete system for an accepted step, with every
/// coefficient re-evaluated at the accepted state.
double coupled_step_residual(const CoupledState& before, const CoupledState& after, double dt,
                             const PhysicalParams& params, const SpeedOfSoundModel& model,
                             HeatPath path = HeatPath::automatic);

} // namespace wpc

#endif
