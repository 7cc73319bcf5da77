#ifndef WPC_ENERGY_HPP
#define WPC_ENERGY_HPP

#include <span>
#include <vector>

#include "wpc/coupling.hpp"

namespace wpc {

// ---------------------------------------------------------------------------------------------
// Heat conduction functionals. Time derivatives come from the stored history.
// ---------------------------------------------------------------------------------------------

/// E_k = 1/2 (m kappa_a |d_t^k Theta|^2 + tau |d_t^k q|^2), k = 0, 1, 2.
double heat_energy(const ThermalState& state, const PhysicalParams& params, int k);
/// D_k = ell kappa_a |d_t^k Theta|^2 + |d_t^k q|^2.
double heat_dissipation(const ThermalState& state, const PhysicalParams& params, int k);

struct ThetaEnergies {
    double cal_E0 = 0.0;
    double cal_E1 = 0.0;
    double cal_D0 = 0.0;
    double cal_D1 = 0.0;
};

/// Temperature-only energies and dissipations:
///   cal_E0 = m kappa/2 (|Theta|^2 + |Theta_t|^2 + |Theta_tt|^2),
///   cal_E1 = (m + tau ell)/2 |grad Theta|^2 + kappa |grad Theta_t|^2 + kappa |Lap Theta|^2,
///   cal_D0 = ell kappa (...same three terms as cal_E0),
///   cal_D1 = ell |grad Theta|^2 + kappa |grad Theta_t|^2 + kappa |Lap Theta|^2.
ThetaEnergies theta_higher_energy(const ThermalState& state, const PhysicalParams& params);

/// |(E_0^{n+1} - E_0^n)/dt + D_0^{n+1} - kappa_a <f^{n+1}, Theta^{n+1}>| for the two newest levels.
double heat_balance_residual(const ThermalState& state, const NodeField& f_next,
                             const PhysicalParams& params);

// ---------------------------------------------------------------------------------------------
// Acoustic functionals
// ---------------------------------------------------------------------------------------------

struct AcousticEnergies {
    double E1 = 0.0;
    double E2 = 0.0;
    double E3 = 0.0;
    double total = 0.0;
};

/// E1 = 1/2(|sqrt(a) p_t|^2 + |sqrt(r) grad p|^2),
/// E2 = 1/2(|sqrt(a) p_tt|^2 + |sqrt(r) grad p_t|^2 + b |Lap p|^2),
/// E3 = 1/2(b |grad p_tt|^2 + b |grad Lap p|^2).
/// grad Lap p uses the composite stencil and is only first-order accurate.
AcousticEnergies acoustic_energy(const AcousticState& state, const FrozenCoefficients& coeffs,
                                 const PhysicalParams& params);

/// Dissipation b|grad p_t|^2 + b|grad p_tt|^2 + |sqrt(r) Lap p|^2 + b|Lap p_t|^2
///             + |sqrt(r) grad Lap p|^2 + |sqrt(a) p_ttt|^2.
double acoustic_dissipation(const AcousticState& state, const FrozenCoefficients& coeffs,
                            const PhysicalParams& params);

struct CoefficientDiagnostics {
    double lambda = 0.0;
    double frakF = 0.0;
};

/// Lambda(t) and the source functional F(t) = |grad g|^2 + |g_t|^2 from two coefficient levels.
/// `dimension` fixes the exponent 4/(4 - d) of the L2-in-space terms.
CoefficientDiagnostics coefficient_diagnostics(const FrozenCoefficients& older,
                                               const FrozenCoefficients& newer, double dt,
                                               int dimension = 1);

// ---------------------------------------------------------------------------------------------
// Solution-space norms accumulated over a run
// ---------------------------------------------------------------------------------------------

struct XNorms {
    double p = 0.0;
    double theta = 0.0;
    double q = 0.0;
};

/// Running discrete X-norms: suprema over observed levels, L2-in-time parts as dt-weighted
/// sums over every level after the first.
class XNormAccumulator {
public:
    void observe(const AcousticState& acoustic, const ThermalState& thermal);
    XNorms norms() const;

private:
    bool first_ = true;
    double sup_p_h3_ = 0.0, sup_pt_h2_ = 0.0, sup_grad_ptt_ = 0.0;
    double int_grad_lap_pt_ = 0.0, int_lap_ptt_ = 0.0, int_pttt_ = 0.0;
    double sup_theta_h2_ = 0.0, sup_theta_t_h1_ = 0.0, sup_theta_tt_ = 0.0;
    double sup_q_h1_ = 0.0, int_qt_ = 0.0, int_qtt_ = 0.0;
};

// ---------------------------------------------------------------------------------------------
// Gronwall bound and decay certificate
// ---------------------------------------------------------------------------------------------

/// u0 exp(A(t)) + int_0^t beta(s) exp(A(t) - A(s)) ds with A(t) = int_0^t alpha, all integrals
/// by the trapezoidal rule on the uniform grid `t_grid`.
std::vector<double> gronwall_bound(double u0, std::span<const double> alpha,
                                   std::span<const double> beta, std::span<const double> t_grid);

/// Indices n where E[n] > E[0] (1 + 2 c dt)^{-n} or E[n] > E[n-1]. Empty means certified.
std::vector<std::size_t> decay_certificate_violations(std::span<const double> energies, double c,
                                                      double dt);

// ---------------------------------------------------------------------------------------------
// Per-step report
// ---------------------------------------------------------------------------------------------

struct EnergyReport {
    double t = 0.0;
    double E[3] = {0.0, 0.0, 0.0};
    double E_tau = 0.0;
    double D[3] = {0.0, 0.0, 0.0};
    double D_total = 0.0;
    ThetaEnergies theta;
    AcousticEnergies acoustic;
    double frakD0 = 0.0;
    CoefficientDiagnostics coefficients;
    double alpha_min = 0.0;
    int picard_iterations = 0;
    double heat_residual = 0.0;
    double acoustic_residual = 0.0;
    XNorms x_norm;
};

EnergyReport make_energy_report(const CoupledState& state, const PhysicalParams& params,
                                const XNorms& x_norm = {});

} // namespace wpc

#endif
