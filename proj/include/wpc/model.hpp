#ifndef WPC_MODEL_HPP
#define WPC_MODEL_HPP

#include <string>
#include <utility>
#include <vector>

#include "wpc/grid.hpp"

namespace wpc {

/// Medium constants of the thermo-acoustic system (SI units).
struct PhysicalParams {
    double rho_a = 1.0;      // ambient density
    double C_a = 1.0;        // ambient heat capacity
    double rho_b = 1.0;      // blood density
    double C_b = 1.0;        // blood heat capacity
    double W = 1.0;          // perfusion rate
    double kappa_a = 1.0;    // thermal conductivity
    double b = 1.0;          // sound diffusivity
    double rho = 1.0;        // mass density
    double beta_acous = 1.0; // nonlinearity parameter
    double theta_a = 310.15; // ambient temperature
    double tau = 0.0;        // Cattaneo relaxation time; 0 selects Fourier conduction

    /// Volumetric heat capacity rho_a * C_a.
    double m() const { return rho_a * C_a; }
    /// Perfusion loss coefficient rho_b * C_b * W.
    double ell() const { return rho_b * C_b * W; }
    /// Exponential decay rate min{ell/m, 2/tau} of the heat energy; ell/m when tau = 0.
    double decay_rate() const;
};

/// Squared speed of sound as a polynomial in the shifted temperature theta = Theta - Theta_a,
/// h(theta) = sum_i coeffs[i] * theta^i, bounded below by h_floor.
struct SpeedOfSoundModel {
    std::vector<double> coeffs{1.0};
    double h_floor = 1.0;
    // Growth exponents of the constitutive bounds. Metadata only.
    std::pair<double, double> growth_exponents{0.0, 0.0};

    /// Throws FloorViolated when the polynomial falls below h_floor.
    double h(double theta) const;
    /// k(theta) = beta_acous / (rho * h(theta)).
    double k(const PhysicalParams& params, double theta) const;
    /// Upper bound k_1 = beta_acous / (rho * h_floor) of k.
    double k1(const PhysicalParams& params) const;
};

inline double h_eval(const SpeedOfSoundModel& model, double theta) { return model.h(theta); }
inline double k_eval(const SpeedOfSoundModel& model, const PhysicalParams& params, double theta) {
    return model.k(params, theta);
}

/// Absorbed acoustic power 2b / (rho_a C_a^4) * p_t^2, pointwise.
NodeField q_source(const PhysicalParams& params, const NodeField& p_t);

/// Every violated invariant as a readable message. Empty means valid.
std::vector<std::string> validate_params(const PhysicalParams& params,
                                         const SpeedOfSoundModel& model);

} // namespace wpc

#endif
