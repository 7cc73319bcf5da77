#include "wpc/coupling.hpp"

#include <algorithm>
#include <cmath>

namespace wpc {

FaceField compatibility_flux_rate(const NodeField& theta0, const FaceField& q0,
                                  const PhysicalParams& params) {
    if (params.tau == 0.0) throw TauZeroFluxDerivative();
    FaceField q1 = q0 + params.kappa_a * gradient_to_faces(theta0);
    q1 *= -1.0 / params.tau;
    return q1;
}

CompatibilityData compatibility_data(const NodeField& p0, const NodeField& p1,
                                     const NodeField& theta0, const FaceField& q0,
                                     const PhysicalParams& params, const SpeedOfSoundModel& model) {
    const Grid1D& g = p0.grid();
    const NodeField lap_p0 = laplacian_dirichlet(p0);
    const NodeField lap_p1 = laplacian_dirichlet(p1);
    NodeField p2(g);
    for (std::size_t j = 0; j < g.nodes(); ++j) {
        const double h = model.h(theta0[j]);
        const double k = params.beta_acous / (params.rho * h);
        const double alpha = 1.0 - 2.0 * k * p0[j];
        if (!(alpha > 0.0)) throw Degenerate(alpha, j);
        p2[j] = (h * lap_p0[j] + params.b * lap_p1[j] + 2.0 * k * p1[j] * p1[j]) / alpha;
    }

    NodeField theta1 = q_source(params, p1) - divergence_from_faces(q0);
    theta1 -= params.ell() * theta0;
    theta1 *= 1.0 / params.m();

    std::optional<FaceField> q1;
    if (params.tau > 0.0) q1 = compatibility_flux_rate(theta0, q0, params);
    return {std::move(p2), std::move(theta1), std::move(q1)};
}

CoupledState initial_coupled_state(const NodeField& p0, const NodeField& p1,
                                   const NodeField& theta0, const FaceField& q0, double dt,
                                   double gamma_bar, const PhysicalParams& params,
                                   const SpeedOfSoundModel& model) {
    FrozenCoefficients coeffs0 = assemble_coefficients(theta0, p0, p1, model, params);
    try {
        check_nondegeneracy(coeffs0, gamma_bar);
    } catch (const Degenerate& e) {
        throw Degenerate(e.alpha_min, e.node, 0, 0.0);
    }
    NodeField f0 = q_source(params, p1);

    TimeHistory<StepCoefficients> coeff_history;
    for (int i = 2; i >= 0; --i) coeff_history.push({-i * dt, coeffs0, f0});

    CoupledState s{acoustic_initial_state(p0, p1, coeffs0, dt, params),
                   thermal_initial_state(theta0, q0, f0, dt, params),
                   std::move(coeff_history), 0.0, 0, 0, 1.0, {}};
    s.alpha_min_last = coeffs0.alpha_min;
    return s;
}

namespace {

bool uses_fourier(HeatPath path, const PhysicalParams& params) {
    return path == HeatPath::fourier || (path == HeatPath::automatic && params.tau == 0.0);
}

} // namespace

CoupledState coupled_step(const CoupledState& state, double dt, const PicardSettings& picard,
                          const PhysicalParams& params, const SpeedOfSoundModel& model,
                          HeatPath path) {
    if (!(dt > 0.0)) throw SimError("dt must be positive");
    if (!(picard.tol > 0.0)) throw SimError("Picard tolerance must be positive");
    if (picard.max_iter < 1) throw SimError("Picard needs at least one iteration");

    const bool fourier = uses_fourier(path, params);
    const long next_step = state.step + 1;
    const double t_next = state.t + dt;

    NodeField p_it = state.acoustic.p();
    NodeField v_it = state.acoustic.v();
    NodeField theta_it = state.thermal.theta();
    std::vector<double> diffs;

    for (int it = 1; it <= picard.max_iter; ++it) {
        FrozenCoefficients coeffs = assemble_coefficients(theta_it, p_it, v_it, model, params);
        try {
            check_nondegeneracy(coeffs, picard.gamma_bar);
        } catch (const Degenerate& e) {
            throw Degenerate(e.alpha_min, e.node, next_step, t_next);
        }

        AcousticState acoustic = westervelt_linear_step(state.acoustic, coeffs, dt, params);
        NodeField f = q_source(params, acoustic.v());
        ThermalState thermal = fourier ? fourier_state_step(state.thermal, f, dt, params)
                                       : cattaneo_step(state.thermal, f, dt, params);

        const double d = l2_norm(acoustic.p() - p_it) + l2_norm(acoustic.v() - v_it) +
                         l2_norm(thermal.theta() - theta_it);
        diffs.push_back(d);
        const double scale =
            l2_norm(acoustic.p()) + l2_norm(acoustic.v()) + l2_norm(thermal.theta());

        if (d <= picard.tol * (1.0 + scale)) {
            const double alpha_min = coeffs.alpha_min;
            CoupledState out{std::move(acoustic), std::move(thermal), state.coefficients, 0.0, 0, 0, 1.0, {}};
            out.coefficients.push({t_next, std::move(coeffs), std::move(f)});
            out.t = t_next;
            out.step = next_step;
            out.picard_iterations_last = it;
            out.alpha_min_last = alpha_min;
            out.picard_differences_last = std::move(diffs);
            return out;
        }
        if (!std::isfinite(d)) break;
        p_it = acoustic.p();
        v_it = acoustic.v();
        theta_it = thermal.theta();
    }

    const std::size_t n = diffs.size();
    const bool non_decreasing = n >= 2 && !(diffs[n - 1] < diffs[n - 2]);
    throw PicardDiverged(static_cast<int>(n), diffs.back(), non_decreasing, next_step, t_next);
}

double coupled_step_residual(const CoupledState& before, const CoupledState& after, double dt,
                             const PhysicalParams& params, const SpeedOfSoundModel& model,
                             HeatPath path) {
    const FrozenCoefficients coeffs = assemble_coefficients(
        after.thermal.theta(), after.acoustic.p(), after.acoustic.v(), model, params);
    const auto [ra1, ra2] = westervelt_scheme_residual(before.acoustic, after.acoustic, coeffs, dt, params);
    const NodeField f = q_source(params, after.acoustic.v());
    PhysicalParams heat_params = params;
    if (uses_fourier(path, params)) heat_params.tau = 0.0;
    const auto [rh1, rh2] = cattaneo_scheme_residual(before.thermal, after.thermal, f, dt, heat_params);
    return std::max({ra1, ra2, rh1, rh2});
}

} // namespace wpc
