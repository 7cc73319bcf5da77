#include "wpc/acoustics.hpp"

#include <algorithm>
#include <vector>

namespace wpc {

AcousticState::AcousticState(NodeField p, NodeField v, double t)
    : history(AcousticLevel{t, std::move(p), std::move(v)}) {
    const auto& lvl = history.newest();
    lvl.p.check(lvl.v);
}

FrozenCoefficients::FrozenCoefficients(NodeField alpha_, NodeField r_, NodeField g_)
    : alpha(std::move(alpha_)), r(std::move(r_)), g(std::move(g_)) {
    alpha.check(r);
    alpha.check(g);
    const auto a = alpha.values();
    const auto it = std::min_element(a.begin(), a.end());
    alpha_argmin = static_cast<std::size_t>(it - a.begin());
    alpha_min = *it;
    alpha_max = *std::max_element(a.begin(), a.end());
    r_min = *std::min_element(r.values().begin(), r.values().end());
}

FrozenCoefficients assemble_coefficients(const NodeField& theta, const NodeField& p,
                                         const NodeField& p_t, const SpeedOfSoundModel& model,
                                         const PhysicalParams& params) {
    theta.check(p);
    theta.check(p_t);
    const Grid1D& g = theta.grid();
    NodeField alpha(g), r(g), src(g);
    for (std::size_t j = 0; j < g.nodes(); ++j) {
        const double h = model.h(theta[j]);
        const double k = params.beta_acous / (params.rho * h);
        alpha[j] = 1.0 - 2.0 * k * p[j];
        r[j] = h;
        src[j] = 2.0 * k * p_t[j] * p_t[j];
    }
    return FrozenCoefficients(std::move(alpha), std::move(r), std::move(src));
}

void check_nondegeneracy(const FrozenCoefficients& coeffs, double gamma_bar) {
    if (!(gamma_bar > 0.0 && gamma_bar < 1.0)) throw SimError("gamma_bar must lie in (0, 1)");
    if (!(coeffs.alpha_min >= 1.0 - gamma_bar)) {
        throw Degenerate(coeffs.alpha_min, coeffs.alpha_argmin);
    }
}

AcousticState westervelt_linear_step(const AcousticState& state, const FrozenCoefficients& coeffs,
                                     double dt, const PhysicalParams& params) {
    if (!(dt > 0.0)) throw SimError("dt must be positive");
    state.p().check(coeffs.alpha);
    const Grid1D& g = state.grid();
    const std::size_t n = g.nodes();
    const double inv_dx2 = 1.0 / (g.dx() * g.dx());
    const double b = params.b;

    std::vector<double> lower(n), diag(n), upper(n);
    const NodeField lap_p = laplacian_dirichlet(state.p());
    NodeField rhs(g);
    for (std::size_t j = 0; j < n; ++j) {
        const double a = (dt * coeffs.r[j] + b) * inv_dx2;
        lower[j] = -a;
        upper[j] = -a;
        diag[j] = coeffs.alpha[j] / dt + 2.0 * a;
        rhs[j] = coeffs.alpha[j] * state.v()[j] / dt + coeffs.r[j] * lap_p[j] + coeffs.g[j];
    }
    NodeField v_next = solve_tridiagonal(lower, diag, upper, rhs);
    NodeField p_next = state.p() + dt * v_next;

    AcousticState out = state;
    out.history.push({state.t() + dt, std::move(p_next), std::move(v_next)});
    return out;
}

std::pair<double, double> westervelt_scheme_residual(const AcousticState& before,
                                                     const AcousticState& after,
                                                     const FrozenCoefficients& coeffs, double dt,
                                                     const PhysicalParams& params) {
    NodeField r1 = hadamard(coeffs.alpha, after.v() - before.v()) * (1.0 / dt);
    r1 -= hadamard(coeffs.r, laplacian_dirichlet(after.p()));
    r1 -= params.b * laplacian_dirichlet(after.v());
    r1 -= coeffs.g;
    NodeField r2 = after.p() - before.p() - dt * after.v();
    return {linf_norm(r1), linf_norm(r2)};
}

namespace {

AcousticLevel previous_acoustic_level(const AcousticLevel& lvl, const FrozenCoefficients& c,
                                      double dt, const PhysicalParams& params) {
    NodeField p_tt = hadamard(c.r, laplacian_dirichlet(lvl.p));
    p_tt += params.b * laplacian_dirichlet(lvl.v);
    p_tt += c.g;
    for (std::size_t j = 0; j < p_tt.size(); ++j) p_tt[j] /= c.alpha[j];
    return {lvl.t - dt, lvl.p - dt * lvl.v, lvl.v - dt * p_tt};
}

} // namespace

AcousticState acoustic_initial_state(const NodeField& p0, const NodeField& p1,
                                     const FrozenCoefficients& coeffs0, double dt,
                                     const PhysicalParams& params) {
    if (!(dt > 0.0)) throw SimError("dt must be positive");
    AcousticLevel l0{0.0, p0, p1};
    AcousticLevel l1 = previous_acoustic_level(l0, coeffs0, dt, params);
    AcousticLevel l2 = previous_acoustic_level(l1, coeffs0, dt, params);
    TimeHistory<AcousticLevel> h;
    h.push(std::move(l2));
    h.push(std::move(l1));
    h.push(std::move(l0));
    return AcousticState(std::move(h));
}

double acoustic_first_energy(const NodeField& p, const NodeField& v, const NodeField& alpha,
                             const NodeField& r) {
    const FaceField grad_p = gradient_to_faces(p);
    return 0.5 * (l2_inner(hadamard(alpha, v), v) +
                  l2_inner(hadamard(coefficient_to_faces(r), grad_p), grad_p));
}

double acoustic_identity_residual(const AcousticState& state, const FrozenCoefficients& coeffs_old,
                                  const FrozenCoefficients& coeffs_new,
                                  const PhysicalParams& params) {
    const double dt = state.history.spacing(2);
    const AcousticLevel& now = state.history.back(0);
    const AcousticLevel& before = state.history.back(1);

    const double e_new = acoustic_first_energy(now.p, now.v, coeffs_new.alpha, coeffs_new.r);
    const double e_old = acoustic_first_energy(before.p, before.v, coeffs_old.alpha, coeffs_old.r);
    const FaceField grad_v = gradient_to_faces(now.v);
    const double lhs = (e_new - e_old) / dt + params.b * l2_inner(grad_v, grad_v);

    const NodeField v_mid = 0.5 * (now.v + before.v);
    const FaceField grad_p_mid = 0.5 * (gradient_to_faces(now.p) + gradient_to_faces(before.p));
    const NodeField alpha_t = (coeffs_new.alpha - coeffs_old.alpha) * (1.0 / dt);
    const FaceField r_t =
        (coefficient_to_faces(coeffs_new.r) - coefficient_to_faces(coeffs_old.r)) * (1.0 / dt);
    const FaceField v_faces = coefficient_to_faces(now.v);
    const FaceField grad_r = coefficient_gradient(coeffs_new.r);
    const FaceField grad_p = gradient_to_faces(now.p);

    const double rhs = l2_inner(coeffs_new.g, now.v) +
                       0.5 * l2_inner(alpha_t, hadamard(v_mid, v_mid)) -
                       l2_inner(hadamard(v_faces, grad_r), grad_p) +
                       0.5 * l2_inner(r_t, hadamard(grad_p_mid, grad_p_mid));
    return std::abs(lhs - rhs);
}

} // namespace wpc
