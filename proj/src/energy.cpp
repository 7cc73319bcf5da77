#include "wpc/energy.hpp"

#include <algorithm>
#include <cmath>

namespace wpc {

namespace {

double sq(double x) { return x * x; }

template <class Tag>
double norm2(const Field<Tag>& u) {
    return l2_inner(u, u);
}

template <class Tag>
double weighted2(const Field<Tag>& w, const Field<Tag>& u) {
    return l2_inner(hadamard(w, u), u);
}

NodeField theta_derivative(const ThermalState& s, int k) {
    return backward_difference(s.history, k, [](const ThermalLevel& l) { return l.theta; });
}

FaceField q_derivative(const ThermalState& s, int k) {
    return backward_difference(s.history, k, [](const ThermalLevel& l) { return l.q; });
}

// d^k/dt^k of p_t: k = 0 gives p_t, 1 gives p_tt, 2 gives p_ttt.
NodeField rate_derivative(const AcousticState& s, int k) {
    return backward_difference(s.history, k, [](const AcousticLevel& l) { return l.v; });
}

double h1_sq(const NodeField& u) { return norm2(u) + norm2(gradient_to_faces(u)); }

} // namespace

double heat_energy(const ThermalState& state, const PhysicalParams& params, int k) {
    const NodeField th = theta_derivative(state, k);
    const FaceField q = q_derivative(state, k);
    return 0.5 * (params.m() * params.kappa_a * norm2(th) + params.tau * norm2(q));
}

double heat_dissipation(const ThermalState& state, const PhysicalParams& params, int k) {
    const NodeField th = theta_derivative(state, k);
    const FaceField q = q_derivative(state, k);
    return params.ell() * params.kappa_a * norm2(th) + norm2(q);
}

ThetaEnergies theta_higher_energy(const ThermalState& state, const PhysicalParams& params) {
    const NodeField th = theta_derivative(state, 0);
    const NodeField th_t = theta_derivative(state, 1);
    const NodeField th_tt = theta_derivative(state, 2);
    const double m = params.m();
    const double ell = params.ell();
    const double kappa = params.kappa_a;

    const double l2_sum = norm2(th) + norm2(th_t) + norm2(th_tt);
    const double grad = norm2(gradient_to_faces(th));
    const double grad_t = norm2(gradient_to_faces(th_t));
    const double lap = norm2(laplacian_dirichlet(th));

    ThetaEnergies e;
    e.cal_E0 = 0.5 * m * kappa * l2_sum;
    e.cal_E1 = 0.5 * (m + params.tau * ell) * grad + kappa * grad_t + kappa * lap;
    e.cal_D0 = ell * kappa * l2_sum;
    e.cal_D1 = ell * grad + kappa * grad_t + kappa * lap;
    return e;
}

double heat_balance_residual(const ThermalState& state, const NodeField& f_next,
                             const PhysicalParams& params) {
    const double dt = state.history.spacing(2);
    const ThermalLevel& now = state.history.back(0);
    const ThermalLevel& before = state.history.back(1);
    const double mk = params.m() * params.kappa_a;
    const double e_new = 0.5 * (mk * norm2(now.theta) + params.tau * norm2(now.q));
    const double e_old = 0.5 * (mk * norm2(before.theta) + params.tau * norm2(before.q));
    const double d_new = params.ell() * params.kappa_a * norm2(now.theta) + norm2(now.q);
    return std::abs((e_new - e_old) / dt + d_new - params.kappa_a * l2_inner(f_next, now.theta));
}

AcousticEnergies acoustic_energy(const AcousticState& state, const FrozenCoefficients& coeffs,
                                 const PhysicalParams& params) {
    const NodeField& p = state.p();
    const NodeField p_t = rate_derivative(state, 0);
    const NodeField p_tt = rate_derivative(state, 1);
    const FaceField r_faces = coefficient_to_faces(coeffs.r);
    const NodeField lap_p = laplacian_dirichlet(p);
    const double b = params.b;

    AcousticEnergies e;
    e.E1 = 0.5 * (weighted2(coeffs.alpha, p_t) + weighted2(r_faces, gradient_to_faces(p)));
    e.E2 = 0.5 * (weighted2(coeffs.alpha, p_tt) + weighted2(r_faces, gradient_to_faces(p_t)) +
                  b * norm2(lap_p));
    e.E3 = 0.5 * (b * norm2(gradient_to_faces(p_tt)) + b * norm2(gradient_to_faces(lap_p)));
    e.total = e.E1 + e.E2 + e.E3;
    return e;
}

double acoustic_dissipation(const AcousticState& state, const FrozenCoefficients& coeffs,
                            const PhysicalParams& params) {
    const NodeField p_t = rate_derivative(state, 0);
    const NodeField p_tt = rate_derivative(state, 1);
    const NodeField p_ttt = rate_derivative(state, 2);
    const NodeField lap_p = laplacian_dirichlet(state.p());
    const double b = params.b;
    return b * norm2(gradient_to_faces(p_t)) + b * norm2(gradient_to_faces(p_tt)) +
           weighted2(coeffs.r, lap_p) + b * norm2(laplacian_dirichlet(p_t)) +
           weighted2(coefficient_to_faces(coeffs.r), gradient_to_faces(lap_p)) +
           weighted2(coeffs.alpha, p_ttt);
}

CoefficientDiagnostics coefficient_diagnostics(const FrozenCoefficients& older,
                                               const FrozenCoefficients& newer, double dt,
                                               int dimension) {
    if (!(dt > 0.0)) throw SimError("dt must be positive");
    if (dimension < 1 || dimension > 3) throw SimError("dimension must be 1, 2 or 3");
    const double e = 4.0 / (4.0 - dimension);
    const NodeField alpha_t = (newer.alpha - older.alpha) * (1.0 / dt);
    const NodeField r_t = (newer.r - older.r) * (1.0 / dt);
    const FaceField grad_r = coefficient_gradient(newer.r);
    const FaceField grad_alpha = coefficient_gradient(newer.alpha);

    const double at2 = l2_norm(alpha_t);
    const double rt2 = l2_norm(r_t);
    CoefficientDiagnostics d;
    d.lambda = sq(at2) + std::pow(at2, e) + std::pow(rt2, e) + norm2(grad_r) +
               sq(l3_norm(r_t)) + sq(l3_norm(alpha_t)) + sq(l3_norm(grad_r)) +
               sq(l3_norm(grad_alpha));
    const NodeField g_t = (newer.g - older.g) * (1.0 / dt);
    d.frakF = norm2(gradient_to_faces(newer.g)) + norm2(g_t);
    return d;
}

void XNormAccumulator::observe(const AcousticState& acoustic, const ThermalState& thermal) {
    const NodeField& p = acoustic.p();
    const NodeField p_t = rate_derivative(acoustic, 0);
    const NodeField p_tt = rate_derivative(acoustic, 1);
    const NodeField p_ttt = rate_derivative(acoustic, 2);
    const NodeField lap_p = laplacian_dirichlet(p);
    const NodeField lap_pt = laplacian_dirichlet(p_t);

    sup_p_h3_ = std::max(sup_p_h3_, std::sqrt(h1_sq(p) + norm2(lap_p) +
                                              norm2(gradient_to_faces(lap_p))));
    sup_pt_h2_ = std::max(sup_pt_h2_, std::sqrt(h1_sq(p_t) + norm2(lap_pt)));
    sup_grad_ptt_ = std::max(sup_grad_ptt_, l2_norm(gradient_to_faces(p_tt)));

    const NodeField& th = thermal.theta();
    const NodeField th_t = theta_derivative(thermal, 1);
    const NodeField th_tt = theta_derivative(thermal, 2);
    sup_theta_h2_ = std::max(sup_theta_h2_, std::sqrt(h1_sq(th) + norm2(laplacian_dirichlet(th))));
    sup_theta_t_h1_ = std::max(sup_theta_t_h1_, std::sqrt(h1_sq(th_t)));
    sup_theta_tt_ = std::max(sup_theta_tt_, l2_norm(th_tt));

    const FaceField& q = thermal.q();
    sup_q_h1_ = std::max(sup_q_h1_, std::sqrt(norm2(q) + norm2(divergence_from_faces(q))));

    if (first_) {
        first_ = false;
        return;
    }
    const double dt = acoustic.history.spacing(2);
    int_grad_lap_pt_ += dt * norm2(gradient_to_faces(lap_pt));
    int_lap_ptt_ += dt * norm2(laplacian_dirichlet(p_tt));
    int_pttt_ += dt * norm2(p_ttt);
    int_qt_ += dt * norm2(q_derivative(thermal, 1));
    int_qtt_ += dt * norm2(q_derivative(thermal, 2));
}

XNorms XNormAccumulator::norms() const {
    XNorms n;
    n.p = sup_p_h3_ + sup_pt_h2_ + std::sqrt(int_grad_lap_pt_) + sup_grad_ptt_ +
          std::sqrt(int_lap_ptt_) + std::sqrt(int_pttt_);
    n.theta = sup_theta_h2_ + sup_theta_t_h1_ + sup_theta_tt_;
    n.q = sup_q_h1_ + std::sqrt(int_qt_) + std::sqrt(int_qtt_);
    return n;
}

std::vector<double> gronwall_bound(double u0, std::span<const double> alpha,
                                   std::span<const double> beta, std::span<const double> t_grid) {
    const std::size_t n = t_grid.size();
    if (alpha.size() != n || beta.size() != n) throw SimError("Gronwall samples must match the time grid");
    std::vector<double> bound(n);
    if (n == 0) return bound;
    double A = 0.0;        // int_0^t alpha
    double integral = 0.0; // int_0^t beta(s) exp(A(t) - A(s)) ds
    bound[0] = u0;
    for (std::size_t i = 1; i < n; ++i) {
        const double h = t_grid[i] - t_grid[i - 1];
        const double dA = 0.5 * h * (alpha[i - 1] + alpha[i]);
        const double growth = std::exp(dA);
        integral = growth * integral + 0.5 * h * (beta[i - 1] * growth + beta[i]);
        A += dA;
        bound[i] = u0 * std::exp(A) + integral;
    }
    return bound;
}

std::vector<std::size_t> decay_certificate_violations(std::span<const double> energies, double c,
                                                      double dt) {
    std::vector<std::size_t> bad;
    if (energies.empty()) return bad;
    const double factor = 1.0 + 2.0 * c * dt;
    for (std::size_t n = 1; n < energies.size(); ++n) {
        const double bound = energies[0] * std::pow(factor, -static_cast<double>(n));
        if (energies[n] > bound || energies[n] > energies[n - 1]) bad.push_back(n);
    }
    return bad;
}

EnergyReport make_energy_report(const CoupledState& state, const PhysicalParams& params,
                                const XNorms& x_norm) {
    EnergyReport r;
    r.t = state.t;
    for (int k = 0; k < 3; ++k) {
        r.E[k] = heat_energy(state.thermal, params, k);
        r.D[k] = heat_dissipation(state.thermal, params, k);
    }
    r.E_tau = r.E[0] + r.E[1] + r.E[2];
    r.D_total = r.D[0] + r.D[1] + r.D[2];
    r.theta = theta_higher_energy(state.thermal, params);

    const StepCoefficients& now = state.coefficients.back(0);
    const StepCoefficients& before = state.coefficients.back(1);
    r.acoustic = acoustic_energy(state.acoustic, now.coeffs, params);
    r.frakD0 = acoustic_dissipation(state.acoustic, now.coeffs, params);
    const double dt = state.acoustic.history.spacing(2);
    r.coefficients = coefficient_diagnostics(before.coeffs, now.coeffs, dt);
    r.alpha_min = now.coeffs.alpha_min;
    r.picard_iterations = state.picard_iterations_last;
    r.heat_residual = heat_balance_residual(state.thermal, now.f, params);
    r.acoustic_residual = acoustic_identity_residual(state.acoustic, before.coeffs, now.coeffs, params);
    r.x_norm = x_norm;
    return r;
}

} // namespace wpc
