#include "wpc/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wpc/errors.hpp"

namespace wpc {

double PhysicalParams::decay_rate() const {
    const double perfusion = ell() / m();
    if (tau == 0.0) return perfusion;
    return std::min(perfusion, 2.0 / tau);
}

double SpeedOfSoundModel::h(double theta) const {
    double value = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) value = value * theta + *it;
    if (!(value >= h_floor)) throw FloorViolated(theta, value, h_floor);
    return value;
}

double SpeedOfSoundModel::k(const PhysicalParams& params, double theta) const {
    return params.beta_acous / (params.rho * h(theta));
}

double SpeedOfSoundModel::k1(const PhysicalParams& params) const {
    return params.beta_acous / (params.rho * h_floor);
}

NodeField q_source(const PhysicalParams& params, const NodeField& p_t) {
    const double coeff = 2.0 * params.b / (params.rho_a * std::pow(params.C_a, 4));
    NodeField f(p_t.grid());
    for (std::size_t j = 0; j < f.size(); ++j) f[j] = coeff * p_t[j] * p_t[j];
    return f;
}

std::vector<std::string> validate_params(const PhysicalParams& p, const SpeedOfSoundModel& model) {
    std::vector<std::string> out;
    auto positive = [&](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v)) out.push_back(std::string(name) + " must be positive");
    };
    positive(p.rho_a, "rho_a");
    positive(p.C_a, "C_a");
    positive(p.rho_b, "rho_b");
    positive(p.C_b, "C_b");
    positive(p.kappa_a, "kappa_a");
    positive(p.rho, "rho");
    positive(p.beta_acous, "beta_acous");
    if (!(p.b > 0.0) || !std::isfinite(p.b)) out.emplace_back("b must be strictly positive");
    if (!(p.W >= 0.0) || !std::isfinite(p.W)) out.emplace_back("W must be nonnegative");
    if (!(p.tau >= 0.0) || !std::isfinite(p.tau)) out.emplace_back("tau must be nonnegative");
    if (!std::isfinite(p.theta_a)) out.emplace_back("theta_a must be finite");

    if (!(model.h_floor > 0.0) || !std::isfinite(model.h_floor)) {
        out.emplace_back("h_floor must be positive");
    } else if (model.coeffs.empty()) {
        out.emplace_back("speed model needs at least one coefficient");
    } else if (!(model.coeffs.front() >= model.h_floor)) {
        out.emplace_back("coeffs[0] must be at least h_floor");
    }
    for (double c : model.coeffs) {
        if (!std::isfinite(c)) {
            out.emplace_back("speed model coefficients must be finite");
            break;
        }
    }
    if (out.empty()) {
        const double k1 = model.k1(p);
        if (!(k1 > 0.0) || !std::isfinite(k1)) out.emplace_back("k1 must be finite and positive");
    }
    return out;
}

} // namespace wpc
