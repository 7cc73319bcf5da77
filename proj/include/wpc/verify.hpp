#ifndef WPC_VERIFY_HPP
#define WPC_VERIFY_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "wpc/config.hpp"

namespace wpc {

struct CheckResult {
    std::string name;
    bool passed = false;
    double value = 0.0;
    double threshold = 0.0;
};

/// Summation by parts on random fields, exact Laplacian of a quadratic, sine eigenvectors,
/// and the tridiagonal solver residual.
std::vector<CheckResult> operator_exactness_checks(const SimConfig& config);

/// Damped wave with alpha = r = 1 against p = exp(-t) sin(pi x). The temporal order uses b = 1;
/// the spatial order uses b = 1/2 because for b = 1 the exact solution is also an exact
/// solution of the semi-discrete problem and carries no spatial error. The spatial errors are
/// Richardson-extrapolated in time so the first-order time error does not pollute them.
std::vector<CheckResult> manufactured_solution_checks();

/// Heat balance against the scalar modal recurrence, the decay certificate, O(dt) refinement
/// of the balance residuals and the fixed-point residual of accepted coupled steps.
std::vector<CheckResult> energy_balance_checks(const SimConfig& config);

/// L2 error at time T of the damped-wave scheme against p = exp(-t) sin(pi x), with the
/// forcing g = exp(-t) sin(pi x) (1 + pi^2 (1 - b)).
double manufactured_acoustic_error(std::size_t n, double dt, double T, double b = 1.0);

void write_verify_csv(std::ostream& os, const std::vector<CheckResult>& checks);

} // namespace wpc

#endif
