#include "wpc/errors.hpp"

#include <sstream>

namespace wpc {

namespace {

std::string degenerate_message(double alpha_min, std::size_t node, long step, double time) {
    std::ostringstream os;
    os.precision(17);
    os << "degenerate leading coefficient: alpha_min=" << alpha_min << " at node " << node;
    if (step >= 0) os << ", step " << step << ", t=" << time;
    return os.str();
}

std::string picard_message(int iterations, double d, bool non_decreasing, long step, double time) {
    std::ostringstream os;
    os.precision(17);
    os << "Picard iteration failed after " << iterations << " iterations (last difference " << d
       << (non_decreasing ? ", non-decreasing" : ", still above tolerance") << ")";
    if (step >= 0) os << " at step " << step << ", t=" << time;
    return os.str();
}

} // namespace

FloorViolated::FloorViolated(double theta_, double value_, double floor_)
    : SimError("speed-of-sound polynomial below floor: h(" + std::to_string(theta_) +
               ") = " + std::to_string(value_) + " < " + std::to_string(floor_)),
      theta(theta_), value(value_), floor(floor_) {}

SingularSystem::SingularSystem(std::size_t row_, double pivot_)
    : SimError("singular tridiagonal system at row " + std::to_string(row_) +
               " (pivot " + std::to_string(pivot_) + ")"),
      row(row_), pivot(pivot_) {}

InsufficientHistory::InsufficientHistory(std::size_t needed, std::size_t available)
    : SimError("insufficient history: need " + std::to_string(needed) + " levels, have " +
               std::to_string(available)) {}

TauZeroFluxDerivative::TauZeroFluxDerivative()
    : SimError("flux time derivative q1 is undefined for tau = 0") {}

Degenerate::Degenerate(double alpha_min_, std::size_t node_, long step_, double time_)
    : SimError(degenerate_message(alpha_min_, node_, step_, time_)), alpha_min(alpha_min_),
      node(node_), step(step_), time(time_) {}

PicardDiverged::PicardDiverged(int iterations_, double d, bool non_decreasing_, long step_,
                               double time_)
    : SimError(picard_message(iterations_, d, non_decreasing_, step_, time_)),
      iterations(iterations_), last_difference(d), non_decreasing(non_decreasing_), step(step_),
      time(time_) {}

SweepMemberFailed::SweepMemberFailed(double tau_, std::exception_ptr cause_, const std::string& what)
    : SimError(what), tau(tau_), cause(std::move(cause_)) {}

ConfigError::ConfigError(std::string path_, std::string reason_, const std::string& what)
    : SimError(what), path(std::move(path_)), reason(std::move(reason_)) {}

ParseError::ParseError(std::size_t line_, const std::string& reason_)
    : ConfigError("", reason_, "parse error at line " + std::to_string(line_) + ": " + reason_),
      line(line_) {}

ValidationError::ValidationError(const std::string& path_, const std::string& reason_)
    : ConfigError(path_, reason_, path_ + ": " + reason_) {}

UnknownKey::UnknownKey(const std::string& path_)
    : ConfigError(path_, "unknown key", "unknown key: " + path_) {}

} // namespace wpc
