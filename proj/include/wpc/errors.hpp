#ifndef WPC_ERRORS_HPP
#define WPC_ERRORS_HPP

#include <cstddef>
#include <exception>
#include <stdexcept>
#include <string>

namespace wpc {

/// Base class of every error raised by the simulator.
class SimError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The speed-of-sound polynomial dropped below its positive floor h_1.
class FloorViolated : public SimError {
public:
    FloorViolated(double theta, double value, double floor);
    double theta;
    double value;
    double floor;
};

class GridMismatch : public SimError {
public:
    using SimError::SimError;
};

class SingularSystem : public SimError {
public:
    SingularSystem(std::size_t row, double pivot);
    std::size_t row;
    double pivot;
};

class InsufficientHistory : public SimError {
public:
    InsufficientHistory(std::size_t needed, std::size_t available);
};

class InvalidMode : public SimError {
public:
    using SimError::SimError;
};

class TauZeroFluxDerivative : public SimError {
public:
    TauZeroFluxDerivative();
};

/// The leading coefficient 1 - 2k(theta)p fell below the admissible bound.
/// `step` is -1 when the failure is detected outside of a time loop.
class Degenerate : public SimError {
public:
    Degenerate(double alpha_min, std::size_t node, long step = -1, double time = 0.0);
    double alpha_min;
    std::size_t node;
    long step;
    double time;
};

class PicardDiverged : public SimError {
public:
    PicardDiverged(int iterations, double last_difference, bool non_decreasing, long step = -1,
                   double time = 0.0);
    int iterations;
    double last_difference;
    bool non_decreasing;
    long step;
    double time;
};

/// A member run of a tau sweep failed; `cause` holds the original error.
class SweepMemberFailed : public SimError {
public:
    SweepMemberFailed(double tau, std::exception_ptr cause, const std::string& what);
    double tau;
    std::exception_ptr cause;
};

/// Configuration problems. `path` is a dotted key path such as "params.b".
class ConfigError : public SimError {
public:
    ConfigError(std::string path, std::string reason, const std::string& what);
    std::string path;
    std::string reason;
};

class ParseError : public ConfigError {
public:
    ParseError(std::size_t line, const std::string& reason);
    std::size_t line;
};

class ValidationError : public ConfigError {
public:
    ValidationError(const std::string& path, const std::string& reason);
};

class UnknownKey : public ConfigError {
public:
    explicit UnknownKey(const std::string& path);
};

} // namespace wpc

#endif
