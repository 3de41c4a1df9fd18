#pragma once

#include <stdexcept>
#include <string>

namespace bosegas {

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised by iterative solvers; `residual` is the last measured residual.
struct ConvergenceError : std::runtime_error {
    ConvergenceError(const std::string& what, double residual_, int iterations_)
        : std::runtime_error(what), residual(residual_), iterations(iterations_) {}
    double residual;
    int iterations;
};

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace bosegas
