#pragma once

#include <stdexcept>
#include <string>

namespace darboux {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Adaptive quadrature ran out of subdivision budget with the error
// estimate still above the requested tolerance.
struct NonConvergence : Error {
    NonConvergence(const std::string& what, double value, double error_estimate)
        : Error(what), value(value), error_estimate(error_estimate) {}
    double value;
    double error_estimate;
};

// A finite-difference stencil would step outside the field's domain.
struct DomainMargin : Error {
    using Error::Error;
};

// An integral needed by a higher-level operation could not be computed.
struct QuadratureFailure : Error {
    using Error::Error;
};

// Boundary classification could not decide convergence vs. divergence
// within its evaluation budget.
struct Inconclusive : Error {
    using Error::Error;
};

struct DegenerateWronskian : Error {
    using Error::Error;
};

// Transformed killing rate came out below -1e-10: the supplied shift
// constant is inconsistent with the seed function.
struct NegativeRate : Error {
    using Error::Error;
};

// sup[c - (h'/h)^2] grows without bound under grid refinement.
struct Unbounded : Error {
    using Error::Error;
};

// An input function fails the eigen-equation it was required to satisfy.
struct PreconditionResidual : Error {
    using Error::Error;
};

struct SlowConvergence : Error {
    using Error::Error;
};

struct TooFewSurvivors : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

struct UnknownSuite : Error {
    using Error::Error;
};

}  // namespace darboux
