#pragma once

#include <cstdint>

#include "darboux/scalar_field.hpp"

namespace darboux {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;  // >= 0
    std::int64_t evaluations = 0;
    double operator*() const { return value; }
};

struct QuadratureOptions {
    double tol_abs = 1e-10;
    double tol_rel = 0.0;        // converged when err <= max(tol_abs, tol_rel*|value|)
    int max_segments = 4000;
    bool throw_on_failure = true;  // otherwise return the best estimate
};

// Globally adaptive Gauss-Kronrod (G7,K15) quadrature of f over (a,b).
// Infinite endpoints are handled by rational substitutions that map the
// tail onto (0,1), so one engine serves finite and improper integrals.
// Throws NonConvergence when the subdivision budget runs out with the
// error estimate above tolerance.
QuadratureResult quad_adaptive(const std::function<double(double)>& f, double a, double b,
                               double tol, QuadratureOptions opts = {});

inline QuadratureResult quad_adaptive(const ScalarField& f, double a, double b, double tol,
                                      QuadratureOptions opts = {}) {
    return quad_adaptive([&f](double x) { return f(x); }, a, b, tol, opts);
}

// Convergence-vs-divergence probe for improper integrals of nonnegative
// integrands: integrates over a ladder of windows approaching `endpoint`
// from `z` and reports the trend.
enum class TailVerdict { Convergent, Divergent, Undecided };

struct TailProbe {
    TailVerdict verdict = TailVerdict::Undecided;
    double value = 0.0;  // limit estimate when convergent
};

TailProbe probe_improper_integral(const std::function<double(double)>& f, double endpoint,
                                  double z, int ladder_steps = 8);

}  // namespace darboux
