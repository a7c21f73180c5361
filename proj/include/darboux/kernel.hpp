#pragma once

#include <functional>
#include <string>

#include "darboux/diffusion.hpp"

namespace darboux {

enum class Provenance { ClosedForm, QuadratureBuilt, Spectral, MonteCarloEstimate };

// Transition density p_t(x,y) of a (sub-Markov) diffusion, taken with
// respect to Lebesgue measure.
struct TransitionKernel {
    std::function<double(double, double, double)> eval;  // (t, x, y)
    Provenance provenance = Provenance::ClosedForm;
    DiffusionSpec spec;
    // Radius R(t, center) outside of which the kernel (times the growth
    // this model's seed allows) is below 1e-16; integrals against the
    // kernel truncate here. The default covers Gaussian kernels paired
    // with at-most-exponential factors.
    std::function<double(double, double)> tail_radius;

    double operator()(double t, double x, double y) const { return eval(t, x, y); }
    double default_radius(double t) const;

    // Integration window for integrals of p_t(x,center +/- .) h(.):
    // the model interval clipped to the tail radius around `center`.
    double clip_lo(double t, double center) const;
    double clip_hi(double t, double center) const;
};

// Positive lambda-invariant function h driving the transform, with its
// analytic derivative and eigenvalue.
struct SeedFunction {
    ScalarField h;
    double lambda = 0.0;

    double log_derivative(double x) const { return h.derivative(x) / h(x); }
};

struct SeedReport {
    double max_ode_residual = 0.0;     // |(1/2)h'' - c h - lambda h| (normalized)
    bool positive = true;
    bool boundary_ok = true;
    std::string detail;
};

// Checks the seed against its diffusion: positivity and the eigenvalue
// equation on a probe grid, plus the boundary condition at each
// non-singular endpoint by linear extrapolation to the boundary.
SeedReport validate_seed(const DiffusionSpec& spec, const SeedFunction& seed,
                         const std::vector<double>& grid);

}  // namespace darboux
