#pragma once

#include <optional>
#include <vector>

#include "darboux/kernel.hpp"

namespace darboux {

// Shift constant sup_y [c(y) - (h'/h)^2(y)], estimated on a grid with
// local refinement around the maximizer and geometric probes toward the
// boundaries. Throws Unbounded when the probes keep growing (the
// construction is then unavailable for this seed).
double compute_m_h(const DiffusionSpec& spec, const SeedFunction& seed,
                   const std::vector<double>& grid);

// Killing rate of the transformed process, m_h + (h'/h)^2 - c. Tiny
// negatives in [-1e-10, 0] are clamped to zero, anything lower throws
// NegativeRate (the supplied m_h is inconsistent with the seed).
double tilde_c_at(const DiffusionSpec& spec, const SeedFunction& seed, double m_h, double y);

struct InvarianceResult {
    double residual = 0.0;  // relative
    bool passed = false;
};

// Checks E_x[h(Y_t)] = e^{lambda t} h(x) by quadrature of the kernel
// against h; this is the property that separates genuine seed functions
// from mere solutions of the eigenvalue equation.
InvarianceResult verify_lambda_invariance(const TransitionKernel& kernel_Y,
                                          const SeedFunction& seed, double t, double x,
                                          double tol);

// Transition density of the transformed process:
//   e^{-(m_h+2 lambda) t} (h(x)/h(y)) d/dx [ h(x)^{-1} int_y^r p_t(x,u) h(u) du ],
// the outer derivative by central differences of the inner quadrature.
double darboux_density(const TransitionKernel& kernel_Y, const SeedFunction& seed, double m_h,
                       double t, double x, double y);

// First construction step: e^{-lambda t} p_t(x,y) h(y)/h(x), a
// conservative diffusion when the seed is genuinely invariant.
double doob_density(const TransitionKernel& kernel_Y, const SeedFunction& seed, double t,
                    double x, double y);
TransitionKernel doob_kernel(const TransitionKernel& kernel_Y, const SeedFunction& seed);

// Dual density d/dy int_x^r p_t(y,u) du for a conservative kernel.
double siegmund_dual_density(const TransitionKernel& kernel_X, double t, double x, double y);

// Deviation from constancy (max - min over the probe grid) of
//   x -> P_x(X_t <= y) - P_y(dual_t > x),
// which vanishes up to a constant exactly when the two kernels are dual.
double siegmund_identity_deviation(const TransitionKernel& kernel_X,
                                   const TransitionKernel& kernel_dual, double t, double y,
                                   const std::vector<double>& x_probes);

// Residual of the intertwining relation: for f with
// L_Y f = (mu + m_h + 2 lambda) f, the image D_h f must satisfy
// L_Ytilde (D_h f) = mu (D_h f). Returns |L_Ytilde g - mu g| at x.
double intertwine_residual(const DiffusionSpec& spec, const SeedFunction& seed, double m_h,
                           const ScalarField& f, double mu, double x);

// First-order ladder operator D_h f = f' - (h'/h) f.
double apply_dh(const SeedFunction& seed, const ScalarField& f, double x);

// Operator factorization residuals at the point of application:
//   (1/2) D_{1/h} D_h f = (L_Y - lambda) f
//   (1/2) D_h D_{1/h} g = (L_Ytilde + lambda + m_h) g
double factorization_residual_forward(const DiffusionSpec& spec, const SeedFunction& seed,
                                      const ScalarField& f, double x);
double factorization_residual_backward(const DiffusionSpec& spec, const SeedFunction& seed,
                                       double m_h, const ScalarField& g, double x);

// Dual-string composition check: with u' = h^2, v' = 2 h^{-2} and string
// measures M (dM/du = 2 h^{-4}) and m (dm/dv = h^4/2), m is the inverse
// function of M. Returns max |m(M(u(x))) - u(x)| over the grid, with all
// antiderivatives by quadrature and inversions by root-finding.
double krein_dual_check(const SeedFunction& seed, const std::vector<double>& grid);

struct DarbouxResult {
    double m_h = 0.0;
    ScalarField tilde_c;
    DiffusionSpec spec_Ytilde;
    TransitionKernel kernel_Ytilde;
    // Classification of the intermediate conservative process at each
    // boundary, with the justification for its reflecting behaviour at
    // non-singular points (proved only when Y is reflecting/elastic there).
    std::string x_boundary_report;
};

// Full three-step construction. Boundary conditions flip per the main
// theorem: reflecting/elastic boundaries of Y become killing boundaries
// of the transform. m_h_override replaces the grid sup (the transform is
// valid for any shift >= sup; catalog models pin their own constant).
DarbouxResult build_darboux(const DiffusionSpec& spec_Y, const SeedFunction& seed,
                            const TransitionKernel& kernel_Y, const std::vector<double>& grid,
                            std::optional<double> m_h_override = std::nullopt);

}  // namespace darboux
