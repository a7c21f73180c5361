#pragma once

#include <optional>
#include <string>
#include <vector>

#include "darboux/greens.hpp"
#include "darboux/kernel.hpp"

namespace darboux {

// Spectral representation of a transition density: a discrete series
// sum_n w_n e^{lambda_n t} u_n(x) u_n(y), an oscillatory band evaluated
// by envelope-truncated quadrature, or both.
struct SpectralForm {
    enum class Kind { DiscreteSeries, ContinuousIntegral, Mixed };
    Kind kind = Kind::DiscreteSeries;
    int first_index = 0;
    int max_terms = 200;
    double t_floor = 0.01;  // series conditioning degrades below this
    std::function<double(int)> eigenvalue;                 // nonincreasing in the index
    std::function<double(int, double)> eigenfunction;
    std::function<double(int)> weight;
    std::function<double(double, double, double, double)> band;  // (t,x,y,tol)
};

// A catalog entry: killed Brownian motion Y, its seed function, and the
// transformed process with closed-form kernels plus optional spectral
// data and Green's-function builders.
struct ExampleModel {
    std::string id;
    std::string description;
    double gamma = std::numeric_limits<double>::quiet_NaN();  // e3 only
    DiffusionSpec spec_Y;
    DiffusionSpec spec_Ytilde;
    SeedFunction seed;
    double m_h = 0.0;  // shift constant this entry was built with
    TransitionKernel pY;
    TransitionKernel pYtilde;
    std::optional<SpectralForm> spectral;                 // of the transformed kernel
    std::function<FundamentalPair(double)> greens_Y;      // mu -> pair, may be empty
    std::function<FundamentalPair(double)> greens_Ytilde;
    std::vector<double> probe_grid;                        // interior probes for checks
};

// ids: e1 (BM on R, cosh seed), e2 (absorbed BM on (0,inf), sinh seed),
// e3 (elastic BM, exponential seed, takes gamma), e4 (BM on (0,1) killed
// at both ends, sine seed), e5 (BM killed at quadratic rate, related to
// the Ornstein-Uhlenbeck process).
ExampleModel make_example(const std::string& id,
                          double gamma = std::numeric_limits<double>::quiet_NaN());
const std::vector<std::string>& catalog_ids();

double pY_eval(const ExampleModel& m, double t, double x, double y);
double pYtilde_eval(const ExampleModel& m, double t, double x, double y);

// Truncated spectral evaluation; throws SlowConvergence below the
// model's t floor.
double spectral_eval(const ExampleModel& m, double t, double x, double y, double tol);

// Doob transform X of Y (conservative) and its Siegmund dual, both from
// the model's closed forms.
TransitionKernel doob_kernel_of(const ExampleModel& m);
TransitionKernel dual_kernel_of(const ExampleModel& m);

// Wronskian polynomials of the quadratic-rate model:
// Q_n = 2n(2y^2+1) H_{n-1} - (4y^3+6y) H_n, degree n+3.
double Qn_poly(int n, double y);

// e3 parameterization helpers.
double e3_beta(double gamma);
double e3_alpha(double gamma);  // |beta| = exp(-2 alpha); throws for gamma == 1

enum class PairIdentity { Antiderivative, Wronskian };

// First-order-image identities for eigenfunction pairs: with
// f~ = D_h f, g~ = D_h g and L g = mu g,
//   d/dy [ int f~ g~ ] = d/dy [ f g~ + 2(lambda-mu) int f g ]
// and, when f also solves L f = mu f,
//   Wr[f~, g~] = 2(lambda - mu) Wr[f, g].
// Returns the max residual over the grid; preconditions are
// residual-checked and violations throw PreconditionResidual.
double pair_identity_residual(PairIdentity which, const ScalarField& f, const ScalarField& g,
                              const SeedFunction& seed, const ScalarField& killing, double mu,
                              const std::vector<double>& grid);

// Gauss-Fourier identities behind the continuous-band spectral forms:
//   1: (e^w/2pi) int e^{-tz^2/2} (cos zw + z sin zw)/(1+z^2) dz = e^{t/2} Phi((w-t)/sqrt t)
//   2: (1/2pi)  int e^{-tz^2/2} cos(zw)/(1+z^2) dz       = even combination of Phi
//   3: (1/2pi)  int e^{-tz^2/2} (-z sin zw)/(1+z^2) dz   = odd combination of Phi
// Returns |lhs - rhs|.
double fourier_gaussian_residual(int identity, double t, double w);

// Level-1 and level-2 iterated transforms of the (0,1) model; level 2
// uses the squared-sine seed of the level-1 process.
double iterated_transform_e4(int level, double t, double x, double y);
double e4_fn(int n, double x);        // n cos(pi n x) - sin(pi n x) cot(pi x)
double e4_fn2(int n, double x);       // level-2 eigenfunctions
double e4_h1(double y);               // 2 sin^2(pi y)

// Non-catalog presets used by verification: reflecting BM on (0,inf)
// and the non-invariant linear seed h(y) = y.
DiffusionSpec reflected_bm_spec();
TransitionKernel reflected_bm_kernel();
SeedFunction linear_seed();

}  // namespace darboux
