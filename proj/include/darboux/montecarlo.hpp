#pragma once

#include <cstdint>
#include <vector>

#include "darboux/kernel.hpp"

namespace darboux {

// Deterministic splittable RNG: one independent stream per (seed, path),
// so results do not depend on scheduling. Gaussians by Box-Muller.
class PathRng {
  public:
    PathRng(std::uint64_t seed, std::uint64_t path);
    double uniform();      // (0, 1]
    double gaussian();
    double exponential();  // rate 1

  private:
    std::uint64_t next();
    std::uint64_t state_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

struct SimConfig {
    double dt = 1e-3;
    long n_paths = 100000;
    std::uint64_t seed = 12345;
    int threads = 0;  // 0: DARBOUX_THREADS env var, then hardware count
};

struct SimOutcome {
    bool alive = false;
    double position = 0.0;   // meaningful when alive
    double kill_time = 0.0;  // meaningful when dead
};

struct SimReport {
    std::vector<SimOutcome> outcomes;
    long step_too_large = 0;  // steps with dt * |drift| > 0.5 (diagnostic)
    long boundary_deaths = 0;
    long hazard_deaths = 0;

    long alive_count() const;
    double survival_fraction() const;
};

// Euler-Maruyama paths of the spec's SDE with killing by an exponential
// hazard clock. Killing boundaries absorb on crossing with a Brownian-
// bridge correction; reflecting boundaries mirror; elastic boundaries
// mirror and kill geometrically in the reflected overshoot (a local-time
// proxy, exact only in the dt -> 0 limit). Finite boundaries without a
// stated condition (exit or unreachable-natural endpoints) absorb.
SimReport simulate_paths(const DiffusionSpec& spec, double x0, double t, const SimConfig& cfg);

struct HistogramBin {
    double lo = 0.0, hi = 0.0;
    double mc_mass = 0.0;
    double kernel_mass = 0.0;
    double z = 0.0;
};

struct HistogramComparison {
    std::vector<HistogramBin> bins;
    double max_abs_z = 0.0;
    long alive = 0;
};

// Binned survivor histogram against bin masses of the kernel; z-scores
// are binomial. Throws TooFewSurvivors below 100 alive paths.
HistogramComparison mc_density_error(const std::vector<SimOutcome>& outcomes,
                                     const TransitionKernel& kernel, double t, double x0,
                                     double lo, double hi, int nbins);

struct ExcessiveCheckResult {
    double mc_mean = 0.0;
    double ci_upper = 0.0;  // 99% one-sided
    double bound = 0.0;     // e^{(m_h+lambda)t} h(x0)
    bool passed = false;
};

// Monte-Carlo check of the excessive bound E[h(X~_t)] <= e^{(m_h+lambda)t} h(x),
// with dead paths contributing h = 0.
ExcessiveCheckResult excessive_check(const SeedFunction& seed, double m_h,
                                     const DiffusionSpec& spec_Xtilde, double x0, double t,
                                     const SimConfig& cfg, double slack = 0.01);

struct McComparison {
    double mc_value = 0.0;
    double mc_se = 0.0;
    double reference = 0.0;
    double z = 0.0;
    bool passed = false;  // |z| <= 3
};

// Feynman-Kac identity for the elastic model: the hazard-weighted
// barrier expectation E_x[e^{-int kappa(W)} 1{W_t<=y, min W>alpha}]
// against quadrature of the transformed kernel.
McComparison corollary52_check(double gamma, double t, double x, double y, const SimConfig& cfg);

}  // namespace darboux
