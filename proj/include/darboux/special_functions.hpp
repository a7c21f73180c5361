#pragma once

namespace darboux {

// Standard normal CDF.
double normal_cdf(double x);

// Standard normal density.
double normal_pdf(double x);

// Brownian transition density: exp(-d^2/2t)/sqrt(2 pi t).
double bm_kernel(double t, double d);

// Physicists' Hermite polynomial H_n(x) by three-term recurrence
// (stable for the n <= 30 range used here).
double hermite_poly(int n, double x);

}  // namespace darboux
