#pragma once

#include "darboux/scalar_field.hpp"

namespace darboux {

// Central-difference derivative of order 1 or 2, O(step^2) accurate.
// Requires x +/- 2*step inside the field's domain (DomainMargin otherwise).
double fd_derivative(const ScalarField& f, double x, int order, double step);

inline double fd_step(double x) { return 1e-5 * (1.0 + std::abs(x)); }

// Wronskian f(x) g'(x) - f'(x) g(x), analytic derivatives when present.
double wronskian_num(const ScalarField& f, const ScalarField& g, double x);

}  // namespace darboux
