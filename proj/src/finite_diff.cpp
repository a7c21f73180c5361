#include "darboux/finite_diff.hpp"

#include <cmath>

#include "darboux/errors.hpp"

namespace darboux {

double fd_derivative(const ScalarField& f, double x, int order, double step) {
    if (!(step > 0.0)) throw std::invalid_argument("fd_derivative: step must be > 0");
    if (order != 1 && order != 2) throw std::invalid_argument("fd_derivative: order must be 1 or 2");
    const Interval& dom = f.domain();
    if (!dom.contains(x - 2 * step) || !dom.contains(x + 2 * step)) {
        throw DomainMargin("fd_derivative: x +/- 2*step leaves the domain");
    }
    if (order == 1) return (f(x + step) - f(x - step)) / (2.0 * step);
    return (f(x + step) - 2.0 * f(x) + f(x - step)) / (step * step);
}

double wronskian_num(const ScalarField& f, const ScalarField& g, double x) {
    return f(x) * g.derivative(x) - f.derivative(x) * g(x);
}

// ScalarField derivative helpers live here so the header stays light.
double ScalarField::derivative(double x) const {
    if (deriv_) return deriv_(x);
    double h = fd_step(x);
    // shrink toward a one-sided-safe step near finite endpoints
    while (!(domain_.contains(x - 2 * h) && domain_.contains(x + 2 * h)) && h > 1e-12) h *= 0.5;
    return (eval_(x + h) - eval_(x - h)) / (2.0 * h);
}

double ScalarField::second_derivative(double x) const {
    double h = 1e-4 * (1.0 + std::abs(x));
    while (!(domain_.contains(x - 2 * h) && domain_.contains(x + 2 * h)) && h > 1e-12) h *= 0.5;
    if (deriv_) return (deriv_(x + h) - deriv_(x - h)) / (2.0 * h);
    return (eval_(x + h) - 2.0 * eval_(x) + eval_(x - h)) / (h * h);
}

}  // namespace darboux
