#pragma once

#include <functional>
#include <utility>

#include "darboux/interval.hpp"

namespace darboux {

// A real function on an open interval, optionally with an analytic
// derivative. Fields without one fall back to central differences.
class ScalarField {
  public:
    using Fn = std::function<double(double)>;

    ScalarField() = default;
    explicit ScalarField(Fn eval, Interval domain = Interval::real_line())
        : eval_(std::move(eval)), domain_(domain) {}
    ScalarField(Fn eval, Fn deriv, Interval domain = Interval::real_line())
        : eval_(std::move(eval)), deriv_(std::move(deriv)), domain_(domain) {}

    static ScalarField constant(double value, Interval domain = Interval::real_line()) {
        return {[value](double) { return value; }, [](double) { return 0.0; }, domain};
    }

    double operator()(double x) const { return eval_(x); }
    bool has_analytic_derivative() const { return static_cast<bool>(deriv_); }
    const Interval& domain() const { return domain_; }
    explicit operator bool() const { return static_cast<bool>(eval_); }

    // Analytic derivative when available, otherwise a central difference
    // with step scaled by 1+|x|.
    double derivative(double x) const;
    double second_derivative(double x) const;

  private:
    Fn eval_;
    Fn deriv_;
    Interval domain_;
};

}  // namespace darboux
