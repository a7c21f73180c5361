#include <doctest.h>

#include <cmath>

#include "darboux/errors.hpp"
#include "darboux/finite_diff.hpp"

using namespace darboux;

TEST_CASE("first and second derivatives") {
    ScalarField sq([](double x) { return x * x; });
    CHECK(fd_derivative(sq, 3.0, 1, 1e-5) == doctest::Approx(6.0).epsilon(1e-9));

    ScalarField sine([](double x) { return std::sin(x); });
    CHECK(std::abs(fd_derivative(sine, 0.0, 2, 1e-4)) < 1e-8);

    // sinh(1) by series: sum over odd k of 1/k!
    double sinh1 = 0.0, term = 1.0;
    for (int k = 1; k <= 25; k += 2) {
        term = 1.0;
        for (int j = 2; j <= k; ++j) term /= j;
        sinh1 += term;
    }
    CHECK(sinh1 == doctest::Approx(1.1752011936438014).epsilon(1e-15));
    ScalarField ch([](double x) { return std::cosh(x); });
    CHECK(fd_derivative(ch, 1.0, 1, 1e-5) == doctest::Approx(sinh1).epsilon(1e-9));
}

TEST_CASE("second-order convergence under step halving") {
    ScalarField f([](double x) { return std::exp(std::sin(x)); });
    const double x = 0.7;
    const double exact = std::cos(x) * std::exp(std::sin(x));
    const double e1 = std::abs(fd_derivative(f, x, 1, 2e-3) - exact);
    const double e2 = std::abs(fd_derivative(f, x, 1, 1e-3) - exact);
    CHECK(e1 / e2 > 3.0);
    CHECK(e1 / e2 < 5.0);
}

TEST_CASE("domain margin") {
    ScalarField f([](double x) { return x; }, Interval(0.0, 1.0));
    CHECK_THROWS_AS(fd_derivative(f, 0.01, 1, 0.02), DomainMargin);
    CHECK_THROWS_AS(fd_derivative(f, 0.99, 2, 0.02), DomainMargin);
    CHECK_NOTHROW(fd_derivative(f, 0.5, 1, 0.02));
}

TEST_CASE("wronskians") {
    ScalarField ep([](double x) { return std::exp(x); }, [](double x) { return std::exp(x); });
    ScalarField em([](double x) { return std::exp(-x); }, [](double x) { return -std::exp(-x); });
    for (double x : {-1.3, 0.0, 2.4}) {
        CHECK(wronskian_num(ep, em, x) == doctest::Approx(-2.0).epsilon(1e-12));
        CHECK(wronskian_num(ep, ep, x) == doctest::Approx(0.0).epsilon(1e-12));
    }
    // no analytic derivatives: falls back to central differences
    ScalarField c([](double x) { return std::cos(x); });
    ScalarField s([](double x) { return std::sin(x); });
    for (double x : {-0.9, 0.5, 1.8}) {
        CHECK(wronskian_num(c, s, x) == doctest::Approx(1.0).epsilon(1e-9));
    }
}
