#include <doctest.h>

#include <cmath>
#include <random>

#include "darboux/errors.hpp"
#include "darboux/quadrature.hpp"

using namespace darboux;

namespace {
constexpr double kSqrtPi = 1.7724538509055160273;
const double kInf = std::numeric_limits<double>::infinity();
}  // namespace

TEST_CASE("polynomial exactness of the embedded rule") {
    // one unsplit segment integrates low-degree monomials to machine
    // precision; a typo in the node/weight tables would show up here
    for (int k = 0; k <= 13; ++k) {
        auto f = [k](double x) { return std::pow(x, k); };
        const QuadratureResult r = quad_adaptive(f, 0.0, 1.0, 1e-13);
        CHECK(r.value == doctest::Approx(1.0 / (k + 1)).epsilon(1e-14));
    }
}

TEST_CASE("basic integrals") {
    CHECK(quad_adaptive([](double x) { return x; }, 0.0, 1.0, 1e-12).value ==
          doctest::Approx(0.5).epsilon(1e-13));
    CHECK(quad_adaptive([](double y) { return std::exp(-y * y); }, -kInf, kInf, 1e-12).value ==
          doctest::Approx(kSqrtPi).epsilon(1e-12));
    CHECK(quad_adaptive([](double y) { return std::exp(-y); }, 0.0, kInf, 1e-12).value ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(quad_adaptive([](double y) { return std::exp(y); }, -kInf, 0.0, 1e-12).value ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("result invariants and orientation") {
    const QuadratureResult r = quad_adaptive([](double x) { return std::sin(x); }, 0.0, 3.0, 1e-11);
    CHECK(r.error_estimate >= 0.0);
    CHECK(r.evaluations >= 1);
    const QuadratureResult rev =
        quad_adaptive([](double x) { return std::sin(x); }, 3.0, 0.0, 1e-11);
    CHECK(rev.value == doctest::Approx(-r.value).epsilon(1e-13));
}

TEST_CASE("linearity on random smooth integrands") {
    std::mt19937 gen(2024);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    const double tol = 1e-11;
    for (int trial = 0; trial < 20; ++trial) {
        const double a = coef(gen), b = coef(gen), w = coef(gen);
        auto f = [w](double x) { return std::sin(3.0 * x) * std::exp(-x * x) + w * x * x; };
        auto g = [w](double x) { return std::cos(2.0 * x + w); };
        auto combo = [&](double x) { return a * f(x) + b * g(x); };
        const double lhs = quad_adaptive(combo, -1.5, 2.0, tol).value;
        const double rhs = a * quad_adaptive(f, -1.5, 2.0, tol).value +
                           b * quad_adaptive(g, -1.5, 2.0, tol).value;
        CHECK(std::abs(lhs - rhs) < 10.0 * tol);
    }
}

TEST_CASE("budget exhaustion reports NonConvergence") {
    QuadratureOptions opts;
    opts.max_segments = 6;
    auto nasty = [](double x) { return 1.0 / std::sqrt(x); };
    CHECK_THROWS_AS(quad_adaptive(nasty, 1e-30, 1.0, 1e-14, opts), NonConvergence);
    // same integral with throwing disabled still returns its best estimate
    opts.throw_on_failure = false;
    const QuadratureResult r = quad_adaptive(nasty, 1e-30, 1.0, 1e-14, opts);
    CHECK(r.error_estimate > 1e-14);
}

TEST_CASE("improper-integral trend probe") {
    // bounded integrand near 0: converges
    const TailProbe conv = probe_improper_integral([](double y) { return 1.0 + y; }, 0.0, 1.0);
    CHECK(conv.verdict == TailVerdict::Convergent);
    CHECK(conv.value == doctest::Approx(1.5).epsilon(1e-3));  // trend probe, not a precision integral
    // 1/y diverges
    const TailProbe div = probe_improper_integral([](double y) { return 1.0 / y; }, 0.0, 1.0);
    CHECK(div.verdict == TailVerdict::Divergent);
    // infinite endpoint: e^{-y} converges, constant diverges
    CHECK(probe_improper_integral([](double y) { return std::exp(-y); }, kInf, 0.0).verdict ==
          TailVerdict::Convergent);
    CHECK(probe_improper_integral([](double) { return 0.3; }, kInf, 0.0).verdict ==
          TailVerdict::Divergent);
}
