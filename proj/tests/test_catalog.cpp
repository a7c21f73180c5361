#include <doctest.h>

#include <cmath>

#include "darboux/catalog.hpp"
#include "darboux/errors.hpp"
#include "darboux/quadrature.hpp"
#include "darboux/special_functions.hpp"
#include "darboux/transform.hpp"

using namespace darboux;

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrtPi = 1.7724538509055160273;
}  // namespace

TEST_CASE("base kernels") {
    const ExampleModel e1 = make_example("e1");
    CHECK(pY_eval(e1, 1.0, 0.0, 0.0) ==
          doctest::Approx(1.0 / std::sqrt(2.0 * kPi)).epsilon(1e-14));

    // absorbed kernel vanishes at the killed boundary
    const ExampleModel e2 = make_example("e2");
    CHECK(std::abs(pY_eval(e2, 0.5, 1.0, 1e-4)) < 1e-3);
    CHECK(std::abs(pY_eval(e2, 0.5, 1.0, 1e-6)) < 1e-5);

    // quadratic-rate kernel: closed form equals its Hermite series
    const ExampleModel e5 = make_example("e5");
    auto series = [](double t, double x, double y) {
        double s = 0.0, fact = 1.0, pw = 1.0;
        for (int n = 0; n < 40; ++n) {
            if (n > 0) {
                fact *= n;
                pw *= 2.0;
            }
            s += std::exp(-(n + 0.5) * t) / (pw * fact) * hermite_poly(n, x) * hermite_poly(n, y);
        }
        return std::exp(-0.5 * (x * x + y * y)) / kSqrtPi * s;
    };
    CHECK(pY_eval(e5, 0.8, 0.2, -0.5) ==
          doctest::Approx(series(0.8, 0.2, -0.5)).epsilon(1e-10));

    // the image-sum and eigen-series branches agree across the switch
    const ExampleModel e4 = make_example("e4");
    CHECK(pY_eval(e4, 0.15 - 1e-9, 0.3, 0.55) ==
          doctest::Approx(pY_eval(e4, 0.15 + 1e-9, 0.3, 0.55)).epsilon(1e-7));
}

TEST_CASE("transformed kernels") {
    const ExampleModel e1 = make_example("e1");
    CHECK(pYtilde_eval(e1, 1.0, 0.5, -0.2) ==
          doctest::Approx(darboux_density(e1.pY, e1.seed, e1.m_h, 1.0, 0.5, -0.2)).epsilon(1e-5));

    // gamma = 1: killed at unit rate plus absorption at zero
    const ExampleModel e3 = make_example("e3", 1.0);
    const ExampleModel e2 = make_example("e2");
    for (const auto& [t, x, y] : {std::tuple{0.5, 0.6, 1.2}, std::tuple{1.0, 1.1, 0.4}}) {
        CHECK(pYtilde_eval(e3, t, x, y) ==
              doctest::Approx(std::exp(-t) * pY_eval(e2, t, x, y)).epsilon(1e-13));
    }

    // rational factor tends to one far from the origin
    const double t = 0.7, far = 300.0;
    const double q = (2.0 * far * far + 1.0);
    const double bracket = 1.0 + 4.0 * std::sinh(t) * (std::exp(t) - 2.0 * far * far) / (q * q);
    CHECK(std::abs(bracket - 1.0) < 1e-4);
}

TEST_CASE("wronskian polynomials") {
    for (double y : {-1.7, -0.2, 0.8, 2.3}) {
        CHECK(Qn_poly(0, y) == doctest::Approx(-(4.0 * y * y * y + 6.0 * y)).epsilon(1e-14));
    }
    // degree n+3 with leading coefficient -4 * 2^n
    const double big = 50.0;
    for (int n = 0; n <= 8; ++n) {
        const double lead = Qn_poly(n, big) / std::pow(big, n + 3);
        CHECK(lead == doctest::Approx(-4.0 * std::pow(2.0, n)).epsilon(0.01));
    }
    // norm instance: int Q_2^2 dnu = 80 sqrt(pi)
    auto nu_density = [](double y) {
        const double q = 2.0 * y * y + 1.0;
        return std::exp(-y * y) / (q * q);
    };
    const double norm2 = quad_adaptive([&](double y) { return Qn_poly(2, y) * Qn_poly(2, y) *
                                                              nu_density(y); },
                                       -std::numeric_limits<double>::infinity(),
                                       std::numeric_limits<double>::infinity(), 1e-11)
                             .value;
    CHECK(norm2 == doctest::Approx(80.0 * kSqrtPi).epsilon(1e-10));
}

TEST_CASE("elastic model parameterization") {
    CHECK(e3_beta(0.5) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(e3_beta(1.0) == 0.0);
    CHECK(e3_beta(3.0) == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK_THROWS_AS(e3_alpha(1.0), Error);

    // seed in its branch forms: 2 e^{-a} cosh(y+a), e^y, 2 e^{-a} sinh(y+a)
    {
        const ExampleModel m = make_example("e3", 0.5);
        const double a = e3_alpha(0.5);
        for (double y : {0.3, 1.4}) {
            CHECK(m.seed.h(y) ==
                  doctest::Approx(2.0 * std::exp(-a) * std::cosh(y + a)).epsilon(1e-13));
            const double th = std::tanh(y + a);
            CHECK(m.spec_Ytilde.killing(y) == doctest::Approx(th * th).epsilon(1e-12));
        }
    }
    {
        const ExampleModel m = make_example("e3", 1.0);
        for (double y : {0.3, 1.4}) {
            CHECK(m.seed.h(y) == doctest::Approx(std::exp(y)).epsilon(1e-14));
            CHECK(m.spec_Ytilde.killing(y) == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
    {
        const ExampleModel m = make_example("e3", 3.0);
        const double a = e3_alpha(3.0);
        for (double y : {0.3, 1.4}) {
            CHECK(m.seed.h(y) ==
                  doctest::Approx(2.0 * std::exp(-a) * std::sinh(y + a)).epsilon(1e-13));
            const double ch = 1.0 / std::tanh(y + a);
            CHECK(m.spec_Ytilde.killing(y) == doctest::Approx(ch * ch).epsilon(1e-12));
        }
    }
    CHECK_THROWS_AS(make_example("e3"), ConfigError);
}

TEST_CASE("iterated transform of the two-sided model") {
    // the second seed is the negated first excited eigenfunction
    for (double x : {0.2, 0.45, 0.7}) {
        CHECK(e4_fn(2, x) == doctest::Approx(-2.0 * std::pow(std::sin(kPi * x), 2)).epsilon(1e-12));
        CHECK(e4_h1(x) == doctest::Approx(-e4_fn(2, x)).epsilon(1e-14));
    }
    // level 2 is the construction applied to the level-1 kernel with that seed
    const ExampleModel e4 = make_example("e4");
    TransitionKernel level1;
    level1.spec = e4.spec_Ytilde;
    level1.eval = [](double t, double x, double y) { return iterated_transform_e4(1, t, x, y); };
    const SeedFunction h1{
        ScalarField([](double y) { return e4_h1(y); },
                    [](double y) { return 2.0 * kPi * std::sin(2.0 * kPi * y); },
                    Interval(0.0, 1.0)),
        -kPi * kPi};
    const double built = darboux_density(level1, h1, 0.0, 0.5, 0.3, 0.3);
    CHECK(built == doctest::Approx(iterated_transform_e4(2, 0.5, 0.3, 0.3)).epsilon(1e-7));

    // symmetry of the level-2 series
    for (const auto& [t, x, y] : {std::tuple{0.4, 0.3, 0.8}, std::tuple{0.25, 0.6, 0.15}}) {
        CHECK(iterated_transform_e4(2, t, x, y) ==
              doctest::Approx(iterated_transform_e4(2, t, y, x)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(iterated_transform_e4(2, 0.005, 0.3, 0.3), SlowConvergence);
}

TEST_CASE("level-2 killing rate is the displayed multiple") {
    // seed h1 on the level-1 process: shift constant 0, rate 3 pi^2 cot^2
    const ExampleModel e4 = make_example("e4");
    const SeedFunction h1{
        ScalarField([](double y) { return e4_h1(y); },
                    [](double y) { return 2.0 * kPi * std::sin(2.0 * kPi * y); },
                    Interval(0.0, 1.0)),
        -kPi * kPi};
    std::vector<double> grid;
    for (int i = 1; i <= 39; ++i) grid.push_back(i / 40.0);
    const double mh1 = compute_m_h(e4.spec_Ytilde, h1, grid);
    CHECK(std::abs(mh1) < 1e-9);
    for (double y : {0.2, 0.35, 0.6}) {
        const double cot = std::cos(kPi * y) / std::sin(kPi * y);
        CHECK(tilde_c_at(e4.spec_Ytilde, h1, 0.0, y) ==
              doctest::Approx(3.0 * kPi * kPi * cot * cot).epsilon(1e-10));
    }
}

TEST_CASE("catalog data invariants") {
    for (const std::string& id : catalog_ids()) {
        const ExampleModel m = make_example(id, 0.5);
        CHECK(m.m_h == 0.0);
        for (double y : m.probe_grid) {
            // analytic seed derivatives agree with central differences
            const double fd = (m.seed.h(y + 1e-5) - m.seed.h(y - 1e-5)) / 2e-5;
            CHECK(m.seed.h.derivative(y) ==
                  doctest::Approx(fd).epsilon(1e-6));
            CHECK(m.spec_Y.killing(y) >= 0.0);
            CHECK(m.spec_Ytilde.killing(y) >= 0.0);
            CHECK(m.spec_Y.sigma(y) > 0.0);
            CHECK(m.seed.h(y) > 0.0);
        }
    }
}

TEST_CASE("catalog requires a valid id") {
    CHECK_THROWS_AS(make_example("e9"), ConfigError);
    CHECK(catalog_ids().size() == 5);
}
