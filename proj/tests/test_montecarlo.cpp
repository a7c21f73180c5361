#include <doctest.h>

#include <cmath>

#include "darboux/catalog.hpp"
#include "darboux/errors.hpp"
#include "darboux/montecarlo.hpp"
#include "darboux/quadrature.hpp"

using namespace darboux;

namespace {
const Interval kLine = Interval::real_line();

DiffusionSpec free_bm() {
    return DiffusionSpec::killed_bm(ScalarField::constant(0.0, kLine), kLine);
}
}  // namespace

TEST_CASE("reproducibility and stream independence") {
    const SimConfig cfg{1e-2, 2000, 42, 0};
    const SimReport a = simulate_paths(free_bm(), 0.3, 0.5, cfg);
    const SimReport b = simulate_paths(free_bm(), 0.3, 0.5, cfg);
    REQUIRE(a.outcomes.size() == b.outcomes.size());
    for (size_t i = 0; i < a.outcomes.size(); ++i) {
        CHECK(a.outcomes[i].alive == b.outcomes[i].alive);
        CHECK(a.outcomes[i].position == b.outcomes[i].position);
    }
    SimConfig other = cfg;
    other.seed = 43;
    const SimReport c = simulate_paths(free_bm(), 0.3, 0.5, other);
    CHECK(c.outcomes[0].position != a.outcomes[0].position);

    // explicit thread counts must not change the result
    SimConfig one = cfg;
    one.threads = 1;
    SimConfig four = cfg;
    four.threads = 4;
    const SimReport r1 = simulate_paths(free_bm(), 0.3, 0.5, one);
    const SimReport r4 = simulate_paths(free_bm(), 0.3, 0.5, four);
    for (size_t i = 0; i < r1.outcomes.size(); ++i) {
        CHECK(r1.outcomes[i].position == r4.outcomes[i].position);
    }
}

TEST_CASE("driftless paths keep their mean") {
    const SimConfig cfg{1e-2, 20000, 7, 0};
    const double x0 = 0.4, t = 1.0;
    const SimReport rep = simulate_paths(free_bm(), x0, t, cfg);
    double sum = 0.0;
    for (const SimOutcome& o : rep.outcomes) sum += o.position;
    const double mean = sum / rep.outcomes.size();
    const double se = std::sqrt(t / rep.outcomes.size());
    CHECK(std::abs(mean - x0) < 3.0 * se);
    CHECK(rep.alive_count() == cfg.n_paths);
}

TEST_CASE("constant killing rate gives the exponential clock") {
    const SimConfig cfg{1e-3, 20000, 11, 0};
    const double t = 0.7;
    const DiffusionSpec spec = DiffusionSpec::killed_bm(ScalarField::constant(1.0, kLine), kLine);
    const SimReport rep = simulate_paths(spec, 0.0, t, cfg);
    const double p = std::exp(-t);
    const double se = std::sqrt(p * (1.0 - p) / cfg.n_paths);
    CHECK(std::abs(rep.survival_fraction() - p) < 3.0 * se);
}

TEST_CASE("alive outcomes stay inside the open interval") {
    const ExampleModel m = make_example("e2");
    const SimConfig cfg{1e-3, 5000, 31, 0};
    const SimReport rep = simulate_paths(m.spec_Ytilde, 1.0, 0.5, cfg);
    for (const SimOutcome& o : rep.outcomes) {
        if (o.alive) CHECK(o.position > 0.0);
        if (!o.alive) CHECK(o.kill_time <= 0.5 + 1e-12);
    }
}

TEST_CASE("transformed cosh model: survival matches quadrature mass") {
    const ExampleModel m = make_example("e1");
    const SimConfig cfg{1e-3, 20000, 5, 0};
    const double t = 1.0;
    const SimReport rep = simulate_paths(m.spec_Ytilde, 0.0, t, cfg);
    const double mass =
        quad_adaptive([&](double y) { return pYtilde_eval(m, t, 0.0, y); }, -30.0, 30.0, 1e-10)
            .value;
    const double se = std::sqrt(mass * (1.0 - mass) / cfg.n_paths);
    CHECK(std::abs(rep.survival_fraction() - mass) < 3.0 * se);
}

TEST_CASE("dt refinement stays inside the statistical noise") {
    const ExampleModel m = make_example("e1");
    SimConfig coarse{2e-3, 20000, 5, 0};
    SimConfig fine{1e-3, 20000, 5, 0};
    const double a = simulate_paths(m.spec_Ytilde, 0.0, 1.0, coarse).survival_fraction();
    const double b = simulate_paths(m.spec_Ytilde, 0.0, 1.0, fine).survival_fraction();
    const double se = std::sqrt(0.25 / 20000.0);
    CHECK(std::abs(a - b) < 3.0 * se * std::sqrt(2.0));
}

TEST_CASE("conservative transform never dies") {
    const ExampleModel m = make_example("e1");
    const DiffusionSpec spec_x = doob_kernel_of(m).spec;
    const SimConfig cfg{1e-2, 100000, 3, 0};
    const SimReport rep = simulate_paths(spec_x, 0.0, 1.0, cfg);
    CHECK(rep.alive_count() == cfg.n_paths);
    CHECK(rep.hazard_deaths == 0);
    CHECK(rep.boundary_deaths == 0);
}

TEST_CASE("histogram comparison flags degenerate kernels and thin samples") {
    const SimConfig cfg{1e-2, 400, 9, 0};
    const SimReport rep = simulate_paths(free_bm(), 0.0, 0.5, cfg);
    TransitionKernel null_kernel;
    null_kernel.spec = free_bm();
    null_kernel.eval = [](double, double, double) { return 0.0; };
    const HistogramComparison cmp =
        mc_density_error(rep.outcomes, null_kernel, 0.5, 0.0, -3.0, 3.0, 10);
    CHECK(std::isinf(cmp.max_abs_z));

    SimConfig thin = cfg;
    thin.n_paths = 50;
    const SimReport few = simulate_paths(free_bm(), 0.0, 0.5, thin);
    CHECK_THROWS_AS(mc_density_error(few.outcomes, null_kernel, 0.5, 0.0, -3.0, 3.0, 10),
                    TooFewSurvivors);
}

TEST_CASE("step-size diagnostic") {
    DiffusionSpec stiff = free_bm();
    stiff.drift = ScalarField::constant(200.0, kLine);
    const SimConfig cfg{1e-2, 64, 1, 1};
    const SimReport rep = simulate_paths(stiff, 0.0, 0.1, cfg);
    CHECK(rep.step_too_large > 0);
}

TEST_CASE("excessive bound at t = 0 is equality") {
    const ExampleModel m = make_example("e1");
    const DiffusionSpec spec_xt = dual_kernel_of(m).spec;
    const SimConfig cfg{1e-3, 500, 21, 0};
    const ExcessiveCheckResult res = excessive_check(m.seed, m.m_h, spec_xt, 0.5, 0.0, cfg);
    CHECK(res.mc_mean == doctest::Approx(m.seed.h(0.5)).epsilon(1e-14));
    CHECK(res.bound == doctest::Approx(m.seed.h(0.5)).epsilon(1e-14));
    CHECK(res.passed);
}

TEST_CASE("excessive bound holds for the cosh model at modest size") {
    const ExampleModel m = make_example("e1");
    const DiffusionSpec spec_xt = dual_kernel_of(m).spec;
    const SimConfig cfg{1e-3, 20000, 17, 0};
    const ExcessiveCheckResult res = excessive_check(m.seed, m.m_h, spec_xt, 0.5, 1.0, cfg);
    CHECK(res.passed);
    CHECK(res.ci_upper <= res.bound);
}

TEST_CASE("barrier identity: empty window") {
    // as y -> alpha the quadrature side vanishes and the sampler finds no
    // contributing paths
    const double gamma = 0.5;
    const double alpha = e3_alpha(gamma);
    const ExampleModel m = make_example("e3", gamma);
    const double tiny =
        quad_adaptive([&](double u) { return pYtilde_eval(m, 0.5, 1.0 - alpha, u); }, 0.0, 1e-4,
                      1e-14)
            .value;
    CHECK(std::abs(tiny) < 1e-6);
    const SimConfig cfg{1e-3, 2000, 13, 0};
    CHECK_THROWS_AS(corollary52_check(gamma, 0.5, 1.0, alpha + 1e-4, cfg), TooFewSurvivors);
    CHECK_THROWS_AS(corollary52_check(1.0, 0.5, 1.0, 1.5, cfg), std::invalid_argument);
}

TEST_CASE("barrier identity at modest size") {
    const SimConfig cfg{1e-3, 20000, 29, 0};
    const McComparison res = corollary52_check(0.5, 0.5, 1.0, 1.5, cfg);
    CHECK(res.passed);
}
