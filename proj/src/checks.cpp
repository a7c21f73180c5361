#include "darboux/checks.hpp"

#include <cmath>

#include "darboux/catalog.hpp"
#include "darboux/errors.hpp"
#include "darboux/quadrature.hpp"
#include "darboux/special_functions.hpp"
#include "darboux/transform.hpp"

namespace darboux {
namespace {

constexpr double kPi = 3.14159265358979323846;

std::string label(const ExampleModel& m) {
    if (m.id == "e3") return "e3(gamma=" + std::to_string(m.gamma).substr(0, 4) + ")";
    return m.id;
}

std::vector<double> grid4(const ExampleModel& m) {
    const std::vector<double>& g = m.probe_grid;
    return {g[1], g[3], g[5], g[7]};
}

std::vector<CheckResult> suite_invariance(const CheckOptions& opts) {
    std::vector<CheckResult> out;
    for (const ExampleModel& m : models_for(opts, true)) {
        const double x1 = m.probe_grid[2], x2 = m.probe_grid[5];
        double worst = 0.0;
        for (double t : {0.5, 1.0}) {
            for (double x : {x1, x2}) {
                worst = std::max(worst,
                                 verify_lambda_invariance(m.pY, m.seed, t, x, 1e-6).residual);
            }
        }
        out.push_back({"invariance/" + label(m), worst, 1e-6, worst < 1e-6, ""});
    }
    if (opts.example.empty()) {
        // the non-invariant solution must fail by a wide margin
        const double r =
            verify_lambda_invariance(reflected_bm_kernel(), linear_seed(), 1.0, 1.0, 1e-6)
                .residual;
        out.push_back({"invariance/reflected-bm-counterexample", r, 1e-2, r > 1e-2,
                       "expected failure: residual must exceed 1e-2"});
    }
    return out;
}

std::vector<CheckResult> suite_theorem48(const CheckOptions& opts) {
    std::vector<CheckResult> out;
    for (const ExampleModel& m : models_for(opts, true)) {
        double sup = 0.0;
        for (double t : {0.3, 1.0}) {
            for (double x : grid4(m)) {
                for (double y : grid4(m)) {
                    const double a = darboux_density(m.pY, m.seed, m.m_h, t, x, y);
                    const double b = pYtilde_eval(m, t, x, y);
                    sup = std::max(sup, std::abs(a - b));
                }
            }
        }
        out.push_back({"theorem48/" + label(m), sup, 1e-5, sup < 1e-5, "4x4 grid, t in {0.3,1}"});
    }
    return out;
}

std::vector<CheckResult> suite_duality(const CheckOptions& opts) {
    std::vector<CheckResult> out;
    auto probes = [](const ExampleModel& m, int n) {
        std::vector<double> xs;
        const double lo = m.probe_grid.front(), hi = m.probe_grid.back();
        for (int i = 0; i < n; ++i) xs.push_back(lo + (hi - lo) * i / (n - 1));
        return xs;
    };
    for (const char* id : {"e1", "e4"}) {
        if (!opts.example.empty() && opts.example != id) continue;
        const ExampleModel m = make_example(id);
        const TransitionKernel x_kernel = doob_kernel_of(m);
        const TransitionKernel dual = dual_kernel_of(m);
        const double y = id == std::string("e1") ? 0.3 : 0.5;
        const double dev = siegmund_identity_deviation(x_kernel, dual, 0.5, y, probes(m, 9));
        out.push_back({std::string("duality/") + id, dev, 1e-6, dev < 1e-6,
                       "constancy over 9-point probe at (t,y)=(0.5," + std::to_string(y) + ")"});
    }
    if (opts.example.empty()) {
        // classical case: Brownian motion is its own dual and the constant is 0
        TransitionKernel bm;
        bm.spec = DiffusionSpec::killed_bm(
            ScalarField::constant(0.0, Interval::real_line()), Interval::real_line());
        bm.eval = [](double t, double x, double y) { return bm_kernel(t, y - x); };
        const double dev =
            siegmund_identity_deviation(bm, bm, 0.5, 0.2, {-1.6, -0.8, 0.0, 0.8, 1.6});
        out.push_back({"duality/bm-self-dual", dev, 1e-8, dev < 1e-8, ""});
    }
    return out;
}

std::vector<CheckResult> suite_intertwine(const CheckOptions& opts) {
    std::vector<CheckResult> out;
    if (opts.example.empty() || opts.example == "e1") {
        const ExampleModel m = make_example("e1");
        const double mu = 1.0;
        const double z = std::sqrt(2.0 * (1.0 + mu));
        ScalarField f([z](double y) { return std::exp(z * y); },
                      [z](double y) { return z * std::exp(z * y); }, Interval::real_line());
        double worst = 0.0;
        for (double x : {-0.8, 0.1, 0.9}) {
            worst = std::max(worst, intertwine_residual(m.spec_Y, m.seed, m.m_h, f, mu, x));
        }
        out.push_back({"intertwine/e1-exponential", worst, 1e-6, worst < 1e-6, "mu=1"});

        double triv = 0.0;
        for (double x : {-0.8, 0.1, 0.9}) {
            triv = std::max(triv, intertwine_residual(m.spec_Y, m.seed, m.m_h, m.seed.h,
                                                      -m.seed.lambda - m.m_h, x));
        }
        out.push_back({"intertwine/e1-seed-annihilated", triv, 1e-9, triv < 1e-9,
                       "D_h h = 0 identically"});
    }
    if (opts.example.empty() || opts.example == "e4") {
        const ExampleModel m = make_example("e4");
        const int n = 3;
        ScalarField f([n](double x) { return std::sin(n * kPi * x); },
                      [n](double x) { return n * kPi * std::cos(n * kPi * x); },
                      Interval(0.0, 1.0));
        const double mu = -0.5 * kPi * kPi * n * n - 2.0 * m.seed.lambda;  // = -7 pi^2/2
        double worst = 0.0;
        for (double x : {0.3, 0.55, 0.8}) {
            worst = std::max(worst, intertwine_residual(m.spec_Y, m.seed, m.m_h, f, mu, x));
        }
        out.push_back({"intertwine/e4-sine", worst, 1e-6, worst < 1e-6, "n=3"});
    }
    return out;
}

std::vector<CheckResult> suite_spectral(const CheckOptions& opts) {
    std::vector<CheckResult> out;
    if (opts.example.empty() || opts.example == "e1") {
        const ExampleModel m = make_example("e1");
        // fixed quasi-random probes
        const double txy[5][3] = {{1.0, 0.3, 0.3},
                                  {0.6, -0.7, 1.1},
                                  {2.0, 0.1, -0.4},
                                  {0.8, 1.4, 0.2},
                                  {1.5, -1.1, -0.3}};
        double worst = 0.0;
        for (const auto& q : txy) {
            const double a = spectral_eval(m, q[0], q[1], q[2], 1e-9);
            const double b = pYtilde_eval(m, q[0], q[1], q[2]);
            worst = std::max(worst, std::abs(a - b));
        }
        out.push_back({"spectral/e1-band-vs-closed", worst, 1e-6, worst < 1e-6, "5 probes"});
    }
    if (opts.example.empty() || opts.example == "e2") {
        const ExampleModel m = make_example("e2");
        double worst = 0.0;
        for (const auto& q : {std::array<double, 3>{1.0, 0.5, 0.8},
                              std::array<double, 3>{0.5, 1.3, 0.2}}) {
            const double a = spectral_eval(m, q[0], q[1], q[2], 1e-9);
            const double b = pYtilde_eval(m, q[0], q[1], q[2]);
            worst = std::max(worst, std::abs(a - b));
        }
        out.push_back({"spectral/e2-band-vs-closed", worst, 1e-6, worst < 1e-6, ""});
    }
    if (opts.example.empty() || opts.example == "e4") {
        const ExampleModel m = make_example("e4");
        double worst = 0.0;
        for (const auto& q : {std::array<double, 3>{0.5, 0.25, 0.75},
                              std::array<double, 3>{0.3, 0.45, 0.6}}) {
            const double a = spectral_eval(m, q[0], q[1], q[2], 1e-9);
            const double b = darboux_density(m.pY, m.seed, m.m_h, q[0], q[1], q[2]);
            worst = std::max(worst, std::abs(a - b));
        }
        out.push_back({"spectral/e4-series-vs-construction", worst, 1e-6, worst < 1e-6, ""});
    }
    if (opts.example.empty() || opts.example == "e5") {
        const ExampleModel m = make_example("e5");
        double worst = 0.0;
        for (const auto& q : {std::array<double, 3>{1.0, 0.5, -0.2},
                              std::array<double, 3>{0.5, 1.0, 0.3},
                              std::array<double, 3>{0.8, -0.6, -1.1}}) {
            const double a = spectral_eval(m, q[0], q[1], q[2], 1e-9);
            const double b = pYtilde_eval(m, q[0], q[1], q[2]);
            worst = std::max(worst, std::abs(a - b));
        }
        out.push_back({"spectral/e5-series-vs-closed", worst, 1e-6, worst < 1e-6, "60-term cap"});
    }
    return out;
}

std::vector<CheckResult> suite_lemma51(const CheckOptions&) {
    std::vector<CheckResult> out;
    const ExampleModel m = make_example("e4");
    const Interval iv(0.0, 1.0);
    const int n = 3;
    ScalarField f([n](double x) { return std::sin(n * kPi * x); },
                  [n](double x) { return n * kPi * std::cos(n * kPi * x); }, iv);
    ScalarField g([n](double x) { return std::cos(n * kPi * x); },
                  [n](double x) { return -n * kPi * std::sin(n * kPi * x); }, iv);
    const double mu = -0.5 * kPi * kPi * n * n;
    const std::vector<double> grid = {0.2, 0.35, 0.5, 0.65, 0.8};
    const double rw =
        pair_identity_residual(PairIdentity::Wronskian, f, g, m.seed, m.spec_Y.killing, mu, grid);
    out.push_back({"lemma51/e4-wronskian", rw, 1e-7, rw < 1e-7, "f=sin(3 pi x), g=cos(3 pi x)"});
    const double ra = pair_identity_residual(PairIdentity::Antiderivative, f, g, m.seed,
                                             m.spec_Y.killing, mu, grid);
    out.push_back({"lemma51/e4-antiderivative", ra, 1e-7, ra < 1e-7, ""});

    // orthogonality corollary: int_0^1 f_n f_m = (n^2-1)/2 delta_{nm}
    double worst = 0.0;
    for (int a = 2; a <= 8; ++a) {
        for (int b = a; b <= 8; ++b) {
            auto prod = [&](double x) { return e4_fn(a, x) * e4_fn(b, x); };
            const double v = quad_adaptive(prod, 0.0, 1.0, 1e-11).value;
            const double expect = a == b ? 0.5 * (a * a - 1.0) : 0.0;
            worst = std::max(worst, std::abs(v - expect));
        }
    }
    out.push_back({"lemma51/e4-orthogonality", worst, 1e-8, worst < 1e-8, "n,m in 2..8"});
    return out;
}

std::vector<CheckResult> suite_appendix_a(const CheckOptions&) {
    std::vector<CheckResult> out;
    const double points[2][2] = {{1.0, 0.0}, {0.5, 1.2}};
    for (int id = 1; id <= 3; ++id) {
        double worst = 0.0;
        for (const auto& tw : points) {
            worst = std::max(worst, fourier_gaussian_residual(id, tw[0], tw[1]));
        }
        out.push_back({"appendixA/identity-" + std::to_string(id), worst, 1e-8, worst < 1e-8,
                       "(t,w) in {(1,0),(0.5,1.2)}"});
    }
    return out;
}

std::vector<CheckResult> suite_mc(const CheckOptions& opts) {
    std::vector<CheckResult> out;
    SimConfig cfg{opts.mc_dt, opts.mc_paths, opts.mc_seed, 0};
    struct Setup {
        const char* id;
        double x0, t, lo, hi;
    };
    for (const Setup& s : {Setup{"e1", 0.0, 1.0, -4.0, 4.0}, Setup{"e2", 1.0, 0.5, 0.0, 4.0}}) {
        if (!opts.example.empty() && opts.example != s.id) continue;
        const ExampleModel m = make_example(s.id);
        const SimReport rep = simulate_paths(m.spec_Ytilde, s.x0, s.t, cfg);
        const HistogramComparison cmp =
            mc_density_error(rep.outcomes, m.pYtilde, s.t, s.x0, s.lo, s.hi, 20);
        out.push_back({std::string("mc/") + s.id + "-histogram", cmp.max_abs_z, 4.0,
                       cmp.max_abs_z < 4.0,
                       "20 bins, " + std::to_string(opts.mc_paths) + " paths"});
    }
    return out;
}

std::vector<CheckResult> suite_excessive(const CheckOptions& opts) {
    std::vector<CheckResult> out;
    SimConfig cfg{opts.mc_dt, opts.mc_paths, opts.mc_seed, 0};
    struct Setup {
        const char* id;
        double x0, t;
    };
    for (const Setup& s : {Setup{"e1", 0.5, 1.0}, Setup{"e2", 1.0, 0.5}}) {
        if (!opts.example.empty() && opts.example != s.id) continue;
        const ExampleModel m = make_example(s.id);
        const DiffusionSpec spec_xt = dual_kernel_of(m).spec;
        const ExcessiveCheckResult res =
            excessive_check(m.seed, m.m_h, spec_xt, s.x0, s.t, cfg, 0.01);
        out.push_back({std::string("excessive/") + s.id, res.ci_upper / res.bound, 1.01,
                       res.passed,
                       "E[h] upper CI " + std::to_string(res.ci_upper) + " vs bound " +
                           std::to_string(res.bound)});
    }
    return out;
}

std::vector<CheckResult> suite_corollary52(const CheckOptions& opts) {
    std::vector<CheckResult> out;
    SimConfig cfg{opts.mc_dt, opts.mc_paths, opts.mc_seed, 0};
    struct Pt {
        double gamma, t, x, y;
    };
    for (const Pt& p : {Pt{0.5, 0.5, 1.0, 1.5}, Pt{3.0, 0.4, 1.2, 2.0}}) {
        const McComparison res = corollary52_check(p.gamma, p.t, p.x, p.y, cfg);
        out.push_back({"corollary52/gamma=" + std::to_string(p.gamma).substr(0, 3),
                       std::abs(res.z), 3.0, res.passed,
                       "mc " + std::to_string(res.mc_value) + " vs quad " +
                           std::to_string(res.reference)});
    }
    return out;
}

std::vector<CheckResult> suite_negativity(const CheckOptions&) {
    std::vector<CheckResult> out;
    const double v =
        darboux_density(reflected_bm_kernel(), linear_seed(), 0.0, 1.0, 1.0, 0.05);
    out.push_back({"negativity/reflected-bm-linear-seed", v, 0.0, v < 0.0,
                   "construction with a non-invariant seed must go negative"});
    return out;
}

}  // namespace

std::vector<ExampleModel> models_for(const CheckOptions& opts, bool expand_gamma) {
    std::vector<ExampleModel> out;
    for (const std::string& id : catalog_ids()) {
        if (!opts.example.empty() && opts.example != id) continue;
        if (id == "e3") {
            if (expand_gamma && opts.example.empty()) {
                for (double g : {0.5, 1.0, 3.0}) out.push_back(make_example(id, g));
            } else {
                out.push_back(make_example(id, opts.gamma));
            }
        } else {
            out.push_back(make_example(id));
        }
    }
    return out;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {
        "invariance", "theorem48", "duality",    "intertwine",  "spectral",  "lemma51",
        "appendixA",  "mc",        "excessive",  "corollary52", "negativity"};
    return names;
}

bool all_passed(const std::vector<CheckResult>& results) {
    for (const CheckResult& r : results) {
        if (!r.passed) return false;
    }
    return true;
}

std::vector<CheckResult> run_suite(const std::string& suite, const CheckOptions& opts) {
    if (suite == "invariance") return suite_invariance(opts);
    if (suite == "theorem48") return suite_theorem48(opts);
    if (suite == "duality") return suite_duality(opts);
    if (suite == "intertwine") return suite_intertwine(opts);
    if (suite == "spectral") return suite_spectral(opts);
    if (suite == "lemma51") return suite_lemma51(opts);
    if (suite == "appendixA") return suite_appendix_a(opts);
    if (suite == "mc") return suite_mc(opts);
    if (suite == "excessive") return suite_excessive(opts);
    if (suite == "corollary52") return suite_corollary52(opts);
    if (suite == "negativity") return suite_negativity(opts);
    throw UnknownSuite("unknown verification suite '" + suite + "'");
}

}  // namespace darboux
