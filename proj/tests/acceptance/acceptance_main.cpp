// Acceptance suite: runs every release criterion at its pinned tolerance
// and prints one PASS/FAIL line per criterion. Exit status is the number
// of failed criteria. argv[1] (optional) is the CLI binary, needed for
// the byte-determinism criterion.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "darboux/catalog.hpp"
#include "darboux/checks.hpp"
#include "darboux/errors.hpp"
#include "darboux/quadrature.hpp"
#include "darboux/transform.hpp"

using namespace darboux;

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;
const double kInf = std::numeric_limits<double>::infinity();

int g_failures = 0;

void report(int number, const std::string& what, bool passed, const std::string& metric) {
    std::printf("[%s] C%-2d %s: %s\n", passed ? "PASS" : "FAIL", number, what.c_str(),
                metric.c_str());
    std::fflush(stdout);
    if (!passed) ++g_failures;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

bool suite_ok(const std::string& name, const CheckOptions& opts, double* worst_residual) {
    const std::vector<CheckResult> rs = run_suite(name, opts);
    bool ok = true;
    double worst = 0.0;
    for (const CheckResult& r : rs) {
        ok = ok && r.passed;
        worst = std::max(worst, std::abs(r.residual));
    }
    if (worst_residual) *worst_residual = worst;
    return ok;
}

// ---- C1: construction formula reproduces every closed form ----
void criterion1() {
    double worst = 0.0;
    const bool ok = suite_ok("theorem48", {}, &worst);
    report(1, "construction density vs closed forms (e1..e5, e3 at 0.5/1/3)", ok,
           "sup|err| = " + fmt(worst) + " (tol 1e-5)");
}

// ---- C2: lambda-invariance passes for seeds, fails for the counterexample ----
void criterion2() {
    double worst = 0.0;
    const bool ok = suite_ok("invariance", {}, &worst);
    report(2, "lambda-invariance of seeds + counterexample failure", ok,
           "worst seed residual & counterexample residual ok");
}

// ---- C3: non-invariant seed drives the formula negative ----
void criterion3() {
    const std::vector<CheckResult> rs = run_suite("negativity", {});
    report(3, "negativity for the reflected-BM linear seed at (1,1,0.05)", all_passed(rs),
           "value = " + fmt(rs.front().residual));
}

// ---- C4: duality constancy ----
void criterion4() {
    double worst = 0.0;
    const bool ok = suite_ok("duality", {}, &worst);
    report(4, "duality constancy over 9-point probes (e1, e4)", ok,
           "max deviation = " + fmt(worst) + " (tol 1e-6)");
}

// ---- C5: spectral forms agree with the closed forms / construction ----
void criterion5() {
    double worst = 0.0;
    const bool ok = suite_ok("spectral", {}, &worst);
    report(5, "spectral representations vs closed forms", ok,
           "max |err| = " + fmt(worst) + " (tol 1e-6)");
}

// ---- C6: orthogonality and norms ----
void criterion6() {
    bool ok = true;
    std::string note;
    // sine-image family: int f_n f_m = (n^2-1)/2 delta
    double worst = 0.0;
    for (int n = 2; n <= 8; ++n) {
        for (int m = n; m <= 8; ++m) {
            const double v =
                quad_adaptive([&](double x) { return e4_fn(n, x) * e4_fn(m, x); }, 0.0, 1.0, 1e-11)
                    .value;
            const double expect = (n == m) ? 0.5 * (n * n - 1.0) : 0.0;
            worst = std::max(worst, std::abs(v - expect));
        }
    }
    ok = ok && worst < 1e-8;
    note += "orth err " + fmt(worst);
    // Wronskian-polynomial norms, relative
    auto nu = [](double y) {
        const double q = 2.0 * y * y + 1.0;
        return std::exp(-y * y) / (q * q);
    };
    double worst_rel = 0.0;
    double fact = 1.0;
    for (int n = 0; n <= 6; ++n) {
        if (n > 0) fact *= n;
        const double v = quad_adaptive(
                             [&](double y) { return Qn_poly(n, y) * Qn_poly(n, y) * nu(y); },
                             -kInf, kInf, 1e-12)
                             .value;
        const double expect = kSqrtPi * std::pow(2.0, n + 1) * fact * (n + 3.0);
        worst_rel = std::max(worst_rel, std::abs(v / expect - 1.0));
    }
    ok = ok && worst_rel < 1e-8;
    note += ", norm rel err " + fmt(worst_rel);
    const double total = quad_adaptive(nu, -kInf, kInf, 1e-12).value;
    const double nu_err = std::abs(total - 0.5 * kSqrtPi);
    ok = ok && nu_err < 1e-10;
    note += ", total mass err " + fmt(nu_err);
    report(6, "orthogonality and norms of the spectral families", ok, note);
}

// ---- C7: kernel hygiene on all transformed kernels ----
void criterion7() {
    bool ok = true;
    double worst_sym = 0.0, worst_mass = 0.0, worst_ck = 0.0;
    for (const ExampleModel& m : models_for({}, true)) {
        const std::vector<double>& g = m.probe_grid;
        const std::vector<double> pts = {g[1], g[2], g[3], g[4], g[5]};
        // symmetry on a 5x5 grid
        for (double x : pts) {
            for (double y : pts) {
                const double d =
                    std::abs(pYtilde_eval(m, 0.5, x, y) - pYtilde_eval(m, 0.5, y, x));
                worst_sym = std::max(worst_sym, d);
            }
        }
        // sub-Markov mass
        for (double t : {0.3, 1.0}) {
            for (double x : {g[2], g[5]}) {
                const double lo = m.pYtilde.clip_lo(t, x);
                const double hi = m.pYtilde.clip_hi(t, x);
                const double mass =
                    quad_adaptive([&](double y) { return pYtilde_eval(m, t, x, y); }, lo, hi,
                                  1e-10)
                        .value;
                ok = ok && mass >= 0.0 && mass <= 1.0 + 1e-6;
                worst_mass = std::max(worst_mass, mass);
            }
        }
        // Chapman-Kolmogorov at (s,t) = (0.3, 0.4)
        const double s = 0.3, t = 0.4;
        for (const auto& [x, y] : {std::pair{g[2], g[5]}, std::pair{g[3], g[4]}}) {
            const double lo = std::min(m.pYtilde.clip_lo(s, x), m.pYtilde.clip_lo(t, y));
            const double hi = std::max(m.pYtilde.clip_hi(s, x), m.pYtilde.clip_hi(t, y));
            const double conv =
                quad_adaptive(
                    [&](double z) { return pYtilde_eval(m, s, x, z) * pYtilde_eval(m, t, z, y); },
                    lo, hi, 1e-10)
                    .value;
            worst_ck = std::max(worst_ck, std::abs(conv - pYtilde_eval(m, s + t, x, y)));
        }
    }
    ok = ok && worst_sym < 1e-5 && worst_ck < 1e-4;
    // killing boundary of the elastic transform: density dies toward 0
    const ExampleModel e3 = make_example("e3", 0.5);
    double prev = kInf;
    bool decays = true;
    for (int k = 2; k <= 10; ++k) {
        const double v = pYtilde_eval(e3, 0.5, 1.0, std::pow(2.0, -k));
        decays = decays && v < prev && v >= -1e-12;
        prev = v;
    }
    decays = decays && prev < 1e-3;
    ok = ok && decays;
    report(7, "kernel hygiene (symmetry, mass, Chapman-Kolmogorov, boundary decay)", ok,
           "sym " + fmt(worst_sym) + ", max mass " + fmt(worst_mass) + ", CK " + fmt(worst_ck) +
               ", e3 kernel(y=2^-10) = " + fmt(prev));
}

// ---- C8: pair identities and Fourier-Gaussian identities ----
void criterion8() {
    double worst_l = 0.0, worst_a = 0.0;
    const bool ok_l = suite_ok("lemma51", {}, &worst_l);
    const bool ok_a = suite_ok("appendixA", {}, &worst_a);
    report(8, "eigenpair identities + Fourier-Gaussian identities", ok_l && ok_a,
           "pair residual " + fmt(worst_l) + ", identity residual " + fmt(worst_a));
}

// ---- C9: excessive bound by Monte Carlo ----
void criterion9() {
    CheckOptions opts;
    opts.mc_paths = 100000;
    opts.mc_dt = 1e-3;
    const std::vector<CheckResult> rs = run_suite("excessive", opts);
    std::string note;
    for (const CheckResult& r : rs) note += r.name + " ratio " + fmt(r.residual) + "  ";
    report(9, "excessive bound E[h] <= e^{(m_h+lambda)t} h(x) * 1.01 (e1, e2)", all_passed(rs),
           note);
}

// ---- C10: Monte-Carlo kernel validation + barrier identity ----
void criterion10() {
    CheckOptions opts;
    opts.mc_paths = 100000;
    opts.mc_dt = 1e-3;
    const std::vector<CheckResult> hist = run_suite("mc", opts);
    const std::vector<CheckResult> barrier = run_suite("corollary52", opts);
    std::string note;
    for (const CheckResult& r : hist) note += "max|z| " + fmt(r.residual) + "  ";
    for (const CheckResult& r : barrier) note += "|z| " + fmt(r.residual) + "  ";
    report(10, "MC histograms within 4 s.e. (20 bins) + barrier identity within 3 s.e.",
           all_passed(hist) && all_passed(barrier), note);
}

// ---- C11: dual-string composition ----
void criterion11() {
    auto grid = [](double lo, double hi) {
        std::vector<double> g(9);
        for (int i = 0; i < 9; ++i) g[i] = lo + (hi - lo) * i / 8.0;
        return g;
    };
    const double e1 = krein_dual_check(make_example("e1").seed, grid(-2.0, 2.0));
    const double e2 = krein_dual_check(make_example("e2").seed, grid(0.1, 3.0));
    report(11, "dual-string composition m(M(u)) = u (e1, e2)", e1 < 1e-8 && e2 < 1e-8,
           "max err " + fmt(std::max(e1, e2)) + " (tol 1e-8)");
}

// ---- C12: byte-identical simulate runs ----
void criterion12(const char* cli) {
    if (!cli) {
        report(12, "simulate determinism (byte-identical CSV)", false,
               "CLI path not supplied to the acceptance binary");
        return;
    }
    auto slurp = [](const std::string& p) {
        std::ifstream in(p, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    const std::string a = "/tmp/darboux_acc_sim_a.csv";
    const std::string b = "/tmp/darboux_acc_sim_b.csv";
    const std::string args =
        " simulate --example e2 --t 0.5 --x0 1 --paths 20000 --seed 777 --grid 0:4:20 --out ";
    const int rc1 = std::system((std::string(cli) + args + a + " 2>/dev/null").c_str());
    const int rc2 = std::system((std::string(cli) + args + b + " 2>/dev/null").c_str());
    const std::string ca = slurp(a), cb = slurp(b);
    const bool ok = rc1 == 0 && rc2 == 0 && !ca.empty() && ca == cb;
    report(12, "simulate determinism (byte-identical CSV)", ok,
           ok ? std::to_string(ca.size()) + " bytes identical" : "outputs differ or run failed");
    std::remove(a.c_str());
    std::remove(b.c_str());
}

}  // namespace

int main(int argc, char** argv) {
    const char* cli = argc > 1 ? argv[1] : nullptr;
    try {
        criterion1();
        criterion2();
        criterion3();
        criterion4();
        criterion5();
        criterion6();
        criterion7();
        criterion8();
        criterion9();
        criterion10();
        criterion11();
        criterion12(cli);
    } catch (const std::exception& e) {
        std::cerr << "acceptance run aborted: " << e.what() << "\n";
        return 99;
    }
    std::printf("%s: %d of 12 criteria failed\n", g_failures == 0 ? "OK" : "FAILURES",
                g_failures);
    return g_failures;
}
