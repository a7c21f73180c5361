#include "darboux/catalog.hpp"

#include <cmath>

#include "darboux/errors.hpp"
#include "darboux/quadrature.hpp"
#include "darboux/special_functions.hpp"

namespace darboux {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrtPi = 1.7724538509055160273;

double envelope_cutoff(double t) {
    // e^{-t z^2/2} < 1e-16 beyond this z
    return std::sqrt(2.0 * 37.0 / t) + 4.0;
}

// ------------------------------------------------------------------ e1

double pY1(double t, double x, double y) { return bm_kernel(t, y - x); }

double pYt1(double t, double x, double y) {
    const double st = std::sqrt(t);
    return std::exp(-t) * bm_kernel(t, y - x) +
           std::exp(-0.5 * t) / (2.0 * std::cosh(x) * std::cosh(y)) *
               (normal_cdf((y - x + t) / st) - normal_cdf((y - x - t) / st));
}

double e1_band(double t, double x, double y, double tol) {
    const double d = x - y;
    const double thx = std::tanh(x), thy = std::tanh(y);
    auto f = [=](double z) {
        return std::exp(-(1.0 + 0.5 * z * z) * t) *
               ((z * z + thx * thy) * std::cos(z * d) - z * (thx - thy) * std::sin(z * d)) /
               (1.0 + z * z);
    };
    return quad_adaptive(f, 0.0, envelope_cutoff(t), 0.5 * tol).value / kPi;
}

// ------------------------------------------------------------------ e2

double pY2(double t, double x, double y) { return bm_kernel(t, y - x) - bm_kernel(t, y + x); }

double pYt2(double t, double x, double y) {
    const double st = std::sqrt(t);
    return std::exp(-t) * (bm_kernel(t, y - x) + bm_kernel(t, y + x)) +
           std::exp(-0.5 * t) / (2.0 * std::sinh(x) * std::sinh(y)) *
               (normal_cdf((y - x - t) / st) + normal_cdf((y + x + t) / st) -
                normal_cdf((y + x - t) / st) - normal_cdf((y - x + t) / st));
}

double e2_band(double t, double x, double y, double tol) {
    auto fz = [](double z, double w) { return z * std::cos(z * w) - std::sin(z * w) / std::tanh(w); };
    auto f = [=](double z) {
        return std::exp(-(1.0 + 0.5 * z * z) * t) * fz(z, x) * fz(z, y) / (1.0 + z * z);
    };
    return 2.0 / kPi * quad_adaptive(f, 0.0, envelope_cutoff(t), 0.5 * tol).value;
}

// ------------------------------------------------------------------ e3

double pY3(double gamma, double t, double x, double y) {
    const double st = std::sqrt(t);
    return bm_kernel(t, y - x) + bm_kernel(t, y + x) -
           2.0 * gamma * std::exp(gamma * (x + y) + 0.5 * gamma * gamma * t) *
               normal_cdf(-(x + y + gamma * t) / st);
}

double pYt3(double gamma, double t, double x, double y) {
    const double beta = e3_beta(gamma);
    const double st = std::sqrt(t);
    auto h = [beta](double u) { return std::exp(u) + beta * std::exp(-u); };
    const double hh = h(x) * h(y);
    double v = std::exp(-t) * (bm_kernel(t, y - x) - bm_kernel(t, y + x));
    v += -8.0 * gamma * beta / hh *
         std::exp(gamma * (x + y) + (0.5 * gamma * gamma - 1.0) * t) * std::sinh(x) *
         std::sinh(y) * normal_cdf(-(y + x + gamma * t) / st);
    v += 2.0 * beta * std::exp(-0.5 * t) / hh *
         (normal_cdf((y + x - t) / st) + normal_cdf((y - x + t) / st) -
          normal_cdf((y + x + t) / st) - normal_cdf((y - x - t) / st));
    return v;
}

// ------------------------------------------------------------------ e4

double pY4(double t, double x, double y) {
    if (t < 0.15) {
        // image sum; fast for small t where the eigen-series is slow
        const double r = std::sqrt(2.0 * 37.0 * t) + 2.0;
        const int kmax = static_cast<int>(r / 2.0) + 2;
        double s = 0.0;
        for (int k = -kmax; k <= kmax; ++k) {
            s += bm_kernel(t, y - x + 2.0 * k) - bm_kernel(t, y + x + 2.0 * k);
        }
        return s;
    }
    double s = 0.0;
    for (int n = 1; n < 4000; ++n) {
        const double decay = std::exp(-0.5 * kPi * kPi * n * n * t);
        if (decay < 1e-18 && n > 3) break;
        s += 2.0 * decay * std::sin(kPi * n * x) * std::sin(kPi * n * y);
    }
    return s;
}

double pYt4(double t, double x, double y) {
    double s = 0.0;
    for (int n = 2; n < 4000; ++n) {
        const double decay = std::exp(-0.5 * kPi * kPi * (n * n - 2.0) * t) / (n * n - 1.0);
        const double term = 2.0 * decay * e4_fn(n, x) * e4_fn(n, y);
        s += term;
        if (decay * (n + 4.0) * (n + 4.0) < 1e-17 && n > 10) break;
    }
    return s;
}

// ------------------------------------------------------------------ e5

double pY5(double t, double x, double y) {
    const double sh = std::sinh(t);
    return std::exp(-0.5 / std::tanh(t) * (x * x + y * y) + x * y / sh) /
           std::sqrt(2.0 * kPi * sh);
}

double pYt5(double t, double x, double y) {
    return pY5(t, x, y) * std::exp(-4.0 * t) *
           (1.0 + 4.0 * std::sinh(t) * (std::exp(t) - 2.0 * x * y) /
                      ((2.0 * x * x + 1.0) * (2.0 * y * y + 1.0)));
}

double e5_h(double y) { return std::exp(0.5 * y * y) * (2.0 * y * y + 1.0); }
double e5_h_prime(double y) { return std::exp(0.5 * y * y) * (2.0 * y * y * y + 5.0 * y); }

// Integrals of p^Y h decay like exp(-(coth t - 1)(u - u*)^2/2) with the
// peak displaced to u* = center * e^t; size the window accordingly.
double e5_radius(double t, double center) {
    const double a = 2.0 / std::expm1(2.0 * t);  // coth(t) - 1
    return std::abs(center) * std::expm1(t) + std::sqrt(80.0 / a) + 4.0;
}

ExampleModel make_e1() {
    ExampleModel m;
    m.id = "e1";
    m.description = "Brownian motion on R; cosh seed";
    const Interval iv = Interval::real_line();
    m.spec_Y = DiffusionSpec::killed_bm(ScalarField::constant(0.0, iv), iv);
    m.seed = {ScalarField([](double y) { return std::cosh(y); },
                          [](double y) { return std::sinh(y); }, iv),
              0.5};
    m.m_h = 0.0;
    m.spec_Ytilde = DiffusionSpec::killed_bm(
        ScalarField([](double y) { const double v = std::tanh(y); return v * v; }, iv), iv);
    m.pY = {pY1, Provenance::ClosedForm, m.spec_Y, {}};
    m.pYtilde = {pYt1, Provenance::ClosedForm, m.spec_Ytilde, {}};
    SpectralForm sf;
    sf.kind = SpectralForm::Kind::Mixed;
    sf.first_index = 0;
    sf.max_terms = 1;
    sf.eigenvalue = [](int) { return -0.5; };
    sf.eigenfunction = [](int, double x) { return 1.0 / std::cosh(x); };
    sf.weight = [](int) { return 0.5; };
    sf.band = e1_band;
    m.spectral = sf;
    m.greens_Y = [iv](double mu) {
        const double s = std::sqrt(2.0 * mu);
        FundamentalPair p;
        p.mu = mu;
        p.psi = ScalarField([s](double y) { return std::exp(s * y); },
                            [s](double y) { return s * std::exp(s * y); }, iv);
        p.phi = ScalarField([s](double y) { return std::exp(-s * y); },
                            [s](double y) { return -s * std::exp(-s * y); }, iv);
        p.omega = s;  // Wr[phi,psi]/s' with s' = 2
        return p;
    };
    m.greens_Ytilde = [iv](double mu) {
        const double z = std::sqrt(2.0 * (1.0 + mu));
        auto F = [](double z, double y) { return std::exp(z * y) * (z - std::tanh(y)); };
        auto Fp = [](double z, double y) {
            const double sech = 1.0 / std::cosh(y);
            return std::exp(z * y) * (z * (z - std::tanh(y)) - sech * sech);
        };
        FundamentalPair p;
        p.mu = mu;
        p.psi = ScalarField([F, z](double y) { return F(z, y); },
                            [Fp, z](double y) { return Fp(z, y); }, iv);
        // -F(-z, .) is the positive decreasing branch
        p.phi = ScalarField([F, z](double y) { return -F(-z, y); },
                            [Fp, z](double y) { return -Fp(-z, y); }, iv);
        p.omega = (1.0 + 2.0 * mu) * z;
        return p;
    };
    m.probe_grid = {-2.0, -1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 2.0};
    return m;
}

ExampleModel make_e2() {
    ExampleModel m;
    m.id = "e2";
    m.description = "Brownian motion on (0,inf) killed at 0; sinh seed";
    const Interval iv = Interval::positive_half_line();
    m.spec_Y = DiffusionSpec::killed_bm(ScalarField::constant(0.0, iv), iv,
                                        BoundaryCondition::killing());
    m.seed = {ScalarField([](double y) { return std::sinh(y); },
                          [](double y) { return std::cosh(y); }, iv),
              0.5};
    m.m_h = 0.0;
    m.spec_Ytilde = DiffusionSpec::killed_bm(
        ScalarField([](double y) { const double v = 1.0 / std::tanh(y); return v * v; }, iv), iv);
    m.pY = {pY2, Provenance::ClosedForm, m.spec_Y, {}};
    m.pYtilde = {pYt2, Provenance::ClosedForm, m.spec_Ytilde, {}};
    SpectralForm sf;
    sf.kind = SpectralForm::Kind::ContinuousIntegral;
    sf.max_terms = 0;
    sf.band = e2_band;
    m.spectral = sf;
    m.greens_Y = [iv](double mu) {
        const double s = std::sqrt(2.0 * mu);
        FundamentalPair p;
        p.mu = mu;
        p.psi = ScalarField([s](double y) { return std::sinh(s * y); },
                            [s](double y) { return s * std::cosh(s * y); }, iv);
        p.phi = ScalarField([s](double y) { return std::exp(-s * y); },
                            [s](double y) { return -s * std::exp(-s * y); }, iv);
        p.omega = 0.5 * s;
        return p;
    };
    m.greens_Ytilde = [iv](double mu) {
        const double z = std::sqrt(2.0 * (1.0 + mu));
        FundamentalPair p;
        p.mu = mu;
        p.psi = ScalarField(
            [z](double x) {
                return (z * std::cosh(z * x) - std::sinh(z * x) / std::tanh(x)) / (z * z - 1.0);
            },
            [z](double x) {
                const double coth = 1.0 / std::tanh(x);
                const double csch2 = 1.0 / (std::sinh(x) * std::sinh(x));
                return (z * z * std::sinh(z * x) - z * std::cosh(z * x) * coth +
                        std::sinh(z * x) * csch2) /
                       (z * z - 1.0);
            },
            iv);
        p.phi = ScalarField(
            [z](double x) { return std::exp(-z * x) * (z + 1.0 / std::tanh(x)); },
            [z](double x) {
                const double coth = 1.0 / std::tanh(x);
                const double csch2 = 1.0 / (std::sinh(x) * std::sinh(x));
                return std::exp(-z * x) * (-z * (z + coth) - csch2);
            },
            iv);
        p.omega = 0.5 * z;
        return p;
    };
    m.probe_grid = {0.3, 0.6, 0.9, 1.2, 1.5, 1.9, 2.3, 2.7};
    return m;
}

ExampleModel make_e3(double gamma) {
    if (!(gamma > 0.0)) throw ConfigError("e3 requires gamma > 0");
    ExampleModel m;
    m.id = "e3";
    m.gamma = gamma;
    m.description = "Brownian motion on (0,inf) killed elastically at 0";
    const Interval iv = Interval::positive_half_line();
    const double beta = e3_beta(gamma);
    m.spec_Y = DiffusionSpec::killed_bm(ScalarField::constant(0.0, iv), iv,
                                        BoundaryCondition::elastic(gamma));
    ScalarField h([beta](double y) { return std::exp(y) + beta * std::exp(-y); },
                  [beta](double y) { return std::exp(y) - beta * std::exp(-y); }, iv);
    m.seed = {h, 0.5};
    m.m_h = 0.0;
    m.spec_Ytilde = DiffusionSpec::killed_bm(
        ScalarField([h](double y) {
            const double r = h.derivative(y) / h(y);
            return r * r;
        }, iv),
        iv, BoundaryCondition::killing());
    m.pY = {[gamma](double t, double x, double y) { return pY3(gamma, t, x, y); },
            Provenance::ClosedForm, m.spec_Y, {}};
    m.pYtilde = {[gamma](double t, double x, double y) { return pYt3(gamma, t, x, y); },
                 Provenance::ClosedForm, m.spec_Ytilde, {}};
    m.probe_grid = {0.3, 0.6, 0.9, 1.2, 1.5, 1.9, 2.3, 2.7};
    return m;
}

ExampleModel make_e4() {
    ExampleModel m;
    m.id = "e4";
    m.description = "Brownian motion on (0,1) killed at both ends; sine seed";
    const Interval iv(0.0, 1.0);
    m.spec_Y = DiffusionSpec::killed_bm(ScalarField::constant(0.0, iv), iv,
                                        BoundaryCondition::killing(), BoundaryCondition::killing());
    m.seed = {ScalarField([](double y) { return std::sin(kPi * y); },
                          [](double y) { return kPi * std::cos(kPi * y); }, iv),
              -0.5 * kPi * kPi};
    m.m_h = 0.0;
    m.spec_Ytilde = DiffusionSpec::killed_bm(
        ScalarField([](double y) {
            const double c = std::cos(kPi * y) / std::sin(kPi * y);
            return kPi * kPi * c * c;
        }, iv),
        iv);
    m.pY = {pY4, Provenance::ClosedForm, m.spec_Y, {}};
    m.pYtilde = {pYt4, Provenance::ClosedForm, m.spec_Ytilde, {}};
    SpectralForm sf;
    sf.kind = SpectralForm::Kind::DiscreteSeries;
    sf.first_index = 2;
    sf.max_terms = 2000;
    sf.eigenvalue = [](int n) { return -0.5 * kPi * kPi * (n * n - 2.0); };
    sf.eigenfunction = [](int n, double x) { return e4_fn(n, x); };
    sf.weight = [](int n) { return 2.0 / (n * n - 1.0); };
    m.spectral = sf;
    m.probe_grid = {0.15, 0.25, 0.35, 0.45, 0.55, 0.65, 0.75, 0.85};
    return m;
}

ExampleModel make_e5() {
    ExampleModel m;
    m.id = "e5";
    m.description = "Brownian motion on R killed at rate y^2/2; Ornstein-Uhlenbeck related";
    const Interval iv = Interval::real_line();
    m.spec_Y = DiffusionSpec::killed_bm(
        ScalarField([](double y) { return 0.5 * y * y; }, [](double y) { return y; }, iv), iv);
    m.seed = {ScalarField(e5_h, e5_h_prime, iv), 2.5};
    m.m_h = 0.0;
    m.spec_Ytilde = DiffusionSpec::killed_bm(
        ScalarField([](double y) {
            const double q = 2.0 * y * y + 1.0;
            return 0.5 * y * y + 8.0 * y * y * (2.0 * y * y + 3.0) / (q * q);
        }, iv),
        iv);
    m.pY = {pY5, Provenance::ClosedForm, m.spec_Y, e5_radius};
    m.pYtilde = {pYt5, Provenance::ClosedForm, m.spec_Ytilde, e5_radius};
    SpectralForm sf;
    sf.kind = SpectralForm::Kind::DiscreteSeries;
    sf.first_index = 0;
    sf.max_terms = 60;
    sf.eigenvalue = [](int k) { return k == 0 ? -2.5 : -(k - 1.0) - 5.5; };
    sf.eigenfunction = [](int k, double x) {
        const double u0 = std::exp(-0.5 * x * x) / (2.0 * x * x + 1.0);
        return k == 0 ? u0 : Qn_poly(k - 1, x) * u0;
    };
    sf.weight = [](int k) {
        if (k == 0) return 2.0 / kSqrtPi;
        const int n = k - 1;
        double fact = 1.0;
        for (int j = 2; j <= n; ++j) fact *= j;
        return 1.0 / (kSqrtPi * std::pow(2.0, n + 1) * fact * (n + 3.0));
    };
    m.spectral = sf;
    m.probe_grid = {-1.6, -1.2, -0.8, -0.4, 0.0, 0.4, 0.8, 1.2, 1.6};
    return m;
}

}  // namespace

const std::vector<std::string>& catalog_ids() {
    static const std::vector<std::string> ids = {"e1", "e2", "e3", "e4", "e5"};
    return ids;
}

ExampleModel make_example(const std::string& id, double gamma) {
    if (id == "e1") return make_e1();
    if (id == "e2") return make_e2();
    if (id == "e3") {
        if (std::isnan(gamma)) throw ConfigError("example e3 requires the gamma field");
        return make_e3(gamma);
    }
    if (id == "e4") return make_e4();
    if (id == "e5") return make_e5();
    throw ConfigError("unknown example id '" + id + "'");
}

double pY_eval(const ExampleModel& m, double t, double x, double y) { return m.pY(t, x, y); }

double pYtilde_eval(const ExampleModel& m, double t, double x, double y) {
    return m.pYtilde(t, x, y);
}

double spectral_eval(const ExampleModel& m, double t, double x, double y, double tol) {
    if (!m.spectral) throw Error("spectral_eval: no spectral form for " + m.id);
    const SpectralForm& sf = *m.spectral;
    if (t < sf.t_floor) {
        throw SlowConvergence("spectral_eval: t=" + std::to_string(t) + " below floor " +
                              std::to_string(sf.t_floor) + " for " + m.id);
    }
    double sum = 0.0;
    if (sf.max_terms > 0) {
        int taken = 0;
        for (int n = sf.first_index; taken < sf.max_terms; ++n, ++taken) {
            const double term = sf.weight(n) * std::exp(sf.eigenvalue(n) * t) *
                                sf.eigenfunction(n, x) * sf.eigenfunction(n, y);
            sum += term;
            if (taken >= 10 && std::abs(term) < 0.1 * tol) break;
        }
    }
    if (sf.band) sum += sf.band(t, x, y, tol);
    return sum;
}

TransitionKernel doob_kernel_of(const ExampleModel& m) {
    TransitionKernel k;
    k.spec = m.spec_Y;
    k.spec.drift = ScalarField([seed = m.seed](double x) { return seed.log_derivative(x); },
                               m.spec_Y.interval);
    k.spec.killing = ScalarField::constant(0.0, m.spec_Y.interval);
    // reflecting/elastic boundaries stay non-singular (reflecting) for the
    // conservative transform; killing boundaries become natural
    auto flip = [](BoundaryCondition bc) {
        switch (bc.kind) {
            case BoundaryCondition::Kind::Reflecting:
            case BoundaryCondition::Kind::Elastic:
                return BoundaryCondition::reflecting();
            default:
                return BoundaryCondition::none();
        }
    };
    k.spec.left_bc = flip(m.spec_Y.left_bc);
    k.spec.right_bc = flip(m.spec_Y.right_bc);
    k.provenance = Provenance::ClosedForm;
    k.tail_radius = m.pY.tail_radius;
    k.eval = [pY = m.pY, seed = m.seed](double t, double x, double y) {
        return std::exp(-seed.lambda * t) * pY(t, x, y) * seed.h(y) / seed.h(x);
    };
    return k;
}

TransitionKernel dual_kernel_of(const ExampleModel& m) {
    TransitionKernel k;
    k.spec = m.spec_Ytilde;
    k.spec.drift = ScalarField([seed = m.seed](double x) { return -seed.log_derivative(x); },
                               m.spec_Ytilde.interval);
    k.spec.killing = ScalarField::constant(0.0, m.spec_Ytilde.interval);
    k.provenance = Provenance::ClosedForm;
    k.tail_radius = m.pYtilde.tail_radius;
    const double rate = m.m_h + m.seed.lambda;
    k.eval = [pYt = m.pYtilde, seed = m.seed, rate](double t, double x, double y) {
        return std::exp(rate * t) * pYt(t, x, y) * seed.h(x) / seed.h(y);
    };
    return k;
}

double Qn_poly(int n, double y) {
    if (n < 0) throw std::invalid_argument("Qn_poly: n must be >= 0");
    const double first =
        n >= 1 ? 2.0 * n * (2.0 * y * y + 1.0) * hermite_poly(n - 1, y) : 0.0;
    return first - (4.0 * y * y * y + 6.0 * y) * hermite_poly(n, y);
}

double e3_beta(double gamma) { return (1.0 - gamma) / (1.0 + gamma); }

double e3_alpha(double gamma) {
    const double beta = e3_beta(gamma);
    if (beta == 0.0) throw Error("e3_alpha undefined at gamma=1 (beta=0)");
    return -0.5 * std::log(std::abs(beta));
}

namespace {
double richardson_d1(const std::function<double(double)>& f, double x, double h) {
    auto d = [&](double s) { return (f(x + s) - f(x - s)) / (2.0 * s); };
    return (4.0 * d(0.5 * h) - d(h)) / 3.0;
}
double richardson_d2(const std::function<double(double)>& f, double x, double h) {
    auto d = [&](double s) { return (f(x + s) - 2.0 * f(x) + f(x - s)) / (s * s); };
    return (4.0 * d(0.5 * h) - d(h)) / 3.0;
}
void require_eigen(const ScalarField& g, const ScalarField& killing, double mu, double x,
                   const char* name) {
    const double h0 = 1e-3 * (1.0 + std::abs(x));
    auto ge = [&g](double u) { return g(u); };
    const double resid = 0.5 * richardson_d2(ge, x, h0) - killing(x) * g(x) - mu * g(x);
    const double scale = std::abs(mu * g(x)) + std::abs(killing(x) * g(x)) + 1.0;
    if (std::abs(resid) > 1e-6 * scale) {
        throw PreconditionResidual(std::string("pair_identity_residual: ") + name +
                                   " fails its eigen-equation, residual " + std::to_string(resid));
    }
}
}  // namespace

double pair_identity_residual(PairIdentity which, const ScalarField& f, const ScalarField& g,
                              const SeedFunction& seed, const ScalarField& killing, double mu,
                              const std::vector<double>& grid) {
    auto dh = [&seed](const ScalarField& u, double x) {
        return u.derivative(x) - seed.log_derivative(x) * u(x);
    };
    const double lambda = seed.lambda;
    double worst = 0.0;
    for (double x : grid) {
        require_eigen(g, killing, mu, x, "g");
        if (which == PairIdentity::Wronskian) require_eigen(f, killing, mu, x, "f");
        const double h0 = 3e-4 * (1.0 + std::abs(x));
        auto ft = [&](double u) { return dh(f, u); };
        auto gt = [&](double u) { return dh(g, u); };
        double resid;
        if (which == PairIdentity::Antiderivative) {
            // d/dy of [int ft gt] vs d/dy of [f gt + 2(lambda-mu) int f g]
            const double lhs = ft(x) * gt(x);
            const double rhs = f.derivative(x) * gt(x) + f(x) * richardson_d1(gt, x, h0) +
                               2.0 * (lambda - mu) * f(x) * g(x);
            resid = std::abs(lhs - rhs);
        } else {
            const double wr_image = ft(x) * richardson_d1(gt, x, h0) -
                                    richardson_d1(ft, x, h0) * gt(x);
            const double wr = f(x) * g.derivative(x) - f.derivative(x) * g(x);
            resid = std::abs(wr_image - 2.0 * (lambda - mu) * wr);
        }
        worst = std::max(worst, resid);
    }
    return worst;
}

double fourier_gaussian_residual(int identity, double t, double w) {
    if (t <= 0.0) throw std::invalid_argument("fourier_gaussian_residual: t must be > 0");
    const double zmax = envelope_cutoff(t);
    const double st = std::sqrt(t);
    double lhs = 0.0, rhs = 0.0;
    switch (identity) {
        case 1: {
            auto f = [=](double z) {
                return std::exp(-0.5 * t * z * z) * (std::cos(z * w) + z * std::sin(z * w)) /
                       (1.0 + z * z);
            };
            lhs = std::exp(w) / kPi * quad_adaptive(f, 0.0, zmax, 1e-12).value;
            rhs = std::exp(0.5 * t) * normal_cdf((w - t) / st);
            break;
        }
        case 2: {
            auto f = [=](double z) {
                return std::exp(-0.5 * t * z * z) * std::cos(z * w) / (1.0 + z * z);
            };
            lhs = quad_adaptive(f, 0.0, zmax, 1e-12).value / kPi;
            rhs = 0.5 * (std::exp(0.5 * t + w) * normal_cdf(-(w + t) / st) +
                         std::exp(0.5 * t - w) * normal_cdf((w - t) / st));
            break;
        }
        case 3: {
            auto f = [=](double z) {
                return std::exp(-0.5 * t * z * z) * (-z * std::sin(z * w)) / (1.0 + z * z);
            };
            lhs = quad_adaptive(f, 0.0, zmax, 1e-12).value / kPi;
            rhs = 0.5 * (std::exp(0.5 * t + w) * normal_cdf(-(w + t) / st) -
                         std::exp(0.5 * t - w) * normal_cdf((w - t) / st));
            break;
        }
        default:
            throw std::invalid_argument("fourier_gaussian_residual: identity must be 1, 2 or 3");
    }
    return std::abs(lhs - rhs);
}

double e4_fn(int n, double x) {
    return n * std::cos(kPi * n * x) - std::sin(kPi * n * x) * std::cos(kPi * x) / std::sin(kPi * x);
}

double e4_fn2(int n, double x) {
    const double s = std::sin(kPi * x);
    const double cot = std::cos(kPi * x) / s;
    return -(2.0 + n * n) * std::sin(kPi * n * x) + 3.0 * std::sin(kPi * n * x) / (s * s) -
           3.0 * n * std::cos(kPi * n * x) * cot;
}

double e4_h1(double y) {
    const double s = std::sin(kPi * y);
    return 2.0 * s * s;
}

double iterated_transform_e4(int level, double t, double x, double y) {
    if (level != 1 && level != 2) throw std::invalid_argument("iterated_transform_e4: level 1 or 2");
    if (t < 0.01) throw SlowConvergence("iterated_transform_e4: series too slow below t=0.01");
    if (level == 1) return pYt4(t, x, y);
    double s = 0.0;
    for (int n = 3; n < 4000; ++n) {
        const double decay = std::exp(-0.5 * kPi * kPi * (n * n - 6.0) * t) /
                             ((n * n - 1.0) * (n * n - 4.0));
        const double term = 2.0 * decay * e4_fn2(n, x) * e4_fn2(n, y);
        s += term;
        if (decay * std::pow(n + 4.0, 4.0) < 1e-17 && n > 10) break;
    }
    return s;
}

DiffusionSpec reflected_bm_spec() {
    const Interval iv = Interval::positive_half_line();
    return DiffusionSpec::killed_bm(ScalarField::constant(0.0, iv), iv,
                                    BoundaryCondition::reflecting());
}

TransitionKernel reflected_bm_kernel() {
    TransitionKernel k;
    k.spec = reflected_bm_spec();
    k.provenance = Provenance::ClosedForm;
    k.eval = [](double t, double x, double y) {
        return bm_kernel(t, y - x) + bm_kernel(t, y + x);
    };
    return k;
}

SeedFunction linear_seed() {
    const Interval iv = Interval::positive_half_line();
    return {ScalarField([](double y) { return y; }, [](double) { return 1.0; }, iv), 0.0};
}

}  // namespace darboux
