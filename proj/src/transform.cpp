#include "darboux/transform.hpp"

#include <algorithm>
#include <cmath>

#include "darboux/errors.hpp"
#include "darboux/finite_diff.hpp"
#include "darboux/quadrature.hpp"

namespace darboux {
namespace {

double quad_or_throw(const std::function<double(double)>& f, double a, double b, double tol,
                     const char* who) {
    if (b <= a) return 0.0;
    try {
        QuadratureOptions opts;
        opts.tol_abs = tol;
        opts.tol_rel = tol;
        return quad_adaptive(f, a, b, tol, opts).value;
    } catch (const NonConvergence& e) {
        throw QuadratureFailure(std::string(who) + ": " + e.what());
    }
}

// Richardson-extrapolated central differences; the base step is large
// enough to keep roundoff out of the extrapolated estimate.
double fd1_richardson(const std::function<double(double)>& f, double x, double h) {
    auto d = [&](double s) { return (f(x + s) - f(x - s)) / (2.0 * s); };
    return (4.0 * d(0.5 * h) - d(h)) / 3.0;
}

double fd2_richardson(const std::function<double(double)>& f, double x, double h) {
    auto d = [&](double s) { return (f(x + s) - 2.0 * f(x) + f(x - s)) / (s * s); };
    return (4.0 * d(0.5 * h) - d(h)) / 3.0;
}

}  // namespace

double compute_m_h(const DiffusionSpec& spec, const SeedFunction& seed,
                   const std::vector<double>& grid) {
    if (grid.size() < 2) throw std::invalid_argument("compute_m_h: need a grid");
    auto value = [&](double y) {
        const double lr = seed.log_derivative(y);
        return spec.killing(y) - lr * lr;
    };
    double sup = -std::numeric_limits<double>::infinity();
    double arg = grid.front();
    double lo = grid.front(), hi = grid.front();
    for (double y : grid) {
        if (!spec.interval.contains(y)) continue;
        lo = std::min(lo, y);
        hi = std::max(hi, y);
        const double v = value(y);
        if (v > sup) {
            sup = v;
            arg = y;
        }
    }
    // constant expression: the grid sup is already exact
    bool constant = true;
    for (double y : grid) {
        if (std::abs(value(y) - sup) > 1e-10 * (1.0 + std::abs(sup))) {
            constant = false;
            break;
        }
    }
    if (constant) return sup;

    // refine around the running maximizer
    double radius = (hi - lo) / static_cast<double>(grid.size());
    for (int round = 0; round < 4; ++round) {
        for (int i = -5; i <= 5; ++i) {
            const double y = arg + radius * i / 5.0;
            if (!spec.interval.contains(y)) continue;
            const double v = value(y);
            if (v > sup) {
                sup = v;
                arg = y;
            }
        }
        radius *= 0.2;
    }

    // probe toward each boundary; monotone unbounded growth means the
    // construction's standing assumption fails
    const double grid_sup = sup;
    for (int side = 0; side < 2; ++side) {
        const double endpoint = side == 0 ? spec.interval.left : spec.interval.right;
        const double start = side == 0 ? lo : hi;
        double prev = value(start);
        int growing = 0;
        double v = prev;
        for (int k = 1; k <= 8; ++k) {
            double y;
            if (std::isinf(endpoint)) {
                y = (side == 0 ? -1.0 : 1.0) * (std::abs(start) + 1.0) * std::pow(2.0, k);
            } else {
                y = endpoint + (start - endpoint) * std::pow(2.0, -k);
            }
            v = value(y);
            if (!std::isfinite(v)) {
                // c or h'/h overflowed this far out; trust the trend so far
                if (growing == k - 1 && k >= 3) {
                    throw Unbounded(
                        "compute_m_h: c - (h'/h)^2 grows without bound toward a boundary");
                }
                break;
            }
            if (v > prev) ++growing;
            prev = v;
            if (v > 1e12) {
                if (growing == k) {
                    throw Unbounded(
                        "compute_m_h: c - (h'/h)^2 grows without bound toward a boundary");
                }
                break;
            }
            sup = std::max(sup, v);
        }
        if (growing == 8 && v > 10.0 * (1.0 + std::abs(grid_sup))) {
            throw Unbounded("compute_m_h: c - (h'/h)^2 grows without bound toward a boundary");
        }
    }
    return sup;
}

double tilde_c_at(const DiffusionSpec& spec, const SeedFunction& seed, double m_h, double y) {
    const double lr = seed.log_derivative(y);
    const double v = m_h + lr * lr - spec.killing(y);
    if (v < -1e-10) {
        throw NegativeRate("tilde_c: negative rate " + std::to_string(v) +
                           " (m_h inconsistent with seed)");
    }
    return std::max(v, 0.0);
}

InvarianceResult verify_lambda_invariance(const TransitionKernel& kernel_Y,
                                          const SeedFunction& seed, double t, double x,
                                          double tol) {
    const double lo = kernel_Y.clip_lo(t, x);
    const double hi = kernel_Y.clip_hi(t, x);
    auto f = [&](double u) { return kernel_Y(t, x, u) * seed.h(u); };
    const double integral = quad_or_throw(f, lo, hi, 1e-12, "verify_lambda_invariance");
    const double expected = std::exp(seed.lambda * t) * seed.h(x);
    const double residual = std::abs(integral - expected) / expected;
    return {residual, residual < tol};
}

double darboux_density(const TransitionKernel& kernel_Y, const SeedFunction& seed, double m_h,
                       double t, double x, double y) {
    const Interval iv = kernel_Y.spec.interval;
    const double step = 1e-4 * (1.0 + std::abs(x));
    if (!iv.contains(x - 2 * step) || !iv.contains(x + 2 * step)) {
        throw DomainMargin("darboux_density: x too close to the boundary for the stencil");
    }
    auto bracket = [&](double xx) {
        const double hi = std::max(y, kernel_Y.clip_hi(t, xx));
        auto f = [&](double u) { return kernel_Y(t, xx, u) * seed.h(u); };
        return quad_or_throw(f, y, hi, 1e-10, "darboux_density") / seed.h(xx);
    };
    const double der = (bracket(x + step) - bracket(x - step)) / (2.0 * step);
    return std::exp(-(m_h + 2.0 * seed.lambda) * t) * seed.h(x) / seed.h(y) * der;
}

double doob_density(const TransitionKernel& kernel_Y, const SeedFunction& seed, double t,
                    double x, double y) {
    return std::exp(-seed.lambda * t) * kernel_Y(t, x, y) * seed.h(y) / seed.h(x);
}

TransitionKernel doob_kernel(const TransitionKernel& kernel_Y, const SeedFunction& seed) {
    TransitionKernel k;
    DiffusionSpec spec;
    const Interval iv = kernel_Y.spec.interval;
    spec.interval = iv;
    spec.drift = ScalarField([seed](double x) { return seed.log_derivative(x); }, iv);
    spec.sigma = ScalarField::constant(1.0, iv);
    spec.killing = ScalarField::constant(0.0, iv);
    spec.speed_normalization = DiffusionSpec::kKilledBmNormalization;
    // reflecting/elastic boundaries of Y turn reflecting; killing
    // boundaries of Y become natural for the conservative transform
    auto flip = [](BoundaryCondition bc) {
        switch (bc.kind) {
            case BoundaryCondition::Kind::Reflecting:
            case BoundaryCondition::Kind::Elastic:
                return BoundaryCondition::reflecting();
            default:
                return BoundaryCondition::none();
        }
    };
    spec.left_bc = flip(kernel_Y.spec.left_bc);
    spec.right_bc = flip(kernel_Y.spec.right_bc);
    k.spec = std::move(spec);
    k.provenance = kernel_Y.provenance;
    k.tail_radius = kernel_Y.tail_radius;
    k.eval = [kernel_Y, seed](double t, double x, double y) {
        return doob_density(kernel_Y, seed, t, x, y);
    };
    return k;
}

double siegmund_dual_density(const TransitionKernel& kernel_X, double t, double x, double y) {
    const double step = 1e-4 * (1.0 + std::abs(y));
    auto survival = [&](double yy) {
        const double hi = std::max(x, kernel_X.clip_hi(t, yy));
        auto f = [&](double u) { return kernel_X(t, yy, u); };
        return quad_or_throw(f, x, hi, 1e-10, "siegmund_dual_density");
    };
    return (survival(y + step) - survival(y - step)) / (2.0 * step);
}

double siegmund_identity_deviation(const TransitionKernel& kernel_X,
                                   const TransitionKernel& kernel_dual, double t, double y,
                                   const std::vector<double>& x_probes) {
    double vmin = std::numeric_limits<double>::infinity();
    double vmax = -vmin;
    for (double x : x_probes) {
        const double lo = std::min(y, kernel_X.clip_lo(t, x));
        auto fx = [&](double u) { return kernel_X(t, x, u); };
        const double cdf = quad_or_throw(fx, lo, y, 1e-11, "siegmund_identity");
        const double hi = std::max(x, kernel_dual.clip_hi(t, y));
        auto fd = [&](double u) { return kernel_dual(t, y, u); };
        const double dual_tail = quad_or_throw(fd, x, hi, 1e-11, "siegmund_identity");
        const double v = cdf - dual_tail;
        vmin = std::min(vmin, v);
        vmax = std::max(vmax, v);
    }
    return vmax - vmin;
}

double apply_dh(const SeedFunction& seed, const ScalarField& f, double x) {
    return f.derivative(x) - seed.log_derivative(x) * f(x);
}

double intertwine_residual(const DiffusionSpec& spec, const SeedFunction& seed, double m_h,
                           const ScalarField& f, double mu, double x) {
    const double h0 = 1e-3 * (1.0 + std::abs(x));
    const double eigen = mu + m_h + 2.0 * seed.lambda;
    auto feval = [&f](double u) { return f(u); };
    const double pre = 0.5 * fd2_richardson(feval, x, h0) - spec.killing(x) * f(x) - eigen * f(x);
    const double pre_scale = std::abs(eigen * f(x)) + std::abs(spec.killing(x) * f(x)) + 1.0;
    if (std::abs(pre) > 1e-6 * pre_scale) {
        throw PreconditionResidual("intertwine_residual: f fails its eigen-equation, residual " +
                                   std::to_string(pre));
    }
    auto g = [&](double u) { return apply_dh(seed, f, u); };
    const double gpp = fd2_richardson(g, x, h0);
    const double ct = tilde_c_at(spec, seed, m_h, x);
    return std::abs(0.5 * gpp - ct * g(x) - mu * g(x));
}

double factorization_residual_forward(const DiffusionSpec& spec, const SeedFunction& seed,
                                      const ScalarField& f, double x) {
    const double h0 = 1e-3 * (1.0 + std::abs(x));
    auto g = [&](double u) { return apply_dh(seed, f, u); };  // D_h f
    const double lhs = 0.5 * (fd1_richardson(g, x, h0) + seed.log_derivative(x) * g(x));
    auto feval = [&f](double u) { return f(u); };
    const double rhs =
        0.5 * fd2_richardson(feval, x, h0) - spec.killing(x) * f(x) - seed.lambda * f(x);
    return std::abs(lhs - rhs);
}

double factorization_residual_backward(const DiffusionSpec& spec, const SeedFunction& seed,
                                       double m_h, const ScalarField& g, double x) {
    const double h0 = 1e-3 * (1.0 + std::abs(x));
    auto w = [&](double u) { return g.derivative(u) + seed.log_derivative(u) * g(u); };  // D_{1/h} g
    const double lhs = 0.5 * (fd1_richardson(w, x, h0) - seed.log_derivative(x) * w(x));
    auto geval = [&g](double u) { return g(u); };
    const double rhs = 0.5 * fd2_richardson(geval, x, h0) - tilde_c_at(spec, seed, m_h, x) * g(x) +
                       (seed.lambda + m_h) * g(x);
    return std::abs(lhs - rhs);
}

namespace {

// Monotone antiderivative with Newton inversion (bisection fallback).
class MonotoneIntegral {
  public:
    MonotoneIntegral(std::function<double(double)> density, double anchor, Interval domain)
        : density_(std::move(density)), anchor_(anchor), domain_(domain) {}

    double operator()(double x) const {
        if (x == anchor_) return 0.0;
        const double s = x < anchor_ ? -1.0 : 1.0;
        return s * quad_or_throw(density_, std::min(x, anchor_), std::max(x, anchor_), 1e-12,
                                 "krein_dual_check");
    }

    double invert(double target) const {
        double lo = anchor_, hi = anchor_;
        double step = 0.5;
        while ((*this)(hi) < target) {
            hi += step;
            step *= 2.0;
            if (!domain_.contains(hi)) { hi = std::nextafter(domain_.right, anchor_); break; }
        }
        step = 0.5;
        while ((*this)(lo) > target) {
            lo -= step;
            step *= 2.0;
            if (!domain_.contains(lo)) { lo = std::nextafter(domain_.left, anchor_); break; }
        }
        double x = 0.5 * (lo + hi);
        for (int i = 0; i < 100; ++i) {
            const double fx = (*this)(x) - target;
            if (fx > 0) hi = x; else lo = x;
            const double d = density_(x);
            double xn = x - fx / d;
            if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
            if (std::abs(xn - x) < 1e-14 * (1.0 + std::abs(x))) return xn;
            x = xn;
        }
        return x;
    }

  private:
    std::function<double(double)> density_;
    double anchor_;
    Interval domain_;
};

}  // namespace

double krein_dual_check(const SeedFunction& seed, const std::vector<double>& grid) {
    if (grid.empty()) throw std::invalid_argument("krein_dual_check: empty grid");
    const Interval dom = seed.h.domain();
    const double anchor = grid[grid.size() / 2];
    auto h2 = [&](double x) { const double v = seed.h(x); return v * v; };
    auto inv_h2 = [&](double x) { const double v = seed.h(x); return 2.0 / (v * v); };
    MonotoneIntegral u(h2, anchor, dom);
    MonotoneIntegral v(inv_h2, anchor, dom);

    // string densities as functions of the u- and v-coordinates
    auto dM_du = [&](double w) {
        const double x = u.invert(w);
        const double hh = seed.h(x);
        return 2.0 / (hh * hh * hh * hh);
    };
    auto dm_dv = [&](double w) {
        const double x = v.invert(w);
        const double hh = seed.h(x);
        return 0.5 * hh * hh * hh * hh;
    };

    double worst = 0.0;
    for (double x : grid) {
        const double ux = u(x);
        const double sign_u = ux < 0 ? -1.0 : 1.0;
        const double mu = sign_u * quad_or_throw(dM_du, std::min(0.0, ux), std::max(0.0, ux),
                                                 1e-11, "krein_dual_check:M");
        const double sign_m = mu < 0 ? -1.0 : 1.0;
        const double mm = sign_m * quad_or_throw(dm_dv, std::min(0.0, mu), std::max(0.0, mu),
                                                 1e-11, "krein_dual_check:m");
        worst = std::max(worst, std::abs(mm - ux));
    }
    return worst;
}

DarbouxResult build_darboux(const DiffusionSpec& spec_Y, const SeedFunction& seed,
                            const TransitionKernel& kernel_Y, const std::vector<double>& grid,
                            std::optional<double> m_h_override) {
    DarbouxResult out;
    out.m_h = m_h_override ? *m_h_override : compute_m_h(spec_Y, seed, grid);
    const double m_h = out.m_h;
    out.tilde_c = ScalarField(
        [spec_Y, seed, m_h](double y) { return tilde_c_at(spec_Y, seed, m_h, y); },
        spec_Y.interval);

    auto flip = [](BoundaryCondition bc) {
        switch (bc.kind) {
            case BoundaryCondition::Kind::Reflecting:
            case BoundaryCondition::Kind::Elastic:
                return BoundaryCondition::killing();
            default:
                return BoundaryCondition::none();
        }
    };
    out.spec_Ytilde = DiffusionSpec::killed_bm(out.tilde_c, spec_Y.interval,
                                               flip(spec_Y.left_bc), flip(spec_Y.right_bc));

    TransitionKernel kt;
    kt.spec = out.spec_Ytilde;
    kt.provenance = Provenance::QuadratureBuilt;
    kt.tail_radius = kernel_Y.tail_radius;
    kt.eval = [kernel_Y, seed, m_h](double t, double x, double y) {
        return darboux_density(kernel_Y, seed, m_h, t, x, y);
    };
    out.kernel_Ytilde = std::move(kt);

    // The middle step requires the conservative process to reflect at any
    // non-singular boundary; that is proved only when Y itself reflects or
    // is elastic there. Classify and record rather than assume.
    const TransitionKernel kernel_X = doob_kernel(kernel_Y, seed);
    const double z = spec_Y.interval.reference_point();
    for (Side side : {Side::Left, Side::Right}) {
        const char* name = side == Side::Left ? "left" : "right";
        const BoundaryCondition y_bc = side == Side::Left ? spec_Y.left_bc : spec_Y.right_bc;
        std::string entry;
        try {
            const BoundaryClass cls = classify_boundary(kernel_X.spec, side, z);
            entry = std::string(name) + ": " + to_string(cls);
            if (cls == BoundaryClass::NonSingular) {
                const bool covered = y_bc.kind == BoundaryCondition::Kind::Reflecting ||
                                     y_bc.kind == BoundaryCondition::Kind::Elastic;
                entry += covered ? " (reflecting; justified by the base process's "
                                   "reflecting/elastic condition)"
                                 : " (reflecting behaviour unverified for this base condition)";
            }
        } catch (const Inconclusive&) {
            entry = std::string(name) + ": inconclusive";
        }
        out.x_boundary_report += entry;
        if (side == Side::Left) out.x_boundary_report += "; ";
    }
    return out;
}

}  // namespace darboux
