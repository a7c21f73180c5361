#include "darboux/kernel.hpp"

#include <cmath>
#include <vector>

namespace darboux {

double TransitionKernel::default_radius(double t) const {
    // e^{-d^2/2t} * e^{d} < 1e-16 once d > t + sqrt(2t*37); padded.
    return t + std::sqrt(74.0 * t) + 6.0 * std::sqrt(t) + 4.0;
}

double TransitionKernel::clip_lo(double t, double center) const {
    const double r = tail_radius ? tail_radius(t, center) : default_radius(t);
    return std::max(spec.interval.left, center - r);
}

double TransitionKernel::clip_hi(double t, double center) const {
    const double r = tail_radius ? tail_radius(t, center) : default_radius(t);
    return std::min(spec.interval.right, center + r);
}

namespace {

// Linear extrapolation of g to the endpoint from offsets eps and 2*eps.
double extrapolate_to_boundary(const std::function<double(double)>& g, double endpoint,
                               double into, double eps) {
    const double g1 = g(endpoint + into * eps);
    const double g2 = g(endpoint + into * 2.0 * eps);
    return 2.0 * g1 - g2;
}

bool boundary_condition_holds(const DiffusionSpec& spec, const SeedFunction& seed, Side side,
                              double scale) {
    const BoundaryCondition bc = (side == Side::Left) ? spec.left_bc : spec.right_bc;
    if (bc.kind == BoundaryCondition::Kind::NotApplicable) return true;
    const double endpoint =
        (side == Side::Left) ? spec.interval.left : spec.interval.right;
    const double into = (side == Side::Left) ? 1.0 : -1.0;
    const double eps = 1e-4 * std::min(1.0, 0.25 * scale);
    auto h = [&](double x) { return seed.h(x); };
    auto hp = [&](double x) { return seed.h.derivative(x); };
    double resid = 0.0;
    switch (bc.kind) {
        case BoundaryCondition::Kind::Killing:
            resid = extrapolate_to_boundary(h, endpoint, into, eps);
            break;
        case BoundaryCondition::Kind::Reflecting:
            resid = into * extrapolate_to_boundary(hp, endpoint, into, eps);
            break;
        case BoundaryCondition::Kind::Elastic: {
            const double g = bc.elastic_param;
            auto e = [&](double x) { return into * hp(x) - g * h(x); };
            resid = extrapolate_to_boundary(e, endpoint, into, eps);
            break;
        }
        default:
            break;
    }
    const double ref = std::abs(seed.h(endpoint + into * std::min(1.0, 0.5 * scale))) + 1.0;
    return std::abs(resid) < 1e-5 * ref;
}

}  // namespace

SeedReport validate_seed(const DiffusionSpec& spec, const SeedFunction& seed,
                         const std::vector<double>& grid) {
    SeedReport rep;
    for (double x : grid) {
        if (!spec.interval.contains(x)) continue;
        const double hx = seed.h(x);
        if (!(hx > 0.0)) {
            rep.positive = false;
            rep.detail = "seed not positive at x=" + std::to_string(x);
        }
        const double hpp = seed.h.second_derivative(x);
        const double resid = 0.5 * hpp - spec.killing(x) * hx - seed.lambda * hx;
        const double scale = std::abs(0.5 * hpp) + std::abs(spec.killing(x) * hx) +
                             std::abs(seed.lambda * hx) + 1.0;
        rep.max_ode_residual = std::max(rep.max_ode_residual, std::abs(resid) / scale);
    }
    double span = 1.0;
    if (spec.interval.left_finite() && spec.interval.right_finite())
        span = spec.interval.right - spec.interval.left;
    rep.boundary_ok = boundary_condition_holds(spec, seed, Side::Left, span) &&
                      boundary_condition_holds(spec, seed, Side::Right, span);
    return rep;
}

}  // namespace darboux
