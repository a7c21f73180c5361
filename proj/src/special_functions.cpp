#include "darboux/special_functions.hpp"

#include <cmath>
#include <stdexcept>

namespace darboux {

namespace {
constexpr double kInvSqrt2 = 0.7071067811865475244;
constexpr double kInvSqrt2Pi = 0.3989422804014326779;
}  // namespace

double normal_cdf(double x) { return 0.5 * std::erfc(-x * kInvSqrt2); }

double normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double bm_kernel(double t, double d) {
    return std::exp(-0.5 * d * d / t) * kInvSqrt2Pi / std::sqrt(t);
}

double hermite_poly(int n, double x) {
    if (n < 0) throw std::invalid_argument("hermite_poly: n must be >= 0");
    double hm = 1.0;  // H_0
    if (n == 0) return hm;
    double h = 2.0 * x;  // H_1
    for (int k = 1; k < n; ++k) {
        const double next = 2.0 * x * h - 2.0 * k * hm;
        hm = h;
        h = next;
    }
    return h;
}

}  // namespace darboux
