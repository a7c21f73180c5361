#include "darboux/greens.hpp"

#include <algorithm>
#include <cmath>

#include "darboux/errors.hpp"
#include "darboux/finite_diff.hpp"

namespace darboux {

double greens_from_fundamental(const FundamentalPair& pair, double x, double y) {
    if (std::abs(pair.omega) < 1e-12) {
        throw DegenerateWronskian("greens_from_fundamental: |omega| below 1e-12");
    }
    const double lo = std::min(x, y);
    const double hi = std::max(x, y);
    return pair.psi(lo) * pair.phi(hi) / pair.omega;
}

double wronskian_omega(const ScalarField& psi, const ScalarField& phi, double s_prime_ref,
                       double x_ref) {
    return wronskian_num(phi, psi, x_ref) / s_prime_ref;
}

}  // namespace darboux
