#pragma once

#include "darboux/scalar_field.hpp"

namespace darboux {

// Fundamental solutions of L f = mu f: psi increasing, phi decreasing,
// both positive, with omega = Wr[phi, psi]/s' (independent of x).
struct FundamentalPair {
    ScalarField psi;
    ScalarField phi;
    double omega = 0.0;
    double mu = 0.0;
};

// Green's function omega^{-1} psi(min) phi(max); symmetric in (x, y).
double greens_from_fundamental(const FundamentalPair& pair, double x, double y);

// omega from the Wronskian at a reference point, Wr[phi,psi]/s'(x_ref).
double wronskian_omega(const ScalarField& psi, const ScalarField& phi, double s_prime_ref,
                       double x_ref);

}  // namespace darboux
