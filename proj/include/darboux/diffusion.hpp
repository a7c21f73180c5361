#pragma once

#include <optional>

#include "darboux/scalar_field.hpp"

namespace darboux {

// Condition imposed at a non-singular boundary point. The elastic
// parameter is the ratio in h'(l+) = gamma h(l+) (natural-scale form);
// NotApplicable marks boundaries that are not non-singular.
struct BoundaryCondition {
    enum class Kind { Killing, Reflecting, Elastic, NotApplicable };
    Kind kind = Kind::NotApplicable;
    double elastic_param = 0.0;

    static BoundaryCondition killing() { return {Kind::Killing, 0.0}; }
    static BoundaryCondition reflecting() { return {Kind::Reflecting, 0.0}; }
    static BoundaryCondition elastic(double gamma);
    static BoundaryCondition none() { return {}; }

    bool operator==(const BoundaryCondition&) const = default;
};

// A one-dimensional diffusion with generator
//   (1/2) sigma^2 f'' + b f' - c f
// on an open interval, killed at rate c >= 0.
//
// speed_normalization fixes the free constant in the scale/speed pair:
// s' = N^{-1} e^{-B}, m' = N * 2 sigma^{-2} e^{B}. The product s'm' and all
// densities taken with respect to Lebesgue measure do not depend on N.
// N = 1/2 gives the convention used for killed Brownian motion throughout
// the catalog (m' = 1, s' = 2).
struct DiffusionSpec {
    Interval interval;
    ScalarField drift;       // b
    ScalarField sigma;       // > 0
    ScalarField killing;     // c >= 0
    BoundaryCondition left_bc;
    BoundaryCondition right_bc;
    double speed_normalization = 1.0;

    static constexpr double kKilledBmNormalization = 0.5;

    // Brownian motion on `iv` killed at rate c, catalog normalization.
    static DiffusionSpec killed_bm(ScalarField c, Interval iv,
                                   BoundaryCondition left = BoundaryCondition::none(),
                                   BoundaryCondition right = BoundaryCondition::none());
};

struct ScaleSpeedKilling {
    ScalarField s_prime;
    ScalarField m_prime;
    ScalarField k_prime;
};

// Scale/speed/killing densities. B is anchored to 0 at the interval's
// reference point, so s and m are determined up to the normalization
// held in the spec.
ScaleSpeedKilling scale_speed_killing(const DiffusionSpec& spec);

enum class BoundaryClass { Natural, ExitNotEntrance, EntranceNotExit, NonSingular };

enum class Side { Left, Right };

// Feller classification of one boundary, decided by L1 probes of the
// R and Q integrands on windows shrinking toward the boundary. Throws
// Inconclusive when neither convergence nor divergence can be
// established within the ladder budget.
BoundaryClass classify_boundary(const DiffusionSpec& spec, Side side, double z);

// Simplified tests valid for killed Brownian motion at a finite boundary:
// exit iff c(y)|y-l| is integrable, entrance iff c(y) is.
BoundaryClass classify_boundary_killed_bm(const DiffusionSpec& spec, Side side, double z);

const char* to_string(BoundaryClass c);

}  // namespace darboux
