#pragma once

#include "monogamy/marginals.hpp"

namespace monogamy::scenarios {

/// Three binary observables X, Y, Z with perfectly anticorrelated pairs.
MarginalScenario triangle_anticorrelation();

/// Acyclic chain X - Y - Z (Z ternary).
MarginalScenario path();

/// A1, A2 at 0 and pi/2, B1, B2 at pi/4 and -pi/4 in the x-z plane, measured
/// on v |singlet><singlet| + (1 - v) 1/4. CHSH value 2 sqrt(2) v.
MarginalScenario chsh(double visibility);

}  // namespace monogamy::scenarios
