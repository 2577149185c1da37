#pragma once

#include <vector>

#include "phm/fstruct.hpp"
#include "phm/maps.hpp"
#include "phm/random.hpp"

namespace phm {

/// φ(x1, x2) = (x1 + i x2, x1 + i x2, x1 + i x2): R² → C³.
SmoothMap example1();
/// φ(x1, ..., x4) = (i(x1 + x2) + x3 + x4, i(x1 + x2) + x3 + x4): R⁴ → C².
SmoothMap example2();

/// Flat-domain cases built from the two examples and `composites` random
/// holomorphic composites of each, plus two curved-domain cases: a warped
/// product on which φ = x1 + i x2 is harmonic, and one on which it is not.
std::vector<SuiteCase> standard_theorem_suite(Rng& rng, int composites, int points);

/// φ = (z, z) into C² with h_{11̄} = 1 + re z², which is not Kähler, but
/// flagged as Kähler. F^φ is parallel while φ is not harmonic.
SuiteCase forged_kaehler_control(Rng& rng, int points);

}  // namespace phm
