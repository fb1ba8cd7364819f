#pragma once

// Small reference configurations and the templates used to seed generated
// crepant pairs.

#include "logsurf/surface.hpp"

#include <vector>

namespace logsurf::fixtures {

CurveConfig a1();      // one (-2)-curve, coefficient 0
CurveConfig a1_half(); // one (-2)-curve, coefficient 1/2
CurveConfig elliptic();// genus 1 (-1)-curve
CurveConfig chain();   // C1 - C2, both (-2), coefficient 0
CurveConfig corner();  // D1 - D2, both 0-curves of coefficient 1, crossing at point 1
CurveConfig e1();      // corner blown up at its crossing, new coefficient 1
CurveConfig e2();      // e1 blown up at a free point of E1, new coefficient 0

/// Chain of rational curves with the given coefficients and self-intersections;
/// consecutive curves cross once.  Names are B1, B2, ...
CurveConfig boundary_chain(const std::vector<Rat>& coeffs, const std::vector<int>& self_intersections);

/// Templates used by the generated-pair suites.
std::vector<CurveConfig> generator_templates();

}  // namespace logsurf::fixtures
