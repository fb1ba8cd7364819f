#include "logsurf/fixtures.hpp"

namespace logsurf::fixtures {

namespace {

CurveConfig single(int genus, int self_intersection, Rat coeff) {
  CurveConfig c;
  c.curves.push_back(Curve{1, genus, self_intersection, std::move(coeff), "C1"});
  return c;
}

}  // namespace

CurveConfig a1() { return single(0, -2, Rat(0)); }
CurveConfig a1_half() { return single(0, -2, Rat(1, 2)); }
CurveConfig elliptic() { return single(1, -1, Rat(0)); }

CurveConfig chain() {
  CurveConfig c;
  c.curves.push_back(Curve{1, 0, -2, Rat(0), "C1"});
  c.curves.push_back(Curve{2, 0, -2, Rat(0), "C2"});
  c.points.push_back(CrossingPoint{1, {1, 2}});
  return c;
}

CurveConfig corner() {
  CurveConfig c;
  c.curves.push_back(Curve{1, 0, 0, Rat(1), "D1"});
  c.curves.push_back(Curve{2, 0, 0, Rat(1), "D2"});
  c.points.push_back(CrossingPoint{1, {1, 2}});
  return c;
}

CurveConfig e1() { return blow_up(corner(), AtPoint{1}, Rat(1)); }

CurveConfig e2() { return blow_up(e1(), FreePointOn{3}, Rat(0)); }

CurveConfig boundary_chain(const std::vector<Rat>& coeffs, const std::vector<int>& self_intersections) {
  if (coeffs.size() != self_intersections.size())
    throw Error(Errc::InvalidState, "chain needs one self-intersection per coefficient");
  CurveConfig c;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    const auto id = static_cast<CurveId>(k + 1);
    c.curves.push_back(Curve{id, 0, self_intersections[k], coeffs[k], "B" + std::to_string(id)});
    if (k > 0) c.points.push_back(CrossingPoint{static_cast<PointId>(k), {id - 1, id}});
  }
  return c;
}

std::vector<CurveConfig> generator_templates() {
  return {
      corner(),
      boundary_chain({Rat(1), Rat(1), Rat(1)}, {0, -1, 0}),
      boundary_chain({Rat(1), Rat(1, 2), Rat(1)}, {1, -2, 1}),
      boundary_chain({Rat(1), Rat(0), Rat(1), Rat(1)}, {0, -1, -2, 0}),
      boundary_chain({Rat(1, 2), Rat(1, 2), Rat(2, 3), Rat(1)}, {-1, -1, 0, 0}),
  };
}

}  // namespace logsurf::fixtures
