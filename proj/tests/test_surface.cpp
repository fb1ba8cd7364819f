#include "logsurf/fixtures.hpp"
#include "logsurf/surface.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace logsurf;
namespace fx = logsurf::fixtures;

namespace {

bool has_violation(const CurveConfig& c, ViolationKind kind) {
  const auto v = validate_config(c);
  return std::any_of(v.begin(), v.end(), [&](const Violation& x) { return x.kind == kind; });
}

CurveId id_of(const CurveConfig& c, const char* name) { return c.resolve(name); }

}  // namespace

TEST_CASE("fixture shapes") {
  const auto e1 = fx::e1();
  REQUIRE(e1.curves.size() == 3);
  CHECK(e1.curve(1).self_intersection == -1);
  CHECK(e1.curve(2).self_intersection == -1);
  CHECK(e1.curve(3) == Curve{3, 0, -1, Rat(1), "E1"});
  CHECK(pairing(e1, 1, 3) == 1);
  CHECK(pairing(e1, 2, 3) == 1);

  const auto e2 = fx::e2();
  CHECK(e2.curve(3).self_intersection == -2);
  CHECK(e2.curve(4) == Curve{4, 0, -1, Rat(0), "E2"});
  CHECK(e2.points.size() == 3);
  CHECK(e2.point(4).incident == std::vector<CurveId>{3, 4});
}

TEST_CASE("validate_config") {
  CHECK(validate_config(fx::a1()).empty());
  CHECK(validate_config(fx::e2()).empty());

  auto triple = fx::corner();
  triple.curves.push_back(Curve{3, 0, -1, Rat(0), "X"});
  triple.points[0].incident = {1, 2, 3};
  CHECK(has_violation(triple, ViolationKind::TriplePoint));

  auto bad_coeff = fx::a1();
  bad_coeff.curves[0].boundary_coeff = Rat(3, 2);
  CHECK(has_violation(bad_coeff, ViolationKind::BadCoefficient));

  auto dangling = fx::corner();
  dangling.points[0].incident = {1, 9};
  CHECK(has_violation(dangling, ViolationKind::DanglingId));

  auto duplicate = fx::corner();
  duplicate.curves[1].id = 1;
  CHECK(has_violation(duplicate, ViolationKind::DuplicateId));

  auto self_cross = fx::corner();
  self_cross.points[0].incident = {1, 1};
  CHECK(has_violation(self_cross, ViolationKind::BadIncidence));
}

TEST_CASE("pairing and canonical degree") {
  const auto corner = fx::corner();
  const auto e2 = fx::e2();
  CHECK(pairing(corner, 1, 2) == 1);
  CHECK(pairing(e2, id_of(e2, "D1"), id_of(e2, "D2")) == 0);
  CHECK(pairing(e2, id_of(e2, "E1"), id_of(e2, "E1")) == -2);
  CHECK_THROWS_AS(pairing(e2, 1, 99), Error);

  CHECK(canonical_degree(fx::a1(), 1) == 0);
  CHECK(canonical_degree(e2, id_of(e2, "E2")) == -1);
  CHECK(canonical_degree(fx::elliptic(), 1) == 1);
}

TEST_CASE("blow_up examples") {
  CHECK(blow_up(fx::corner(), AtPoint{1}, Rat(1)) == fx::e1());
  CHECK(blow_up(fx::e1(), FreePointOn{3}, Rat(0)) == fx::e2());

  const auto generic = blow_up(fx::a1(), GenericPoint{}, Rat(0));
  REQUIRE(generic.curves.size() == 2);
  CHECK(generic.curves[0] == fx::a1().curves[0]);
  CHECK(generic.curves[1].self_intersection == -1);
  CHECK(generic.points.empty());

  CHECK_THROWS_AS(blow_up(fx::corner(), AtPoint{7}, Rat(0)), Error);
  CHECK_THROWS_AS(blow_up(fx::corner(), FreePointOn{7}, Rat(0)), Error);
  CHECK_THROWS_AS(blow_up(fx::corner(), GenericPoint{}, Rat(2)), Error);
}

TEST_CASE("blow_up at a marked smooth point consumes the mark") {
  auto c = fx::a1();
  c.points.push_back(CrossingPoint{1, {1}});
  const auto b = blow_up(c, AtPoint{1}, Rat(1, 2));
  CHECK(b.curve(1).self_intersection == -3);
  REQUIRE(b.points.size() == 1);
  CHECK(b.points[0].incident == std::vector<CurveId>{1, 2});
}

TEST_CASE("connected components and gram") {
  const auto e2 = fx::e2();
  CHECK(connected_components(e2, {3, 4}) == std::vector<CurveSet>{{3, 4}});
  CHECK(connected_components(e2, {1, 4}) == std::vector<CurveSet>{{1}, {4}});
  CHECK(connected_components(e2, {}).empty());

  const std::vector<CurveId> e1e2{3, 4};
  Matrix<int> expected(2, 2);
  expected << -2, 1, 1, -1;
  CHECK(gram<int>(e2, e1e2) == expected);
  CHECK(gram<int>(fx::a1(), CurveSet{1}) == Matrix<int>::Constant(1, 1, -2));
  expected << -1, 0, 0, -1;
  CHECK(gram<int>(e2, CurveSet{1, 4}) == expected);
}

TEST_CASE("smooth_point_blowdown examples") {
  const auto e2 = fx::e2();
  const auto run = smooth_point_blowdown(e2, {3, 4});
  REQUIRE(run.smooth_point());
  CHECK(run.run.order == std::vector<CurveId>{4, 3});
  CHECK(run.final_local.alive_outer() == std::vector<CurveId>{1, 2});
  CHECK(run.final_local.crossings(1, 2) == 1);
  CHECK(run.final_local.entry(1).coeff == 1);
  CHECK(run.final_local.entry(2).coeff == 1);
  // D1, D2 regain their original self-intersection 0.
  CHECK(run.final_local.self_intersection(1) == 0);

  const auto a1 = smooth_point_blowdown(fx::a1(), {1});
  CHECK_FALSE(a1.smooth_point());
  CHECK(a1.run.failure == BlowdownFailure::NoMinusOne);

  const auto ell = smooth_point_blowdown(fx::elliptic(), {1});
  CHECK(ell.run.failure == BlowdownFailure::NoMinusOne);

  CHECK_THROWS_AS(smooth_point_blowdown(fx::corner(), {1}), Error);  // 0-curve is not contractible
}

TEST_CASE("smooth_point_blowdown refuses images with a triple point") {
  // A (-1)-curve meeting three curves.
  CurveConfig c;
  c.curves = {Curve{1, 0, -1, Rat(0), "E"}, Curve{2, 0, 0, Rat(1), "A"}, Curve{3, 0, 0, Rat(1), "B"},
              Curve{4, 0, 0, Rat(1), "C"}};
  c.points = {CrossingPoint{1, {1, 2}}, CrossingPoint{2, {1, 3}}, CrossingPoint{3, {1, 4}}};
  CHECK(smooth_point_blowdown(c, {1}).run.failure == BlowdownFailure::NonSNCContraction);

  // A (-1)-curve meeting one curve twice.
  CurveConfig twice;
  twice.curves = {Curve{1, 0, -1, Rat(0), "E"}, Curve{2, 0, 0, Rat(1), "A"}};
  twice.points = {CrossingPoint{1, {1, 2}}, CrossingPoint{2, {1, 2}}};
  CHECK(smooth_point_blowdown(twice, {1}).run.failure == BlowdownFailure::NonSNCContraction);
}

namespace {

// Random valid blow-up sequence over the generator templates.
CurveConfig random_tower(std::mt19937_64& rng, int length, std::vector<CurveConfig>* prefixes = nullptr) {
  const auto templates = fx::generator_templates();
  CurveConfig c = templates[rng() % templates.size()];
  if (prefixes) prefixes->push_back(c);
  const std::vector<Rat> palette{Rat(0), Rat(1, 2), Rat(1)};
  for (int k = 0; k < length; ++k) {
    std::vector<BlowUpTarget> targets{GenericPoint{}};
    for (const auto& p : c.points) targets.push_back(AtPoint{p.id});
    for (CurveId id : c.curve_ids()) targets.push_back(FreePointOn{id});
    c = blow_up(c, targets[rng() % targets.size()], palette[rng() % palette.size()]);
    if (prefixes) prefixes->push_back(c);
  }
  return c;
}

}  // namespace

TEST_CASE("blow-ups keep configurations valid and update pairings locally") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const auto c = random_tower(rng, static_cast<int>(rng() % 8));
    REQUIRE(validate_config(c).empty());
    for (const auto& p : c.points) {
      if (p.incident.size() != 2) continue;
      const auto b = blow_up(c, AtPoint{p.id}, Rat(0));
      const CurveId e = c.next_curve_id();
      const CurveId k = p.incident[0];
      const CurveId l = p.incident[1];
      CHECK(pairing(b, e, k) == 1);
      CHECK(pairing(b, e, l) == 1);
      CHECK(pairing(b, k, l) == pairing(c, k, l) - 1);
      for (CurveId x : c.curve_ids())
        for (CurveId y : c.curve_ids())
          if (x != y && !((x == k && y == l) || (x == l && y == k))) CHECK(pairing(b, x, y) == pairing(c, x, y));
    }
  }
}

TEST_CASE("smooth_point_blowdown success implies unimodular Gram and is order independent") {
  std::mt19937_64 rng(99);
  int successes = 0;
  int checked = 0;
  for (int trial = 0; trial < 400; ++trial) {
    std::vector<CurveConfig> prefixes;
    const auto c = random_tower(rng, 1 + static_cast<int>(rng() % 6), &prefixes);
    CurveSet exceptional;
    for (CurveId id : c.curve_ids())
      if (!prefixes.front().has_curve(id)) exceptional.insert(id);
    for (const auto& gamma : connected_components(c, exceptional)) {
      if (gamma.size() > 4 || gamma.empty()) continue;
      if (!is_negative_definite(gram<Rat>(c, gamma))) continue;
      ++checked;
      const bool lowest = smooth_point_blowdown(c, gamma).smooth_point();
      if (lowest) {
        ++successes;
        const Rat det = determinant(gram<Rat>(c, gamma));
        CHECK((det == 1 || det == -1));
      }
      // Exhaustive enumeration: either every order completes or none does.
      const auto outcomes = oracle::contraction_outcomes(c, gamma);
      CHECK(lowest == (outcomes.completed > 0));
      CHECK((outcomes.completed == 0 || outcomes.dead_ends == 0));
      const auto highest = smooth_point_blowdown(c, gamma, [](std::span<const CurveId> ids) { return ids.back(); });
      CHECK(highest.smooth_point() == lowest);
    }
  }
  CHECK(checked > 100);
  CHECK(successes > 20);
}
