#pragma once

// Test-only oracles.  None of these call into the library's decision
// procedures they are used to check: negative definiteness is re-derived from
// Leibniz determinants, smooth contractibility from an exhaustive search over
// contraction orders, and log terminality from an explicit enumeration of
// short blow-up towers.

#include "logsurf/crepant.hpp"
#include "logsurf/decompose.hpp"
#include "logsurf/fixtures.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using logsurf::CurveConfig;
using logsurf::CurveId;
using logsurf::CurveSet;
using logsurf::Rat;

// ---------------------------------------------------------------------------
// Negative definiteness

inline long long leibniz_det(const std::vector<std::vector<long long>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  long long total = 0;
  do {
    long long term = 1;
    for (std::size_t i = 0; i < n && term != 0; ++i) term *= m[i][perm[i]];
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    total += (inversions % 2 ? -term : term);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

/// Every principal minor of order k has sign (-1)^k, and v^T M v < 0 on the
/// nonzero lattice points of {-1,0,1}^n.
inline bool brute_negative_definite(const std::vector<std::vector<long long>>& m) {
  const std::size_t n = m.size();
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) idx.push_back(i);
    std::vector<std::vector<long long>> sub(idx.size(), std::vector<long long>(idx.size()));
    for (std::size_t a = 0; a < idx.size(); ++a)
      for (std::size_t b = 0; b < idx.size(); ++b) sub[a][b] = m[idx[a]][idx[b]];
    const long long det = leibniz_det(sub);
    const bool want_negative = idx.size() % 2 == 1;
    if (det == 0 || (det < 0) != want_negative) return false;
  }
  std::vector<int> v(n, -1);
  for (;;) {
    bool nonzero = std::any_of(v.begin(), v.end(), [](int x) { return x != 0; });
    if (nonzero) {
      long long q = 0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) q += v[i] * m[i][j] * v[j];
      if (q >= 0) return false;
    }
    std::size_t k = 0;
    while (k < n && v[k] == 1) v[k++] = -1;
    if (k == n) break;
    ++v[k];
  }
  return true;
}

// ---------------------------------------------------------------------------
// Exhaustive smooth contraction of a curve set

struct LocalCurve {
  CurveId id;
  int genus;
  int square;
  Rat coeff;
  bool inner;
};

struct LocalPicture {
  std::vector<LocalCurve> curves;
  std::vector<std::vector<int>> meet;
  std::vector<bool> alive;
};

inline LocalPicture local_picture(const CurveConfig& c, const CurveSet& gamma) {
  LocalPicture pic;
  std::map<CurveId, std::size_t> slot;
  auto add = [&](CurveId id, bool inner) {
    if (slot.count(id)) return;
    const auto& curve = c.curve(id);
    slot[id] = pic.curves.size();
    pic.curves.push_back({id, curve.genus, curve.self_intersection, curve.boundary_coeff, inner});
  };
  for (CurveId id : gamma) add(id, true);
  for (const auto& p : c.points) {
    if (p.incident.size() != 2) continue;
    if (gamma.count(p.incident[0])) add(p.incident[1], gamma.count(p.incident[1]) > 0);
    if (gamma.count(p.incident[1])) add(p.incident[0], gamma.count(p.incident[0]) > 0);
  }
  const std::size_t n = pic.curves.size();
  pic.meet.assign(n, std::vector<int>(n, 0));
  pic.alive.assign(n, true);
  for (const auto& p : c.points) {
    if (p.incident.size() != 2) continue;
    const CurveId a = p.incident[0];
    const CurveId b = p.incident[1];
    if (!gamma.count(a) && !gamma.count(b)) continue;
    pic.meet[slot[a]][slot[b]]++;
    pic.meet[slot[b]][slot[a]]++;
  }
  return pic;
}

/// Every order of contracting the inner curves, one SNC-preserving
/// (-1)-curve at a time.  Completed orders land in `finals`; orders that get
/// stuck with inner curves left are counted in `dead_ends`.
inline void all_contractions(const LocalPicture& pic, std::vector<LocalPicture>& finals, int& dead_ends) {
  const std::size_t n = pic.curves.size();
  bool inner_left = false;
  bool moved = false;
  for (std::size_t e = 0; e < n; ++e) {
    if (!pic.alive[e] || !pic.curves[e].inner) continue;
    inner_left = true;
    if (pic.curves[e].genus != 0 || pic.curves[e].square != -1) continue;
    int partners = 0;
    bool transverse = true;
    for (std::size_t b = 0; b < n; ++b) {
      if (b == e || !pic.alive[b] || pic.meet[e][b] == 0) continue;
      ++partners;
      if (pic.meet[e][b] != 1) transverse = false;
    }
    if (partners > 2 || !transverse) continue;
    moved = true;
    LocalPicture next = pic;
    for (std::size_t a = 0; a < n; ++a) {
      if (a == e || !next.alive[a]) continue;
      next.curves[a].square += pic.meet[a][e] * pic.meet[a][e];
      for (std::size_t b = 0; b < n; ++b)
        if (b != a && b != e && next.alive[b]) next.meet[a][b] += pic.meet[a][e] * pic.meet[b][e];
    }
    next.alive[e] = false;
    for (std::size_t a = 0; a < n; ++a) next.meet[a][e] = next.meet[e][a] = 0;
    all_contractions(next, finals, dead_ends);
  }
  if (!inner_left) finals.push_back(pic);
  else if (!moved) ++dead_ends;
}

struct ContractionOutcomes {
  int completed = 0;
  int dead_ends = 0;
};

inline ContractionOutcomes contraction_outcomes(const CurveConfig& c, const CurveSet& gamma) {
  std::vector<LocalPicture> finals;
  ContractionOutcomes out;
  all_contractions(local_picture(c, gamma), finals, out.dead_ends);
  out.completed = static_cast<int>(finals.size());
  return out;
}

inline bool contracts_to_smooth_point(const CurveConfig& c, const CurveSet& gamma) {
  return contraction_outcomes(c, gamma).completed > 0;
}

/// Lemma-1 shape at the image of gamma: smooth point where exactly two
/// coefficient-1 branches cross once.
inline bool contracts_to_boundary_corner(const CurveConfig& c, const CurveSet& gamma) {
  std::vector<LocalPicture> finals;
  int dead_ends = 0;
  all_contractions(local_picture(c, gamma), finals, dead_ends);
  for (const auto& pic : finals) {
    std::vector<std::size_t> outer;
    for (std::size_t k = 0; k < pic.curves.size(); ++k)
      if (pic.alive[k]) outer.push_back(k);
    if (outer.size() == 2 && pic.curves[outer[0]].coeff == 1 && pic.curves[outer[1]].coeff == 1 &&
        pic.meet[outer[0]][outer[1]] == 1)
      return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Depth-limited valuation oracle

struct ValuationViolation {
  Rat coefficient;
  std::string center;
};

namespace detail {

struct TowerCurve {
  Rat e;
  int y_point;    // crossing of Y it lies over, or -1
  int y_curve;    // curve of Y it lies over (free point), or -1
  bool generic;   // over a point of Y on no marked curve
};

struct TowerPoint {
  std::size_t a;
  std::size_t b;
  int y_point;  // the crossing of Y itself, or -1 once an exceptional curve passes
};

struct Tower {
  std::vector<TowerCurve> curves;       // Y curves first
  std::vector<TowerPoint> crossings;    // current crossings
};

}  // namespace detail

/// Enumerates every sequence of at most `depth` blow-ups (at crossings, at a
/// free point of any curve, or at a point off all curves) over the master
/// model and reports each exceptional valuation with discrepancy <= -1 whose
/// center on X(S) does not have the Lemma-1 shape.
inline std::vector<ValuationViolation> depth_limited_violations(const logsurf::SurfaceState& state, int depth) {
  using detail::Tower;
  using detail::TowerCurve;
  const auto& c = state.config;
  const auto e = logsurf::crepant_pullback(state);
  const auto components = logsurf::connected_components(c, state.contracted);
  std::map<CurveId, std::size_t> component_of;
  for (std::size_t k = 0; k < components.size(); ++k)
    for (CurveId id : components[k]) component_of[id] = k;
  std::map<std::size_t, bool> corner_cache;

  Tower root;
  const std::vector<CurveId> ids = c.curve_ids();
  std::map<CurveId, std::size_t> index;
  for (CurveId id : ids) {
    index[id] = root.curves.size();
    root.curves.push_back({e.coefficient(id), -1, static_cast<int>(id), false});
  }
  for (const auto& p : c.points)
    if (p.incident.size() == 2) root.crossings.push_back({index[p.incident[0]], index[p.incident[1]], p.id});

  std::vector<ValuationViolation> out;

  auto check_center = [&](const TowerCurve& v) {
    if (v.e > 1) {
      out.push_back({v.e, "discrepancy below -1"});
      return;
    }
    if (v.generic) {
      out.push_back({v.e, "point off the boundary"});
      return;
    }
    const std::vector<CurveId> through =
        v.y_point >= 0 ? c.point(v.y_point).incident : std::vector<CurveId>{static_cast<CurveId>(v.y_curve)};
    for (CurveId id : through) {
      if (!state.contracted.count(id)) continue;
      const std::size_t comp = component_of[id];
      if (!corner_cache.count(comp)) corner_cache[comp] = contracts_to_boundary_corner(c, components[comp]);
      if (!corner_cache[comp]) out.push_back({v.e, "image of the component containing " + c.label(id)});
      return;
    }
    const bool corner = through.size() == 2 && e.coefficient(through[0]) == 1 && e.coefficient(through[1]) == 1;
    if (!corner) out.push_back({v.e, "smooth point on " + c.label(through[0])});
  };

  std::function<void(const Tower&, int)> explore = [&](const Tower& t, int left) {
    if (left == 0) return;
    const auto descend = [&](Tower next, const TowerCurve& fresh) {
      if (fresh.e >= 1) check_center(fresh);
      next.curves.push_back(fresh);
      explore(next, left - 1);
    };
    for (std::size_t k = 0; k < t.crossings.size(); ++k) {
      const auto& x = t.crossings[k];
      TowerCurve fresh{t.curves[x.a].e + t.curves[x.b].e - 1, x.y_point, -1, false};
      if (x.y_point < 0) {
        const auto& src = x.a >= ids.size() ? t.curves[x.a] : t.curves[x.b];
        fresh.y_point = src.y_point;
        fresh.y_curve = src.y_curve;
        fresh.generic = src.generic;
      }
      Tower next = t;
      const std::size_t created = next.curves.size();
      next.crossings.erase(next.crossings.begin() + static_cast<long>(k));
      next.crossings.push_back({x.a, created, -1});
      next.crossings.push_back({x.b, created, -1});
      descend(std::move(next), fresh);
    }
    for (std::size_t k = 0; k < t.curves.size(); ++k) {
      TowerCurve fresh = t.curves[k];
      fresh.e = t.curves[k].e - 1;
      if (k < ids.size()) {
        fresh.y_point = -1;
        fresh.y_curve = static_cast<int>(ids[k]);
      }
      Tower next = t;
      next.crossings.push_back({k, next.curves.size(), -1});
      descend(std::move(next), fresh);
    }
    descend(t, TowerCurve{Rat(-1), -1, -1, true});
  };
  explore(root, depth);
  return out;
}

// ---------------------------------------------------------------------------
// Random inputs

/// A random configuration built by blow-ups over a generator template, with
/// a random subset of the exceptional curves contracted.  Coefficients are
/// crepant with probability `crepant_bias`, otherwise drawn from a small set.
inline logsurf::SurfaceState random_state(std::mt19937_64& rng, int max_depth = 10, double crepant_bias = 0.7) {
  const auto templates = logsurf::fixtures::generator_templates();
  CurveConfig c = templates[std::uniform_int_distribution<std::size_t>(0, templates.size() - 1)(rng)];
  const int depth = std::uniform_int_distribution<int>(0, max_depth)(rng);
  const std::vector<Rat> palette{Rat(0), Rat(1, 3), Rat(1, 2), Rat(2, 3), Rat(1)};
  CurveSet created;
  for (int step = 0; step < depth; ++step) {
    std::vector<logsurf::BlowUpTarget> targets;
    for (const auto& p : c.points) targets.push_back(logsurf::AtPoint{p.id});
    for (CurveId id : c.curve_ids()) targets.push_back(logsurf::FreePointOn{id});
    const auto& where = targets[std::uniform_int_distribution<std::size_t>(0, targets.size() - 1)(rng)];
    Rat coeff = palette[std::uniform_int_distribution<std::size_t>(0, palette.size() - 1)(rng)];
    if (std::bernoulli_distribution(crepant_bias)(rng)) {
      Rat sum = -1;
      if (const auto* at = std::get_if<logsurf::AtPoint>(&where))
        for (CurveId id : c.point(at->point).incident) sum += c.curve(id).boundary_coeff;
      else
        sum += c.curve(std::get<logsurf::FreePointOn>(where).curve).boundary_coeff;
      coeff = std::clamp(sum, Rat(0), Rat(1));
    }
    created.insert(c.next_curve_id());
    c = logsurf::blow_up(c, where, coeff);
  }
  CurveSet contracted;
  for (CurveId id : created)
    if (std::bernoulli_distribution(0.6)(rng)) contracted.insert(id);
  return {c, contracted, logsurf::PointBase{}};
}

// ---------------------------------------------------------------------------
// Choice-order exploration

struct OrderOutcomes {
  std::size_t leaves = 0;
  std::size_t stuck = 0;           // no candidate before reaching the target
  std::set<std::pair<int, int>> kind_counts;  // (flops, blow-downs) per leaf
};

namespace detail {

inline void explore_orders(const logsurf::SurfaceState& state, const CurveSet& target, int flops, int blowdowns,
                           OrderOutcomes& out) {
  if (state.contracted == target) {
    ++out.leaves;
    out.kind_counts.insert({flops, blowdowns});
    return;
  }
  std::vector<CurveId> open;
  for (CurveId i : target)
    if (!state.contracted.count(i)) open.push_back(i);

  bool phase_one = false, any = false;
  for (CurveId i : open) {
    if (state.config.curve(i).boundary_coeff >= 1) continue;
    phase_one = true;
    if (logsurf::is_log_flopping(state, i)) {
      any = true;
      explore_orders(logsurf::contract_flop(state, i), target, flops + 1, blowdowns, out);
    }
  }
  if (!phase_one) {
    for (CurveId j : open)
      if (logsurf::is_log_blowdown(state, j)) {
        any = true;
        explore_orders(logsurf::contract_blowdown(state, j), target, flops, blowdowns + 1, out);
      }
  }
  if (!any) {
    ++out.leaves;
    ++out.stuck;
  }
}

}  // namespace detail

/// Every choice order of the two-phase decomposition: any log-flopping
/// candidate first, then any log blow-down.
inline OrderOutcomes all_decomposition_orders(const logsurf::MorphismSpec& m) {
  OrderOutcomes out;
  detail::explore_orders({m.config, m.source, logsurf::TargetBase{m.target}}, m.target, 0, 0, out);
  return out;
}

}  // namespace oracle
