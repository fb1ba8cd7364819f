#include "logsurf/surface.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <numeric>

namespace logsurf {

bool CurveConfig::has_curve(CurveId id) const {
  return std::any_of(curves.begin(), curves.end(), [id](const Curve& c) { return c.id == id; });
}

bool CurveConfig::has_point(PointId id) const {
  return std::any_of(points.begin(), points.end(), [id](const CrossingPoint& p) { return p.id == id; });
}

const Curve& CurveConfig::curve(CurveId id) const {
  for (const auto& c : curves)
    if (c.id == id) return c;
  throw Error(Errc::UnknownId, "no curve with id " + std::to_string(id));
}

Curve& CurveConfig::curve(CurveId id) {
  return const_cast<Curve&>(std::as_const(*this).curve(id));
}

const CrossingPoint& CurveConfig::point(PointId id) const {
  for (const auto& p : points)
    if (p.id == id) return p;
  throw Error(Errc::UnknownId, "no point with id " + std::to_string(id));
}

CurveId CurveConfig::resolve(std::string_view name_or_id) const {
  for (const auto& c : curves)
    if (!c.name.empty() && c.name == name_or_id) return c.id;
  CurveId id = 0;
  const auto* end = name_or_id.data() + name_or_id.size();
  auto [ptr, ec] = std::from_chars(name_or_id.data(), end, id);
  if (ec == std::errc() && ptr == end && has_curve(id)) return id;
  throw Error(Errc::UnknownId, "unknown curve '" + std::string(name_or_id) + "'");
}

std::string CurveConfig::label(CurveId id) const {
  const auto& c = curve(id);
  return c.name.empty() ? std::to_string(id) : c.name;
}

std::vector<CurveId> CurveConfig::curve_ids() const {
  std::vector<CurveId> ids;
  ids.reserve(curves.size());
  for (const auto& c : curves) ids.push_back(c.id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

CurveId CurveConfig::next_curve_id() const {
  CurveId top = 0;
  for (const auto& c : curves) top = std::max(top, c.id);
  return top + 1;
}

PointId CurveConfig::next_point_id() const {
  PointId top = 0;
  for (const auto& p : points) top = std::max(top, p.id);
  return top + 1;
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::TriplePoint: return "TriplePoint";
    case ViolationKind::BadCoefficient: return "BadCoefficient";
    case ViolationKind::DanglingId: return "DanglingId";
    case ViolationKind::DuplicateId: return "DuplicateId";
    case ViolationKind::BadIncidence: return "BadIncidence";
    case ViolationKind::NegativeGenus: return "NegativeGenus";
  }
  return "?";
}

std::vector<Violation> validate_config(const CurveConfig& c) {
  std::vector<Violation> out;
  std::set<CurveId> curve_ids;
  std::set<std::string> names;
  for (const auto& curve : c.curves) {
    if (!curve_ids.insert(curve.id).second)
      out.push_back({ViolationKind::DuplicateId, "curve id " + std::to_string(curve.id) + " repeated"});
    if (!curve.name.empty() && !names.insert(curve.name).second)
      out.push_back({ViolationKind::DuplicateId, "curve name '" + curve.name + "' repeated"});
    if (curve.genus < 0)
      out.push_back({ViolationKind::NegativeGenus, "curve " + std::to_string(curve.id) + " has negative genus"});
    if (curve.boundary_coeff < 0 || curve.boundary_coeff > 1)
      out.push_back({ViolationKind::BadCoefficient, "curve " + std::to_string(curve.id) + " has coefficient " +
                                                        to_display_string(curve.boundary_coeff) +
                                                        " outside [0,1]"});
  }
  std::set<PointId> point_ids;
  for (const auto& p : c.points) {
    const std::string where = "point " + std::to_string(p.id);
    if (!point_ids.insert(p.id).second) out.push_back({ViolationKind::DuplicateId, where + " repeated"});
    if (p.incident.size() >= 3) {
      out.push_back({ViolationKind::TriplePoint, where + " lies on " + std::to_string(p.incident.size()) + " curves"});
    } else if (p.incident.empty()) {
      out.push_back({ViolationKind::BadIncidence, where + " lies on no curve"});
    } else if (p.incident.size() == 2 && p.incident[0] == p.incident[1]) {
      out.push_back({ViolationKind::BadIncidence, where + " is a self-crossing of curve " +
                                                      std::to_string(p.incident[0])});
    }
    for (CurveId id : p.incident)
      if (!curve_ids.count(id))
        out.push_back({ViolationKind::DanglingId, where + " references unknown curve " + std::to_string(id)});
  }
  return out;
}

int pairing(const CurveConfig& c, CurveId i, CurveId j) {
  const auto& ci = c.curve(i);
  c.curve(j);
  if (i == j) return ci.self_intersection;
  int shared = 0;
  for (const auto& p : c.points)
    if (p.incident.size() == 2 &&
        ((p.incident[0] == i && p.incident[1] == j) || (p.incident[0] == j && p.incident[1] == i)))
      ++shared;
  return shared;
}

int canonical_degree(const CurveConfig& c, CurveId i) {
  const auto& curve = c.curve(i);
  return 2 * curve.genus - 2 - curve.self_intersection;
}

namespace {

std::string fresh_exceptional_name(const CurveConfig& c) {
  std::set<std::string> used;
  for (const auto& curve : c.curves) used.insert(curve.name);
  for (int n = 1;; ++n) {
    std::string candidate = "E" + std::to_string(n);
    if (!used.count(candidate)) return candidate;
  }
}

CrossingPoint make_point(PointId id, CurveId a, CurveId b) {
  return {id, {std::min(a, b), std::max(a, b)}};
}

}  // namespace

CurveConfig blow_up(const CurveConfig& c, const BlowUpTarget& target, const Rat& new_coeff) {
  if (new_coeff < 0 || new_coeff > 1)
    throw Error(Errc::BadCoefficient, "new coefficient " + to_display_string(new_coeff) + " outside [0,1]");
  CurveConfig out = c;
  const CurveId e = c.next_curve_id();
  PointId next_point = c.next_point_id();
  std::vector<CurveId> touched;

  if (const auto* at = std::get_if<AtPoint>(&target)) {
    auto it = std::find_if(out.points.begin(), out.points.end(),
                           [&](const CrossingPoint& p) { return p.id == at->point; });
    if (it == out.points.end()) throw Error(Errc::UnknownTarget, "no point with id " + std::to_string(at->point));
    touched = it->incident;
    out.points.erase(it);
  } else if (const auto* free = std::get_if<FreePointOn>(&target)) {
    if (!c.has_curve(free->curve))
      throw Error(Errc::UnknownTarget, "no curve with id " + std::to_string(free->curve));
    touched = {free->curve};
  }

  out.curves.push_back(Curve{e, 0, -1, new_coeff, fresh_exceptional_name(c)});
  for (CurveId k : touched) {
    out.curve(k).self_intersection -= 1;
    out.points.push_back(make_point(next_point++, k, e));
  }
  return out;
}

std::vector<CurveSet> connected_components(const CurveConfig& c, const CurveSet& s) {
  for (CurveId id : s) c.curve(id);
  std::map<CurveId, CurveId> parent;
  for (CurveId id : s) parent[id] = id;
  std::function<CurveId(CurveId)> find = [&](CurveId x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& p : c.points) {
    if (p.incident.size() != 2 || !s.count(p.incident[0]) || !s.count(p.incident[1])) continue;
    const CurveId a = find(p.incident[0]);
    const CurveId b = find(p.incident[1]);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::map<CurveId, CurveSet> groups;
  for (CurveId id : s) groups[find(id)].insert(id);
  std::vector<CurveSet> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  std::sort(out.begin(), out.end(), [](const CurveSet& a, const CurveSet& b) { return *a.begin() < *b.begin(); });
  return out;
}

CurveSet adjacent_curves(const CurveConfig& c, const CurveSet& s) {
  CurveSet out;
  for (const auto& p : c.points) {
    if (p.incident.size() != 2) continue;
    const CurveId a = p.incident[0];
    const CurveId b = p.incident[1];
    if (s.count(a) && !s.count(b)) out.insert(b);
    if (s.count(b) && !s.count(a)) out.insert(a);
  }
  return out;
}

namespace detail {

Matrix<int> intersection_counts(const CurveConfig& c, std::span<const CurveId> ids) {
  const auto n = static_cast<Eigen::Index>(ids.size());
  std::map<CurveId, Eigen::Index> slot;
  Matrix<int> m = Matrix<int>::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    m(k, k) = c.curve(ids[k]).self_intersection;
    slot[ids[k]] = k;
  }
  for (const auto& p : c.points) {
    if (p.incident.size() != 2) continue;
    auto a = slot.find(p.incident[0]);
    auto b = slot.find(p.incident[1]);
    if (a == slot.end() || b == slot.end()) continue;
    m(a->second, b->second) += 1;
    m(b->second, a->second) += 1;
  }
  return m;
}

}  // namespace detail

// ---------------------------------------------------------------------------

LocalBlowdownModel LocalBlowdownModel::around(const CurveConfig& c, const CurveSet& inner) {
  LocalBlowdownModel model;
  const CurveSet outer = adjacent_curves(c, inner);
  std::vector<CurveId> ids(inner.begin(), inner.end());
  ids.insert(ids.end(), outer.begin(), outer.end());
  std::sort(ids.begin(), ids.end());
  for (CurveId id : ids) {
    const auto& curve = c.curve(id);
    model.entries_.push_back({id, curve.genus, curve.self_intersection, curve.boundary_coeff, inner.count(id) > 0});
  }
  const auto n = static_cast<Eigen::Index>(ids.size());
  model.meet_ = Matrix<int>::Zero(n, n);
  for (const auto& p : c.points) {
    if (p.incident.size() != 2) continue;
    const CurveId a = p.incident[0];
    const CurveId b = p.incident[1];
    if (!inner.count(a) && !inner.count(b)) continue;
    const auto ia = static_cast<Eigen::Index>(model.index(a));
    const auto ib = static_cast<Eigen::Index>(model.index(b));
    model.meet_(ia, ib) += 1;
    model.meet_(ib, ia) += 1;
  }
  return model;
}

std::size_t LocalBlowdownModel::index(CurveId id) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), id,
                             [](const Entry& e, CurveId v) { return e.id < v; });
  if (it == entries_.end() || it->id != id)
    throw Error(Errc::UnknownId, "curve " + std::to_string(id) + " is not in the local model");
  return static_cast<std::size_t>(it - entries_.begin());
}

bool LocalBlowdownModel::contains(CurveId id) const {
  return std::any_of(entries_.begin(), entries_.end(), [id](const Entry& e) { return e.id == id; });
}

const LocalBlowdownModel::Entry& LocalBlowdownModel::entry(CurveId id) const { return entries_[index(id)]; }

int LocalBlowdownModel::crossings(CurveId a, CurveId b) const {
  if (a == b) return self_intersection(a);
  return meet_(static_cast<Eigen::Index>(index(a)), static_cast<Eigen::Index>(index(b)));
}

std::vector<CurveId> LocalBlowdownModel::partners(CurveId id) const {
  const auto k = static_cast<Eigen::Index>(index(id));
  std::vector<CurveId> out;
  for (std::size_t j = 0; j < entries_.size(); ++j)
    if (entries_[j].alive && static_cast<Eigen::Index>(j) != k && meet_(k, static_cast<Eigen::Index>(j)) > 0)
      out.push_back(entries_[j].id);
  return out;
}

std::vector<CurveId> LocalBlowdownModel::alive_curves() const {
  std::vector<CurveId> out;
  for (const auto& e : entries_)
    if (e.alive) out.push_back(e.id);
  return out;
}

std::vector<CurveId> LocalBlowdownModel::alive_outer() const {
  std::vector<CurveId> out;
  for (const auto& e : entries_)
    if (e.alive && !e.inner) out.push_back(e.id);
  return out;
}

LocalBlowdownModel::Eligibility LocalBlowdownModel::eligibility(CurveId id) const {
  const auto& e = entry(id);
  if (!e.alive || e.genus != 0 || e.self_intersection != -1) return Eligibility::NotMinusOne;
  const auto partner_ids = partners(id);
  if (partner_ids.size() > 2) return Eligibility::NonSNC;
  for (CurveId p : partner_ids)
    if (crossings(id, p) != 1) return Eligibility::NonSNC;
  return Eligibility::Eligible;
}

void LocalBlowdownModel::contract(CurveId id) {
  if (eligibility(id) != Eligibility::Eligible)
    throw Error(Errc::InvalidState, "curve " + std::to_string(id) + " cannot be contracted here");
  const auto k = static_cast<Eigen::Index>(index(id));
  const auto n = static_cast<Eigen::Index>(entries_.size());
  history_.push_back({id, partners(id)});
  for (Eigen::Index a = 0; a < n; ++a) {
    if (a == k || !entries_[a].alive) continue;
    const int ae = meet_(a, k);
    entries_[a].self_intersection += ae * ae;
    for (Eigen::Index b = a + 1; b < n; ++b) {
      if (b == k || !entries_[b].alive) continue;
      meet_(a, b) += ae * meet_(b, k);
      meet_(b, a) = meet_(a, b);
    }
  }
  entries_[k].alive = false;
  meet_.row(k).setZero();
  meet_.col(k).setZero();
}

std::string_view to_string(BlowdownFailure failure) {
  switch (failure) {
    case BlowdownFailure::NoMinusOne: return "NoMinusOne";
    case BlowdownFailure::NonSNCContraction: return "NonSNCContraction";
  }
  return "?";
}

CurveId lowest_id_choice(std::span<const CurveId> eligible) { return eligible.front(); }

BlowdownRun run_blowdown(LocalBlowdownModel& model, const CurveSet& targets, const ContractionChoice& choose) {
  BlowdownRun run;
  for (;;) {
    std::vector<CurveId> minus_one;
    std::vector<CurveId> eligible;
    bool remaining = false;
    for (CurveId id : targets) {
      if (!model.entry(id).alive) continue;
      remaining = true;
      const auto verdict = model.eligibility(id);
      if (verdict != LocalBlowdownModel::Eligibility::NotMinusOne) minus_one.push_back(id);
      if (verdict == LocalBlowdownModel::Eligibility::Eligible) eligible.push_back(id);
    }
    if (!remaining) return run;
    if (eligible.empty()) {
      if (minus_one.empty()) {
        run.failure = BlowdownFailure::NoMinusOne;
        run.reason = "no rational (-1)-curve left among the curves to contract";
      } else {
        run.failure = BlowdownFailure::NonSNCContraction;
        run.reason = "contracting curve " + std::to_string(minus_one.front()) +
                     " would leave a non-normal-crossing image";
      }
      return run;
    }
    const CurveId pick = choose(eligible);
    if (std::find(eligible.begin(), eligible.end(), pick) == eligible.end())
      throw Error(Errc::InvalidState, "choice policy returned an ineligible curve");
    model.contract(pick);
    run.order.push_back(pick);
  }
}

SmoothPointBlowdown smooth_point_blowdown(const CurveConfig& c, const CurveSet& gamma,
                                          const ContractionChoice& choose) {
  if (gamma.empty()) throw Error(Errc::InvalidState, "smooth_point_blowdown needs a nonempty curve set");
  if (!is_negative_definite(gram<Rat>(c, gamma)))
    throw Error(Errc::InvalidState, "curve set is not contractible (Gram matrix not negative definite)");
  SmoothPointBlowdown out;
  out.final_local = LocalBlowdownModel::around(c, gamma);
  out.run = run_blowdown(out.final_local, gamma, choose);
  return out;
}

}  // namespace logsurf
