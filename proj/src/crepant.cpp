#include "logsurf/crepant.hpp"

#include <algorithm>

namespace logsurf {

namespace {

void require_contractible(const CurveConfig& c, const CurveSet& s, const char* what) {
  for (CurveId id : s)
    if (!c.has_curve(id)) throw Error(Errc::InvalidState, std::string(what) + " names unknown curve " + std::to_string(id));
  if (!is_negative_definite(gram<Rat>(c, s)))
    throw Error(Errc::InvalidState, std::string(what) + " is not contractible (Gram matrix not negative definite)");
}

}  // namespace

void validate_state(const SurfaceState& state) {
  const auto violations = validate_config(state.config);
  if (!violations.empty())
    throw Error(Errc::InvalidState, "invalid configuration: " + violations.front().detail);
  require_contractible(state.config, state.contracted, "contracted set");
  if (const auto* t = std::get_if<TargetBase>(&state.base)) {
    if (!std::includes(t->target.begin(), t->target.end(), state.contracted.begin(), state.contracted.end()))
      throw Error(Errc::InvalidState, "contracted set is not inside the target base");
    require_contractible(state.config, t->target, "target base");
  }
}

bool is_exceptional_over_base(const SurfaceState& state, CurveId i) {
  if (const auto* t = std::get_if<TargetBase>(&state.base)) return t->target.count(i) > 0;
  return true;
}

const Rat& CrepantData::coefficient(CurveId id) const {
  auto it = e.find(id);
  if (it == e.end()) throw Error(Errc::UnknownId, "no coefficient for curve " + std::to_string(id));
  return it->second;
}

Rat CrepantData::discrepancy(CurveId j) const {
  if (!contracted.count(j)) throw Error(Errc::InvalidState, "curve " + std::to_string(j) + " is not contracted");
  return -coefficient(j);
}

std::map<CurveId, Rat> CrepantData::discrepancies() const {
  std::map<CurveId, Rat> out;
  for (CurveId j : contracted) out[j] = -coefficient(j);
  return out;
}

CrepantData crepant_pullback(const CurveConfig& c, const CurveSet& contracted) {
  require_contractible(c, contracted, "contracted set");
  CrepantData out;
  out.contracted = contracted;
  for (const auto& curve : c.curves)
    if (!contracted.count(curve.id)) out.e[curve.id] = curve.boundary_coeff;
  if (contracted.empty()) return out;

  const std::vector<CurveId> order(contracted.begin(), contracted.end());
  std::map<CurveId, Eigen::Index> slot;
  for (std::size_t k = 0; k < order.size(); ++k) slot[order[k]] = static_cast<Eigen::Index>(k);

  Vector<Rat> rhs(static_cast<Eigen::Index>(order.size()));
  for (std::size_t k = 0; k < order.size(); ++k) rhs(static_cast<Eigen::Index>(k)) = canonical_degree(c, order[k]);
  for (const auto& p : c.points) {
    if (p.incident.size() != 2) continue;
    for (int side = 0; side < 2; ++side) {
      const CurveId here = p.incident[side];
      const CurveId there = p.incident[1 - side];
      if (slot.count(here) && !contracted.count(there)) rhs(slot[here]) += c.curve(there).boundary_coeff;
    }
  }
  const Vector<Rat> a = solve_symmetric(gram<Rat>(c, order), rhs);
  for (std::size_t k = 0; k < order.size(); ++k) out.e[order[k]] = -a(static_cast<Eigen::Index>(k));
  return out;
}

CrepantData crepant_pullback(const SurfaceState& state) {
  validate_state(state);
  return crepant_pullback(state.config, state.contracted);
}

std::string_view to_string(Singularity s) {
  switch (s) {
    case Singularity::NotLC: return "NotLC";
    case Singularity::LogCanonical: return "LogCanonical";
    case Singularity::LogTerminal: return "LogTerminal";
    case Singularity::KLT: return "KLT";
  }
  return "?";
}

Classification classify_report(const SurfaceState& state) {
  Classification out;
  out.crepant = crepant_pullback(state);
  const auto& e = out.crepant;
  const auto& c = state.config;

  for (CurveId j : state.contracted) {
    if (e.coefficient(j) > 1) {
      out.kind = Singularity::NotLC;
      out.notes.push_back("discrepancy of " + c.label(j) + " is " + to_display_string(e.discrepancy(j)) + " < -1");
      return out;
    }
  }

  bool log_terminal = true;
  for (const auto& component : connected_components(c, state.contracted)) {
    const bool has_lc_curve =
        std::any_of(component.begin(), component.end(), [&](CurveId j) { return e.coefficient(j) == 1; });
    if (!has_lc_curve) continue;
    const auto blowdown = smooth_point_blowdown(c, component);
    std::string where = "component {";
    for (CurveId j : component) where += (where.back() == '{' ? "" : ",") + c.label(j);
    where += "}";
    if (!blowdown) {
      out.notes.push_back(where + " has discrepancy -1 but does not contract to a smooth point (" +
                          std::string(to_string(*blowdown.run.failure)) + ")");
      log_terminal = false;
      continue;
    }
    const auto survivors = blowdown.final_local.alive_outer();
    const bool corner = survivors.size() == 2 && blowdown.final_local.entry(survivors[0]).coeff == 1 &&
                        blowdown.final_local.entry(survivors[1]).coeff == 1 &&
                        blowdown.final_local.crossings(survivors[0], survivors[1]) == 1;
    if (!corner) {
      out.notes.push_back(where + " has discrepancy -1 but its image is not a normal crossing of two boundary curves");
      log_terminal = false;
    }
  }
  if (!log_terminal) {
    out.kind = Singularity::LogCanonical;
    return out;
  }

  for (const auto& [id, coeff] : e.e) {
    if (coeff >= 1) {
      out.kind = Singularity::LogTerminal;
      out.notes.push_back("curve " + c.label(id) + " has coefficient 1");
      return out;
    }
  }
  out.kind = Singularity::KLT;
  return out;
}

std::vector<LcCenter> lc_centers(const SurfaceState& state, const CrepantData& crepant) {
  const auto& c = state.config;
  std::vector<LcCenter> out;
  for (CurveId k : c.curve_ids())
    if (!state.contracted.count(k) && crepant.coefficient(k) == 1) out.push_back(DivisorialCenter{k});
  std::vector<PointId> nodes;
  for (const auto& p : c.points) {
    if (p.incident.size() != 2) continue;
    const CurveId a = p.incident[0];
    const CurveId b = p.incident[1];
    if (state.contracted.count(a) || state.contracted.count(b)) continue;
    if (crepant.coefficient(a) == 1 && crepant.coefficient(b) == 1) nodes.push_back(p.id);
  }
  std::sort(nodes.begin(), nodes.end());
  for (PointId p : nodes) out.push_back(NodeCenter{p});
  for (const auto& component : connected_components(c, state.contracted))
    if (std::any_of(component.begin(), component.end(), [&](CurveId j) { return crepant.coefficient(j) == 1; }))
      out.push_back(ComponentImage{component});
  return out;
}

std::vector<LcCenter> lc_centers(const SurfaceState& state) {
  const auto report = classify_report(state);
  if (report.kind == Singularity::NotLC)
    throw Error(Errc::InvalidState, "lc centers are only defined for log canonical states");
  return lc_centers(state, report.crepant);
}

Rat pushforward_self_intersection(const SurfaceState& state, CurveId i) {
  validate_state(state);
  const auto& c = state.config;
  if (state.contracted.count(i)) throw Error(Errc::InvalidState, "curve " + std::to_string(i) + " is contracted");
  Rat result = c.curve(i).self_intersection;
  if (state.contracted.empty()) return result;
  const std::vector<CurveId> order(state.contracted.begin(), state.contracted.end());
  Vector<Rat> rhs(static_cast<Eigen::Index>(order.size()));
  for (std::size_t k = 0; k < order.size(); ++k) rhs(static_cast<Eigen::Index>(k)) = -pairing(c, i, order[k]);
  const Vector<Rat> lambda = solve_symmetric(gram<Rat>(c, order), rhs);
  for (std::size_t k = 0; k < order.size(); ++k)
    result += lambda(static_cast<Eigen::Index>(k)) * pairing(c, i, order[k]);
  return result;
}

Rat log_degree(const CurveConfig& c, const CrepantData& crepant, CurveId i) {
  Rat degree = canonical_degree(c, i);
  degree += crepant.coefficient(i) * c.curve(i).self_intersection;
  for (const auto& p : c.points) {
    if (p.incident.size() != 2) continue;
    if (p.incident[0] == i) degree += crepant.coefficient(p.incident[1]);
    if (p.incident[1] == i) degree += crepant.coefficient(p.incident[0]);
  }
  return degree;
}

Rat log_degree(const SurfaceState& state, CurveId i) {
  if (state.contracted.count(i)) throw Error(Errc::InvalidState, "curve " + std::to_string(i) + " is contracted");
  return log_degree(state.config, crepant_pullback(state), i);
}

bool is_log_crepant(const CurveConfig& c, const CurveSet& s1, const CurveSet& s2) {
  if (!std::includes(s2.begin(), s2.end(), s1.begin(), s1.end()))
    throw Error(Errc::NotNested, "source contracted set is not inside the target set");
  const auto violations = validate_config(c);
  if (!violations.empty()) throw Error(Errc::InvalidState, "invalid configuration: " + violations.front().detail);
  const auto e = crepant_pullback(c, s2);
  for (CurveId j : s2)
    if (!s1.count(j) && e.coefficient(j) != c.curve(j).boundary_coeff) return false;
  return true;
}

}  // namespace logsurf
