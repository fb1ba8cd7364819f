#include "logsurf/moves.hpp"

#include <algorithm>

namespace logsurf {

namespace {

bool at_least_log_terminal(Singularity s) { return s == Singularity::LogTerminal || s == Singularity::KLT; }

Classification require_log_terminal(const SurfaceState& state) {
  auto analysis = classify_report(state);
  if (!at_least_log_terminal(analysis.kind))
    throw Error(Errc::NotLogTerminal, "state is " + std::string(to_string(analysis.kind)));
  return analysis;
}

void require_uncontracted(const SurfaceState& state, CurveId i) {
  state.config.curve(i);
  if (state.contracted.count(i)) throw Error(Errc::InvalidState, "curve " + std::to_string(i) + " is already contracted");
}

SurfaceState with_contracted(const SurfaceState& state, CurveId i) {
  SurfaceState next = state;
  next.contracted.insert(i);
  return next;
}

void theorem_check(bool holds, const std::string& what) {
  if (!holds) throw Error(Errc::TheoremViolation, what);
}

}  // namespace

std::string_view to_string(FlopFailure failure) {
  switch (failure) {
    case FlopFailure::None: return "log-flopping";
    case FlopFailure::NotExceptional: return "not exceptional over the base";
    case FlopFailure::NonzeroDegree: return "nonzero log degree";
    case FlopFailure::NonNegativeSquare: return "image is not a negative curve";
    case FlopFailure::OnDivisorialCenter: return "curve is a divisorial lc center (coefficient 1)";
    case FlopFailure::ThroughNodeCenter: return "curve passes through a node lc center";
    case FlopFailure::MeetsComponentCenter: return "curve passes through the image of a discrepancy -1 component";
  }
  return "?";
}

FlopCheck is_log_flopping(const SurfaceState& state, const Classification& analysis, CurveId i) {
  require_uncontracted(state, i);
  if (!at_least_log_terminal(analysis.kind))
    throw Error(Errc::NotLogTerminal, "state is " + std::string(to_string(analysis.kind)));
  const auto& c = state.config;
  FlopCheck check;
  check.degree = log_degree(c, analysis.crepant, i);
  check.pushforward_square = pushforward_self_intersection(state, i);

  if (!is_exceptional_over_base(state, i)) {
    check.failure = FlopFailure::NotExceptional;
  } else if (check.degree != 0) {
    check.failure = FlopFailure::NonzeroDegree;
  } else if (check.pushforward_square >= 0) {
    check.failure = FlopFailure::NonNegativeSquare;
  } else if (c.curve(i).boundary_coeff >= 1) {
    check.failure = FlopFailure::OnDivisorialCenter;
  } else {
    for (const auto& center : lc_centers(state, analysis.crepant)) {
      if (const auto* node = std::get_if<NodeCenter>(&center)) {
        const auto& incident = c.point(node->point).incident;
        if (std::find(incident.begin(), incident.end(), i) != incident.end()) {
          check.failure = FlopFailure::ThroughNodeCenter;
          break;
        }
      } else if (const auto* image = std::get_if<ComponentImage>(&center)) {
        if (std::any_of(image->component.begin(), image->component.end(),
                        [&](CurveId j) { return pairing(c, i, j) > 0; })) {
          check.failure = FlopFailure::MeetsComponentCenter;
          break;
        }
      }
    }
  }
  return check;
}

FlopCheck is_log_flopping(const SurfaceState& state, CurveId i) {
  return is_log_flopping(state, require_log_terminal(state), i);
}

EpsilonChoice epsilon_bound(const SurfaceState& state, CurveId i) {
  const auto analysis = require_log_terminal(state);
  if (!is_log_flopping(state, analysis, i))
    throw Error(Errc::NotFlopping, "curve " + state.config.label(i) + " is not of log-flopping type");
  const auto& c = state.config;
  std::optional<Rat> supremum = Rat(1) - c.curve(i).boundary_coeff;

  if (!state.contracted.empty()) {
    // Adding e*C_i to D moves the contracted coefficients by e*mu.
    const std::vector<CurveId> order(state.contracted.begin(), state.contracted.end());
    Vector<Rat> rhs(static_cast<Eigen::Index>(order.size()));
    for (std::size_t k = 0; k < order.size(); ++k) rhs(static_cast<Eigen::Index>(k)) = -pairing(c, i, order[k]);
    const Vector<Rat> mu = solve_symmetric(gram<Rat>(c, order), rhs);
    for (std::size_t k = 0; k < order.size(); ++k) {
      const Rat& m = mu(static_cast<Eigen::Index>(k));
      if (m <= 0) continue;
      const Rat bound = (Rat(1) - analysis.crepant.coefficient(order[k])) / m;
      if (!supremum || bound < *supremum) supremum = bound;
    }
  }
  EpsilonChoice out;
  out.supremum = supremum;
  out.chosen = supremum ? Rat(*supremum / 2) : Rat(1, 2);
  return out;
}

SurfaceState contract_flop(const SurfaceState& state, CurveId i) {
  const auto analysis = require_log_terminal(state);
  if (!is_log_flopping(state, analysis, i))
    throw Error(Errc::NotFlopping, "curve " + state.config.label(i) + " is not of log-flopping type");
  SurfaceState next = with_contracted(state, i);
  const auto& c = state.config;
  theorem_check(is_negative_definite(gram<Rat>(c, next.contracted)),
                "contracted set stopped being negative definite after a flop");
  theorem_check(at_least_log_terminal(classify(next)), "flop contraction left the log terminal class");
  theorem_check(is_log_crepant(c, state.contracted, next.contracted), "flop contraction is not log crepant");
  theorem_check(relative_picard_rank(next).value == relative_picard_rank(state).value +
                                                        (relative_picard_rank(state).relative_to_master ? 1 : -1),
                "relative Picard rank did not drop by one");
  return next;
}

BlowdownCheck is_log_blowdown(const SurfaceState& state, CurveId j) {
  validate_state(state);
  require_uncontracted(state, j);
  const auto& c = state.config;
  const auto& curve = c.curve(j);
  BlowdownCheck check;
  if (!is_exceptional_over_base(state, j)) {
    check.reason = "not exceptional over the base";
    return check;
  }
  if (curve.boundary_coeff != 1 || curve.genus != 0) {
    check.reason = "needs a rational curve of coefficient 1";
    return check;
  }
  for (const auto& component : connected_components(c, state.contracted))
    if (std::any_of(component.begin(), component.end(), [&](CurveId k) { return pairing(c, j, k) > 0; }))
      check.gamma.insert(component.begin(), component.end());

  CurveSet region = check.gamma;
  region.insert(j);
  auto model = LocalBlowdownModel::around(c, region);
  const auto run = run_blowdown(model, check.gamma);
  if (!run.succeeded()) {
    check.reason = "surface is singular along the curve (" + run.reason + ")";
    return check;
  }
  check.order = run.order;

  if (model.self_intersection(j) != -1) {
    check.reason = "image has self-intersection " + std::to_string(model.self_intersection(j));
    return check;
  }
  const auto partners = model.partners(j);
  if (partners.size() != 2) {
    check.reason = "image meets " + std::to_string(partners.size()) + " curves instead of two boundary branches";
    return check;
  }
  for (CurveId p : partners) {
    if (model.crossings(j, p) != 1) {
      check.reason = "image meets " + c.label(p) + " more than once";
      return check;
    }
    if (model.entry(p).coeff != 1) {
      check.reason = "branch " + c.label(p) + " does not have coefficient 1";
      return check;
    }
  }
  if (model.crossings(partners[0], partners[1]) != 0) {
    check.reason = "branches would cross more than once after the blow-down";
    return check;
  }
  model.contract(j);
  check.order.push_back(j);
  check.boundary = partners;
  check.ok = true;
  return check;
}

SurfaceState contract_blowdown(const SurfaceState& state, CurveId j) {
  const auto check = is_log_blowdown(state, j);
  if (!check) throw Error(Errc::NotABlowdown, "curve " + state.config.label(j) + ": " + check.reason);
  SurfaceState next = with_contracted(state, j);
  const auto& c = state.config;
  theorem_check(is_negative_definite(gram<Rat>(c, next.contracted)),
                "contracted set stopped being negative definite after a blow-down");
  theorem_check(at_least_log_terminal(classify(next)), "log blow-down left the log terminal class");
  theorem_check(is_log_crepant(c, state.contracted, next.contracted), "log blow-down is not log crepant");
  return next;
}

PicardRank relative_picard_rank(const SurfaceState& state) {
  validate_state(state);
  const int contracted = static_cast<int>(state.contracted.size());
  if (const auto* t = std::get_if<TargetBase>(&state.base))
    return {static_cast<int>(t->target.size()) - contracted, false};
  if (state.config.picard_rank_of_model) return {*state.config.picard_rank_of_model - contracted, false};
  return {contracted, true};
}

NefCheck is_nef_on_marked(const SurfaceState& state) {
  const auto crepant = crepant_pullback(state);
  NefCheck check;
  const auto* target = std::get_if<TargetBase>(&state.base);
  check.complete = target != nullptr;
  for (CurveId i : state.config.curve_ids()) {
    if (state.contracted.count(i)) continue;
    if (target && !target->target.count(i)) continue;
    if (log_degree(state.config, crepant, i) < 0) {
      check.nef = false;
      check.witness = i;
      break;
    }
  }
  return check;
}

bool is_flop_minimal(const SurfaceState& state) {
  const auto analysis = require_log_terminal(state);
  const auto nef = is_nef_on_marked(state);
  if (!nef) throw Error(Errc::NotNef, "K + D is negative on " + state.config.label(*nef.witness));
  for (CurveId i : state.config.curve_ids())
    if (!state.contracted.count(i) && is_log_flopping(state, analysis, i)) return false;
  return true;
}

std::string_view to_string(MoveKind kind) {
  return kind == MoveKind::FlopContraction ? "Flop" : "LogBlowDown";
}

bool operator==(const MoveRecord& a, const MoveRecord& b) {
  const auto eps_equal = [](const std::optional<EpsilonChoice>& x, const std::optional<EpsilonChoice>& y) {
    if (x.has_value() != y.has_value()) return false;
    return !x || (x->supremum == y->supremum && x->chosen == y->chosen);
  };
  return a.kind == b.kind && a.curve == b.curve && a.discrepancies_before == b.discrepancies_before &&
         a.discrepancies_after == b.discrepancies_after && eps_equal(a.epsilon, b.epsilon) &&
         a.blowdown_order == b.blowdown_order && a.picard_before == b.picard_before &&
         a.picard_after == b.picard_after;
}

MoveResult perform_flop(const SurfaceState& state, CurveId i) {
  MoveResult out;
  out.record.kind = MoveKind::FlopContraction;
  out.record.curve = i;
  out.record.epsilon = epsilon_bound(state, i);
  out.record.discrepancies_before = crepant_pullback(state).discrepancies();
  out.record.picard_before = relative_picard_rank(state).value;
  out.state = contract_flop(state, i);
  out.record.discrepancies_after = crepant_pullback(out.state).discrepancies();
  out.record.picard_after = relative_picard_rank(out.state).value;
  return out;
}

MoveResult perform_blowdown(const SurfaceState& state, CurveId j) {
  const auto check = is_log_blowdown(state, j);
  if (!check) throw Error(Errc::NotABlowdown, "curve " + state.config.label(j) + ": " + check.reason);
  MoveResult out;
  out.record.kind = MoveKind::LogBlowDown;
  out.record.curve = j;
  out.record.blowdown_order = check.order;
  out.record.discrepancies_before = crepant_pullback(state).discrepancies();
  out.record.picard_before = relative_picard_rank(state).value;
  out.state = contract_blowdown(state, j);
  const int before = relative_picard_rank(state).value;
  const auto after = relative_picard_rank(out.state);
  theorem_check(after.value == before + (after.relative_to_master ? 1 : -1),
                "relative Picard rank did not drop by one");
  out.record.discrepancies_after = crepant_pullback(out.state).discrepancies();
  out.record.picard_after = after.value;
  return out;
}

}  // namespace logsurf
