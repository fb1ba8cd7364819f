#include "logsurf/decompose.hpp"

#include <algorithm>
#include <random>

namespace logsurf {

namespace {

bool at_least_log_terminal(Singularity s) { return s == Singularity::LogTerminal || s == Singularity::KLT; }

std::vector<CurveId> remaining(const CurveSet& target, const CurveSet& current) {
  std::vector<CurveId> out;
  std::set_difference(target.begin(), target.end(), current.begin(), current.end(), std::back_inserter(out));
  return out;
}

void check_morphism(const MorphismSpec& m) {
  if (!std::includes(m.target.begin(), m.target.end(), m.source.begin(), m.source.end()))
    throw Error(Errc::NotNested, "source contracted set is not inside the target set");
  for (const CurveSet* s : {&m.source, &m.target}) {
    const SurfaceState state{m.config, *s, PointBase{}};
    validate_state(state);
    const auto kind = classify(state);
    if (!at_least_log_terminal(kind))
      throw Error(Errc::NotLogTerminal, std::string(s == &m.source ? "source" : "target") + " is " +
                                            std::string(to_string(kind)));
  }
  if (!is_log_crepant(m.config, m.source, m.target))
    throw Error(Errc::NotCrepant, "morphism is not log crepant");
}

std::optional<CurveId> lowest_blowdown(const SurfaceState& state, std::span<const CurveId> candidates) {
  for (CurveId j : candidates)
    if (is_log_blowdown(state, j)) return j;
  return std::nullopt;
}

}  // namespace

std::string_view to_string(TraceMode mode) {
  return mode == TraceMode::Decomposition ? "decompose" : "minimize";
}

DecompositionTrace decompose_morphism(const MorphismSpec& m) {
  check_morphism(m);
  DecompositionTrace trace;
  trace.mode = TraceMode::Decomposition;
  trace.start = m.source;
  trace.end = m.target;
  SurfaceState state{m.config, m.source, TargetBase{m.target}};

  for (;;) {
    std::optional<CurveId> next;
    for (CurveId i : remaining(m.target, state.contracted))
      if (m.config.curve(i).boundary_coeff < 1) {
        next = i;
        break;
      }
    if (!next) break;
    if (!is_log_flopping(state, *next))
      throw Error(Errc::TheoremViolation,
                  "exceptional curve " + m.config.label(*next) + " with coefficient < 1 is not of log-flopping type");
    auto moved = perform_flop(state, *next);
    trace.steps.push_back(std::move(moved.record));
    state = std::move(moved.state);
  }

  trace.fm_index = trace.steps.size();
  if (!is_flop_minimal(state))
    throw Error(Errc::TheoremViolation, "a log-flopping curve survived the flop phase");

  while (state.contracted != m.target) {
    const auto candidates = remaining(m.target, state.contracted);
    const auto next = lowest_blowdown(state, candidates);
    if (!next) throw Error(Errc::StuckInPhase2, "no log blow-down among the remaining exceptional curves");
    auto moved = perform_blowdown(state, *next);
    trace.steps.push_back(std::move(moved.record));
    state = std::move(moved.state);
  }
  return trace;
}

DecompositionTrace minimize(const SurfaceState& start) {
  if (!std::holds_alternative<PointBase>(start.base))
    throw Error(Errc::InvalidState, "minimization runs over a point base");
  const auto kind = classify(start);
  if (!at_least_log_terminal(kind)) throw Error(Errc::NotLogTerminal, "state is " + std::string(to_string(kind)));
  const auto nef = is_nef_on_marked(start);
  if (!nef) throw Error(Errc::NotNef, "K + D is negative on " + start.config.label(*nef.witness));

  DecompositionTrace trace;
  trace.mode = TraceMode::Minimization;
  trace.start = start.contracted;
  SurfaceState state = start;
  const std::size_t budget = start.config.curves.size() - start.contracted.size();
  bool only_flops = true;

  for (;;) {
    std::vector<CurveId> open;
    for (CurveId i : state.config.curve_ids())
      if (!state.contracted.count(i)) open.push_back(i);

    const auto analysis = classify_report(state);
    std::optional<MoveResult> moved;
    for (CurveId i : open)
      if (is_log_flopping(state, analysis, i)) {
        moved = perform_flop(state, i);
        break;
      }
    if (!moved) {
      if (const auto j = lowest_blowdown(state, open)) moved = perform_blowdown(state, *j);
    }
    if (!moved) break;

    if (moved->record.kind == MoveKind::LogBlowDown) only_flops = false;
    if (only_flops) trace.fm_index = trace.steps.size() + 1;
    if (!is_nef_on_marked(moved->state))
      throw Error(Errc::TheoremViolation, "a crepant contraction broke nefness");
    trace.steps.push_back(std::move(moved->record));
    state = std::move(moved->state);
    if (trace.steps.size() > budget) throw Error(Errc::TheoremViolation, "minimization did not terminate");
  }
  trace.end = state.contracted;
  return trace;
}

VerifyReport verify_trace(const CurveConfig& c, const CurveSet& start, const DecompositionTrace& trace) {
  VerifyReport report;
  const auto fail = [&](std::size_t step, std::string why) {
    report.ok = false;
    report.failed_step = step;
    report.failure = std::move(why);
    return report;
  };
  if (trace.start != start) return fail(0, "trace starts from a different contracted set");
  if (trace.fm_index > trace.steps.size()) return fail(0, "fm index lies past the last step");

  const bool decomposition = trace.mode == TraceMode::Decomposition;
  SurfaceState state{c, start, PointBase{}};
  if (decomposition) state.base = TargetBase{trace.end};

  try {
    if (decomposition) check_morphism({c, start, trace.end});
    for (std::size_t k = 0; k <= trace.steps.size(); ++k) {
      if (decomposition && k == trace.fm_index && !is_flop_minimal(state))
        return fail(k, "state at the fm index still has a log-flopping curve");
      if (k == trace.steps.size()) break;
      const auto& step = trace.steps[k];
      if (k < trace.fm_index && step.kind != MoveKind::FlopContraction)
        return fail(k, "a log blow-down precedes the fm index");
      if (decomposition && k >= trace.fm_index && step.kind != MoveKind::LogBlowDown)
        return fail(k, "a flop follows the fm index");
      if (state.contracted.count(step.curve)) return fail(k, "curve is already contracted");

      MoveResult replay;
      if (step.kind == MoveKind::FlopContraction) {
        const auto check = is_log_flopping(state, step.curve);
        if (!check) return fail(k, "curve " + c.label(step.curve) + " is not log-flopping: " +
                                       std::string(to_string(check.failure)));
        replay = perform_flop(state, step.curve);
      } else {
        const auto check = is_log_blowdown(state, step.curve);
        if (!check) return fail(k, "curve " + c.label(step.curve) + " is not a log blow-down: " + check.reason);
        replay = perform_blowdown(state, step.curve);
      }
      if (!(replay.record == step)) return fail(k, "recorded certificate does not match the replay");
      state = std::move(replay.state);
    }
    if (state.contracted != trace.end) return fail(trace.steps.size(), "replay ends at a different contracted set");
    if (!decomposition) {
      const auto analysis = classify_report(state);
      for (CurveId i : c.curve_ids()) {
        if (state.contracted.count(i)) continue;
        if (is_log_flopping(state, analysis, i) || is_log_blowdown(state, i))
          return fail(trace.steps.size(), "minimization stopped while curve " + c.label(i) + " could be contracted");
      }
    }
  } catch (const std::exception& e) {
    return fail(report.failed_step, e.what());
  }
  return report;
}

std::vector<CrepantTarget> admissible_crepant_targets(const CurveConfig& c) {
  std::vector<CrepantTarget> out;
  std::vector<CrossingPoint> points = c.points;
  std::sort(points.begin(), points.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  for (const auto& p : points) {
    if (p.incident.size() != 2) continue;
    const Rat sum = c.curve(p.incident[0]).boundary_coeff + c.curve(p.incident[1]).boundary_coeff;
    if (sum >= 1) out.push_back({AtPoint{p.id}, sum - 1});
  }
  for (const auto& p : points)
    if (p.incident.size() == 1 && c.curve(p.incident[0]).boundary_coeff == 1) out.push_back({AtPoint{p.id}, Rat(0)});
  for (CurveId k : c.curve_ids())
    if (c.curve(k).boundary_coeff == 1) out.push_back({FreePointOn{k}, Rat(0)});
  return out;
}

MorphismSpec generate_crepant_pair(const CurveConfig& tmpl, int depth, const TargetChoice& choose) {
  if (depth < 0) throw Error(Errc::InvalidState, "depth must be non-negative");
  const auto violations = validate_config(tmpl);
  if (!violations.empty()) throw Error(Errc::InvalidState, "invalid template: " + violations.front().detail);
  MorphismSpec out{tmpl, {}, {}};
  for (int step = 0; step < depth; ++step) {
    const auto targets = admissible_crepant_targets(out.config);
    if (targets.empty()) throw Error(Errc::NoAdmissibleTarget, "no crepant blow-up target is available");
    const std::size_t pick = choose(targets);
    if (pick >= targets.size()) throw Error(Errc::InvalidState, "target choice out of range");
    const CurveId created = out.config.next_curve_id();
    out.config = blow_up(out.config, targets[pick].where, targets[pick].coeff);
    out.target.insert(created);
  }
  return out;
}

MorphismSpec generate_crepant_pair(const CurveConfig& tmpl, int depth, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return generate_crepant_pair(tmpl, depth, [&rng](std::span<const CrepantTarget> targets) {
    return std::uniform_int_distribution<std::size_t>(0, targets.size() - 1)(rng);
  });
}

}  // namespace logsurf
