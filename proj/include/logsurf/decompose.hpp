#pragma once

// Drivers: factor a log crepant morphism X(S1) -> X(S2) into log-flopping
// contractions followed by log blow-downs, run the minimization loop over a
// point, replay traces, and generate crepant test pairs.

#include "logsurf/moves.hpp"

#include <cstdint>
#include <functional>
#include <span>

namespace logsurf {

/// X(source) -> X(target) on the master model `config`.
struct MorphismSpec {
  CurveConfig config;
  CurveSet source;
  CurveSet target;
};

enum class TraceMode { Decomposition, Minimization };
std::string_view to_string(TraceMode mode);

struct DecompositionTrace {
  TraceMode mode = TraceMode::Decomposition;
  CurveSet start;
  CurveSet end;
  std::vector<MoveRecord> steps;
  /// Steps before this index are flops.  In a decomposition every later step
  /// is a log blow-down; a minimization may interleave the two afterwards.
  std::size_t fm_index = 0;
};

/// Throws NotNested, InvalidState, NotLogTerminal or NotCrepant on bad input,
/// TheoremViolation when an exceptional non-boundary curve fails to be
/// log-flopping, StuckInPhase2 when no log blow-down is available.
DecompositionTrace decompose_morphism(const MorphismSpec& m);

/// Contracts the lowest-id log-flopping curve, else the lowest-id log
/// blow-down, until neither exists.  Requires a point base, log terminal and
/// nef on marked curves.
DecompositionTrace minimize(const SurfaceState& state);

struct VerifyReport {
  bool ok = true;
  std::size_t failed_step = 0;
  std::string failure;

  explicit operator bool() const { return ok; }
};

/// Independent replay of a trace from `start`.  Never throws.
VerifyReport verify_trace(const CurveConfig& c, const CurveSet& start, const DecompositionTrace& trace);

/// A blow-up whose exceptional curve has the crepant coefficient.
struct CrepantTarget {
  BlowUpTarget where;
  Rat coeff;
};

/// Crossings whose coefficients sum to at least 1 (new coefficient sum - 1),
/// then marked points and free points on coefficient-1 curves (new
/// coefficient 0), each group in id order.
std::vector<CrepantTarget> admissible_crepant_targets(const CurveConfig& c);

using TargetChoice = std::function<std::size_t(std::span<const CrepantTarget>)>;

MorphismSpec generate_crepant_pair(const CurveConfig& tmpl, int depth, const TargetChoice& choose);
MorphismSpec generate_crepant_pair(const CurveConfig& tmpl, int depth, std::uint64_t seed);

}  // namespace logsurf
