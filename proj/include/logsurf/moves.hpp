#pragma once

// The two elementary log crepant contractions of a log terminal surface and
// the predicates deciding when they apply.

#include "logsurf/crepant.hpp"

#include <optional>
#include <string>
#include <vector>

namespace logsurf {

enum class FlopFailure {
  None,
  NotExceptional,
  NonzeroDegree,
  NonNegativeSquare,
  OnDivisorialCenter,
  ThroughNodeCenter,
  MeetsComponentCenter,
};
std::string_view to_string(FlopFailure failure);

struct FlopCheck {
  FlopFailure failure = FlopFailure::None;
  Rat degree;             // (K + D).C on X(S)
  Rat pushforward_square; // C^2 on X(S)

  bool flopping() const { return failure == FlopFailure::None; }
  explicit operator bool() const { return flopping(); }
};

/// Log-flopping type test for the uncontracted curve i.  The state must be
/// log terminal (Error NotLogTerminal otherwise).
FlopCheck is_log_flopping(const SurfaceState& state, CurveId i);
FlopCheck is_log_flopping(const SurfaceState& state, const Classification& analysis, CurveId i);

struct EpsilonChoice {
  std::optional<Rat> supremum;  // empty: unbounded
  Rat chosen;
};

/// Bound on e such that (X, D + e C_i) stays log terminal.  The chosen value
/// is half the supremum, or 1/2 when unbounded.
EpsilonChoice epsilon_bound(const SurfaceState& state, CurveId i);

/// Contracts a log-flopping curve.  Postconditions are re-checked and a
/// failure raises Error(TheoremViolation).
SurfaceState contract_flop(const SurfaceState& state, CurveId i);

struct BlowdownCheck {
  bool ok = false;
  CurveSet gamma;                      // contracted curves adjacent to C_j
  std::vector<CurveId> order;          // contraction order of gamma, then j
  std::vector<CurveId> boundary;       // the two coefficient-1 branches
  std::string reason;

  explicit operator bool() const { return ok; }
};

/// Log blow-down test for the uncontracted curve j: X(S) is smooth along the
/// image of C_j, which is a (-1)-curve of coefficient 1 through the crossing
/// of exactly two coefficient-1 boundary branches.  Over a target base, j must
/// also be exceptional.
BlowdownCheck is_log_blowdown(const SurfaceState& state, CurveId j);

SurfaceState contract_blowdown(const SurfaceState& state, CurveId j);

struct PicardRank {
  int value = 0;
  bool relative_to_master = false;  // value is |S| (point base, unknown rho)
};

PicardRank relative_picard_rank(const SurfaceState& state);

struct NefCheck {
  bool nef = true;
  bool complete = true;  // false: only the marked curves were tested
  std::optional<CurveId> witness;

  explicit operator bool() const { return nef; }
};

/// Over a target base this is the full relative nef test; over a point it
/// only sees marked curves.
NefCheck is_nef_on_marked(const SurfaceState& state);

/// No uncontracted curve is of log-flopping type.  Requires a log terminal,
/// nef state (NotLogTerminal / NotNef otherwise).
bool is_flop_minimal(const SurfaceState& state);

enum class MoveKind { FlopContraction, LogBlowDown };
std::string_view to_string(MoveKind kind);

struct MoveRecord {
  MoveKind kind = MoveKind::FlopContraction;
  CurveId curve = 0;
  std::map<CurveId, Rat> discrepancies_before;
  std::map<CurveId, Rat> discrepancies_after;
  std::optional<EpsilonChoice> epsilon;   // flops
  std::vector<CurveId> blowdown_order;    // blow-downs
  int picard_before = 0;
  int picard_after = 0;

  friend bool operator==(const MoveRecord& a, const MoveRecord& b);
};

struct MoveResult {
  SurfaceState state;
  MoveRecord record;
};

MoveResult perform_flop(const SurfaceState& state, CurveId i);
MoveResult perform_blowdown(const SurfaceState& state, CurveId j);

}  // namespace logsurf
