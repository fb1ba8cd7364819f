#pragma once

// Crepant pullbacks, discrepancies and singularity classes of the pair
// (X(S), D_S) obtained by contracting a set S of marked curves on the master
// model.  All quantities are exact.

#include "logsurf/surface.hpp"

#include <map>
#include <variant>
#include <vector>

namespace logsurf {

struct PointBase {
  friend bool operator==(const PointBase&, const PointBase&) = default;
};

/// The base is itself a contraction of the master model, X(S_T).
struct TargetBase {
  CurveSet target;
  friend bool operator==(const TargetBase&, const TargetBase&) = default;
};

using BaseDesignation = std::variant<PointBase, TargetBase>;

struct SurfaceState {
  CurveConfig config;
  CurveSet contracted;
  BaseDesignation base = PointBase{};
};

/// Throws Error(InvalidState) unless the configuration validates, every
/// contracted curve exists and is negative definite as a set, and a target
/// base contains the contracted set and is itself contractible.
void validate_state(const SurfaceState& state);

bool is_exceptional_over_base(const SurfaceState& state, CurveId i);

/// Coefficients e of f^*(K_X + D) - K_Y on every marked curve.
struct CrepantData {
  std::map<CurveId, Rat> e;
  CurveSet contracted;

  const Rat& coefficient(CurveId id) const;
  /// a_j = -e_j, only defined for contracted curves.
  Rat discrepancy(CurveId j) const;
  std::map<CurveId, Rat> discrepancies() const;
};

/// Solves sum_{j in S} a_j C_j.C_i = K.C_i + sum_{k not in S} d_k C_k.C_i for
/// i in S.  Throws InvalidState when S is not contractible.
CrepantData crepant_pullback(const SurfaceState& state);
CrepantData crepant_pullback(const CurveConfig& c, const CurveSet& contracted);

enum class Singularity { NotLC, LogCanonical, LogTerminal, KLT };
std::string_view to_string(Singularity s);

struct Classification {
  Singularity kind = Singularity::NotLC;
  CrepantData crepant;
  std::vector<std::string> notes;  // why a stronger class was refused
};

Classification classify_report(const SurfaceState& state);
inline Singularity classify(const SurfaceState& state) { return classify_report(state).kind; }

struct DivisorialCenter {
  CurveId curve;
};
struct NodeCenter {
  PointId point;
};
struct ComponentImage {
  CurveSet component;
};
using LcCenter = std::variant<DivisorialCenter, NodeCenter, ComponentImage>;

/// Centers on X(S) of valuations with discrepancy -1.  Node centers are only
/// reported for crossings of two uncontracted coefficient-1 curves; a crossing
/// on a contracted curve maps to the image of its component.
std::vector<LcCenter> lc_centers(const SurfaceState& state);
std::vector<LcCenter> lc_centers(const SurfaceState& state, const CrepantData& crepant);

/// Self-intersection of the image of C_i on X(S) (i not in S).
Rat pushforward_self_intersection(const SurfaceState& state, CurveId i);

/// (K_X + D).C_i on X(S) for an uncontracted curve, via the projection formula.
Rat log_degree(const SurfaceState& state, CurveId i);
Rat log_degree(const CurveConfig& c, const CrepantData& crepant, CurveId i);

/// True iff contracting S2 \ S1 from X(S1) is log crepant.  Throws NotNested
/// when S1 is not a subset of S2 and InvalidState for non-contractible sets.
bool is_log_crepant(const CurveConfig& c, const CurveSet& s1, const CurveSet& s2);

}  // namespace logsurf
