#pragma once

// Combinatorial model of a smooth surface carrying a simple normal crossing
// configuration of marked curves.  Intersection numbers between distinct
// curves are never stored: they are the number of crossing points the two
// curves share, so transversality holds by construction.

#include "logsurf/error.hpp"
#include "logsurf/rational.hpp"
#include "logsurf/ratlin.hpp"

#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace logsurf {

using CurveId = int;
using PointId = int;
using CurveSet = std::set<CurveId>;

struct Curve {
  CurveId id = 0;
  int genus = 0;
  int self_intersection = 0;
  Rat boundary_coeff;
  std::string name;  // optional label, e.g. "E1"

  friend bool operator==(const Curve&, const Curve&) = default;
};

/// A crossing of two curves, or (one incident curve) a marked smooth point.
struct CrossingPoint {
  PointId id = 0;
  std::vector<CurveId> incident;  // sorted ascending

  friend bool operator==(const CrossingPoint&, const CrossingPoint&) = default;
};

struct CurveConfig {
  std::vector<Curve> curves;
  std::vector<CrossingPoint> points;
  std::optional<int> picard_rank_of_model;

  bool has_curve(CurveId id) const;
  bool has_point(PointId id) const;
  const Curve& curve(CurveId id) const;
  Curve& curve(CurveId id);
  const CrossingPoint& point(PointId id) const;

  /// Resolves a curve label; numeric strings are accepted as ids.
  CurveId resolve(std::string_view name_or_id) const;
  /// "name" when the curve has one, otherwise the decimal id.
  std::string label(CurveId id) const;

  std::vector<CurveId> curve_ids() const;  // ascending
  CurveId next_curve_id() const;
  PointId next_point_id() const;

  friend bool operator==(const CurveConfig&, const CurveConfig&) = default;
};

enum class ViolationKind {
  TriplePoint,
  BadCoefficient,
  DanglingId,
  DuplicateId,
  BadIncidence,
  NegativeGenus,
};

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string detail;
};

/// Empty result means the configuration is valid.  Never throws.
std::vector<Violation> validate_config(const CurveConfig& c);

int pairing(const CurveConfig& c, CurveId i, CurveId j);

/// K.C by adjunction: 2g - 2 - C^2.
int canonical_degree(const CurveConfig& c, CurveId i);

struct AtPoint {
  PointId point;
};
struct FreePointOn {
  CurveId curve;
};
struct GenericPoint {};
using BlowUpTarget = std::variant<AtPoint, FreePointOn, GenericPoint>;

/// Blows up `target`.  The exceptional curve is appended as the last curve,
/// gets the next free id and the first unused label "E<n>"; new crossing
/// points are appended in the order of the incident curve ids.
CurveConfig blow_up(const CurveConfig& c, const BlowUpTarget& target, const Rat& new_coeff);

/// Components of S under "share a crossing point", each sorted, ordered by
/// smallest member.
std::vector<CurveSet> connected_components(const CurveConfig& c, const CurveSet& s);

/// Curves outside `s` sharing a point with some member of `s`.
CurveSet adjacent_curves(const CurveConfig& c, const CurveSet& s);

namespace detail {
Matrix<int> intersection_counts(const CurveConfig& c, std::span<const CurveId> ids);
}

/// Gram matrix of the listed curves, in the listed order.
template <typename Scalar = Rat>
SymMatrix<Scalar> gram(const CurveConfig& c, std::span<const CurveId> ids) {
  return detail::intersection_counts(c, ids).template cast<Scalar>();
}

template <typename Scalar = Rat>
SymMatrix<Scalar> gram(const CurveConfig& c, const CurveSet& ids) {
  const std::vector<CurveId> ordered(ids.begin(), ids.end());
  return gram<Scalar>(c, ordered);
}

// ---------------------------------------------------------------------------
// Smooth-point blow-down simulation

/// Working copy of a region of the configuration: the inner curves (whose
/// every crossing is local) and the curves adjacent to them.  Crossings
/// between two adjacent curves are only those created by contractions, i.e.
/// the ones lying over the contracted locus.
class LocalBlowdownModel {
 public:
  struct Entry {
    CurveId id = 0;
    int genus = 0;
    int self_intersection = 0;
    Rat coeff;
    bool inner = false;
    bool alive = true;
  };

  struct Contraction {
    CurveId curve = 0;
    std::vector<CurveId> partners;  // each met exactly once
  };

  enum class Eligibility { Eligible, NotMinusOne, NonSNC };

  LocalBlowdownModel() = default;
  static LocalBlowdownModel around(const CurveConfig& c, const CurveSet& inner);

  bool contains(CurveId id) const;
  const Entry& entry(CurveId id) const;
  int self_intersection(CurveId id) const { return entry(id).self_intersection; }
  int crossings(CurveId a, CurveId b) const;

  /// Live curves with positive intersection with `id`, ascending.
  std::vector<CurveId> partners(CurveId id) const;
  std::vector<CurveId> alive_curves() const;
  std::vector<CurveId> alive_outer() const;

  Eligibility eligibility(CurveId id) const;

  /// Contracts a (-1)-curve: A.B += (A.e)(B.e) and A^2 += (A.e)^2 for the
  /// remaining curves.  Throws InvalidState when `id` is not Eligible.
  void contract(CurveId id);

  const std::vector<Contraction>& history() const { return history_; }

 private:
  std::size_t index(CurveId id) const;

  std::vector<Entry> entries_;
  Matrix<int> meet_;
  std::vector<Contraction> history_;
};

enum class BlowdownFailure { NoMinusOne, NonSNCContraction };
std::string_view to_string(BlowdownFailure failure);

/// Picks one curve among the eligible ones (given ascending).
using ContractionChoice = std::function<CurveId(std::span<const CurveId>)>;
CurveId lowest_id_choice(std::span<const CurveId> eligible);

struct BlowdownRun {
  std::vector<CurveId> order;
  std::optional<BlowdownFailure> failure;
  std::string reason;

  bool succeeded() const { return !failure; }
};

/// Contracts every inner curve of `model` that belongs to `targets`, one
/// eligible (-1)-curve at a time, until `targets` is exhausted or stuck.
BlowdownRun run_blowdown(LocalBlowdownModel& model, const CurveSet& targets,
                         const ContractionChoice& choose = lowest_id_choice);

struct SmoothPointBlowdown {
  BlowdownRun run;
  LocalBlowdownModel final_local;

  bool smooth_point() const { return run.succeeded(); }
  explicit operator bool() const { return smooth_point(); }
};

/// Decides whether the curves of `gamma` contract to smooth points with an
/// SNC image of their neighbours.  Requires gamma nonempty with negative
/// definite Gram matrix.
SmoothPointBlowdown smooth_point_blowdown(const CurveConfig& c, const CurveSet& gamma,
                                          const ContractionChoice& choose = lowest_id_choice);

}  // namespace logsurf
