#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "purisheaf/sheafp1/sheaf.hpp"

namespace purisheaf::ziegler {

using exact::Field;
using sheaf::ClosedPoint;
using sheaf::CoherentSheaf;

/// Indecomposable pure-injective of QCoh(P^1), symbolically.
struct ZgPoint {
  enum class Kind { LB, Tors, Prufer, Adic, Generic };
  Kind kind = Kind::Generic;
  int n = 0;  ///< LB(n)
  ClosedPoint pt;
  int m = 0;  ///< Tors(pt, m), m >= 1

  static ZgPoint lb(int n) { return {Kind::LB, n, {}, 0}; }
  static ZgPoint tors(ClosedPoint pt, int m);
  static ZgPoint prufer(ClosedPoint pt) { return {Kind::Prufer, 0, std::move(pt), 0}; }
  static ZgPoint adic(ClosedPoint pt) { return {Kind::Adic, 0, std::move(pt), 0}; }
  static ZgPoint generic() { return {}; }

  std::string toString() const;
  friend bool operator==(const ZgPoint& a, const ZgPoint& b);
  friend bool operator<(const ZgPoint& a, const ZgPoint& b);
};

struct ZgAttributes {
  bool gPureInjective = false;
  bool isLineBundle = false;
  bool isolated = false;
  bool closedSingleton = false;
  /// Catalog entry for line bundles (any direct sum of copies is c-pure-injective);
  /// only the finite-sum shadow is checkable here.
  bool sigmaCPureInjective = false;
  std::string source;  ///< "classification", "topology", or "Dedekind-domain rules"
};
ZgAttributes attributes(const ZgPoint& p);

/// A subset of Zg(QCoh(P^1)) closed under the operations below; canonical form
/// after `canonicalize` (rays absorb finite values, adjacent values extend rays).
struct PointSetDescription {
  // line bundles
  std::optional<int> lbAtMost;   ///< all n <= N
  std::optional<int> lbAtLeast;  ///< all n >= N
  std::set<int> lbFinite;
  // finite length points
  bool allTorsion = false;
  std::map<ClosedPoint, std::set<int>> tors;
  std::set<ClosedPoint> torsAllLengths;
  // infinite dimensional points
  bool allPrufer = false, allAdic = false;
  std::set<ClosedPoint> prufer, adic;
  bool generic = false;

  bool lbAll() const { return lbAtMost && lbAtLeast && *lbAtLeast <= *lbAtMost + 1; }
  bool lbBoundedAbove() const { return !lbAtLeast; }
  bool hasLineBundles() const { return lbAtMost || lbAtLeast || !lbFinite.empty(); }
  bool empty() const;
  bool contains(const ZgPoint& p) const;
  /// Subset test on descriptions (decidable on canonical forms).
  bool includes(const PointSetDescription& o) const;

  void canonicalize();
  static PointSetDescription of(const std::vector<ZgPoint>& pts);
  friend bool operator==(const PointSetDescription&, const PointSetDescription&) = default;
};

PointSetDescription unite(const PointSetDescription& a, const PointSetDescription& b);

/// The LB part and the geometric part are closed separately and united.
PointSetDescription closure(const PointSetDescription& s);
bool isClosed(const PointSetDescription& s);

/// Which rules fired during a closure, for reports.
struct ClosureTrace {
  bool lbUnboundedAbove = false;
  std::vector<ClosedPoint> unboundedTorsion;  ///< per point, adds Prüfer, adic and generic
  bool allTorsion = false;
  bool infinitePointsToGeneric = false;
};
PointSetDescription closure(const PointSetDescription& s, ClosureTrace& trace);

/// All torsion, Prüfer, adic points and the generic point; no line bundles.
PointSetDescription geometricPart();

std::vector<ZgPoint> coherentZgTrace(const CoherentSheaf& f);

/// `LB(n)`, `T(pt,m)`, `Prufer(pt)`, `Adic(pt)`, `Gen`, and families
/// `LB(>=N)`, `LB(<=N)`, `LB(*)`, `T(pt,*)`, `T(*)`, `Prufer(*)`, `Adic(*)`,
/// separated by commas; `{}` or empty text is the empty set.
PointSetDescription parseDescription(std::string_view text, Field f);
ZgPoint parsePoint(std::string_view text, Field f);
std::string printDescription(const PointSetDescription& s);

}  // namespace purisheaf::ziegler
