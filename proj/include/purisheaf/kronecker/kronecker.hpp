#pragma once

#include <string>
#include <utility>
#include <vector>

#include "purisheaf/exact/klinear.hpp"
#include "purisheaf/sheafp1/sheaf.hpp"

namespace purisheaf::kronecker {

using exact::Field;
using exact::ScalarMatrix;
using sheaf::ClosedPoint;
using sheaf::CoherentSheaf;
using sheaf::SheafLabel;

/// Representation V1 => V0 of the Kronecker quiver; mapA, mapB are d0 x d1.
struct KroneckerRep {
  Field field;
  int d1 = 0;
  int d0 = 0;
  ScalarMatrix mapA, mapB;

  KroneckerRep() = default;
  KroneckerRep(Field f, int d1, int d0);
  KroneckerRep(ScalarMatrix a, ScalarMatrix b);
  bool isZero() const { return d0 == 0 && d1 == 0; }
  std::pair<int, int> dimensionVector() const { return {d1, d0}; }
};

struct RepLabel {
  enum class Kind { Preproj, Preinj, Regular };
  Kind kind = Kind::Preproj;
  int n = 0;
  ClosedPoint pt;
  int length = 0;

  static RepLabel preproj(int n) { return {Kind::Preproj, n, {}, 0}; }
  static RepLabel preinj(int n) { return {Kind::Preinj, n, {}, 0}; }
  static RepLabel regular(ClosedPoint pt, int m) { return {Kind::Regular, 0, std::move(pt), m}; }
  /// (d1, d0)
  std::pair<int, int> dimensionVector() const;
  std::string toString() const;
  friend bool operator==(const RepLabel& a, const RepLabel& b);
  friend bool operator<(const RepLabel& a, const RepLabel& b);
};

struct TiltImage {
  KroneckerRep deg0;  ///< Hom(O(1), F) => Hom(O, F)
  KroneckerRep deg1;  ///< Ext¹(O(1), F) => Ext¹(O, F)
};

/// Maps are precomposition with the sections (1, y) and (x, 1) of O(1).
TiltImage tilt(const CoherentSheaf& f);

KroneckerRep canonicalRep(const RepLabel& l, Field f);
KroneckerRep directSum(const KroneckerRep& a, const KroneckerRep& b);

/// Basis of Hom(r, s) as pairs (P1 : V1 -> W1, P0 : V0 -> W0).
std::vector<std::pair<ScalarMatrix, ScalarMatrix>> repHom(const KroneckerRep& r, const KroneckerRep& s);

/// Labels (sorted) from the minimal indices of the pencil and the Smith forms
/// of x·A - B and A - y·B. With `certify`, an explicit isomorphism to the
/// canonical direct sum is searched and a failure throws.
std::vector<RepLabel> decomposeRep(const KroneckerRep& r, bool certify = true);

/// Throws "not in the image of coherent sheaves" for disallowed pairs.
SheafLabel sheafLabelFromRep(const RepLabel& l, int degree);

/// tilt -> decomposeRep -> sheafLabelFromRep on both degrees.
std::vector<SheafLabel> decomposeViaTilt(const CoherentSheaf& f, bool certify = true);

}  // namespace purisheaf::kronecker
