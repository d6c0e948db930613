#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "purisheaf/homalg/homalg.hpp"

namespace purisheaf::purity {

using exact::Scalar;
using fpmod::ModuleMorphism;
using sheaf::ClosedPoint;
using sheaf::CoherentSheaf;
using sheaf::SheafLabel;
using sheaf::SheafMorphism;
using sheaf::ShortExactSeq;

struct CPureVerdict {
  bool pure = false;
  std::optional<SheafMorphism> section;  ///< C -> B with g∘s = id
};
CPureVerdict isCPure(const ShortExactSeq& s);

struct GPureVerdict {
  bool pure = false;
  bool splitU = false, splitV = false;
  std::optional<ModuleMorphism> retractionU, retractionV;
};
GPureVerdict isGPure(const ShortExactSeq& s);

/// Tors(pt, m) for the points in the invariant factors of the six chart
/// modules, m up to one more than the largest occurring multiplicity.
std::vector<SheafLabel> torsionTestSet(const ShortExactSeq& s);

struct CriterionVerdict {
  bool pure = true;
  std::vector<SheafLabel> testSet;
  std::vector<SheafLabel> failing;
  /// Smallest failing length at each failing point.
  std::vector<SheafLabel> minimalFailing;
};
/// T ⊗ f stays injective for every test sheaf T.
CriterionVerdict gPureViaTensor(const ShortExactSeq& s);
/// 0 -> Hom(T, A) -> Hom(T, B) -> Hom(T, C) -> 0 exact for every test sheaf T.
CriterionVerdict gPureViaTorsionHom(const ShortExactSeq& s);

struct PurityReport {
  bool cPure = false;
  bool gPure = false;
  bool tensorCriterion = false;
  bool homCriterion = false;
  bool criteriaAgreement = false;  ///< the three g-tests agree and cPure implies gPure
  CPureVerdict c;
  GPureVerdict g;
  CriterionVerdict viaTensor, viaHom;
};
PurityReport purityReport(const ShortExactSeq& s);

struct SampledExtension {
  ShortExactSeq seq;                  ///< 0 -> a -> B -> c -> 0
  std::vector<Scalar> classCoordinates;  ///< in the ext1(c, a) class basis
  bool splitClass = true;             ///< all coordinates zero
};
/// Pseudorandom class of Ext¹(c, a) drawn from `seed` (the zero class with
/// probability 1/5), realized by a pushout.
SampledExtension randomExtension(const CoherentSheaf& a, const CoherentSheaf& c, std::uint64_t seed);

/// 0 -> O(a) -> O(b) ⊕ O(c) -> O(d) -> 0 for a < b <= c < d, a + d = b + c,
/// on chart U given by f = (x^(b-a), 1) and g = (1, -x^(b-a)).
ShortExactSeq lineBundleSequence(exact::Field f, int a, int b, int c, int d);

}  // namespace purisheaf::purity
