#pragma once

#include <string>
#include <vector>

#include "purisheaf/fpmod/module.hpp"

namespace purisheaf::sheaf {

using exact::Field;
using exact::Ring;
using exact::RingElement;
using exact::RingMatrix;
using fpmod::FPModule;
using fpmod::ModuleMorphism;

/// Closed point of P^1: a monic irreducible p in k[x], or the point at infinity.
class ClosedPoint {
 public:
  ClosedPoint() = default;
  /// Normalizes to monic and rejects reducible polynomials.
  static ClosedPoint finite(const RingElement& p);
  static ClosedPoint infinity(Field f);

  bool isInfinity() const noexcept { return inf_; }
  const RingElement& poly() const { return p_; }  ///< k[x] polynomial (y for infinity)
  Field field() const { return p_.field(); }
  int degree() const { return inf_ ? 1 : p_.degree(); }
  /// Local parameter on chart U (x-side) or V (y-side).
  bool onU() const { return !inf_; }
  bool onV() const { return inf_ || !p_.coeff(0).isZero(); }
  /// The irreducible in k[y] cutting out the point on chart V.
  RingElement vPoly() const;

  std::string toString() const;
  friend bool operator==(const ClosedPoint& a, const ClosedPoint& b);
  friend bool operator<(const ClosedPoint& a, const ClosedPoint& b);

 private:
  bool inf_ = false;
  RingElement p_;
};

/// A coherent sheaf on P^1 given by chart modules glued over the overlap:
/// phi : mU ⊗ L -> mV ⊗ L and its inverse psi, L = k[x, 1/x].
class CoherentSheaf {
 public:
  CoherentSheaf() = default;
  /// Certifies both glue matrices are morphisms and mutually inverse.
  CoherentSheaf(FPModule mU, FPModule mV, RingMatrix phi, RingMatrix psi);

  static CoherentSheaf zero(Field f);

  Field field() const { return mU_.field(); }
  const FPModule& mU() const { return mU_; }
  const FPModule& mV() const { return mV_; }
  const RingMatrix& phi() const { return phi_; }
  const RingMatrix& psi() const { return psi_; }
  const FPModule& overlapU() const { return lU_; }  ///< mU ⊗ L
  const FPModule& overlapV() const { return lV_; }  ///< mV ⊗ L
  bool isZero() const { return mU_.isZero() && mV_.isZero(); }
  /// Largest |exponent| in presentations and glue.
  int presentationDegree() const;

 private:
  FPModule mU_, mV_, lU_, lV_;
  RingMatrix phi_, psi_;
};

/// Chart maps commuting with the glue.
class SheafMorphism {
 public:
  SheafMorphism() = default;
  SheafMorphism(CoherentSheaf source, CoherentSheaf target, RingMatrix fU, RingMatrix fV);

  static SheafMorphism identity(const CoherentSheaf& f);
  static SheafMorphism zero(const CoherentSheaf& s, const CoherentSheaf& t);

  const CoherentSheaf& source() const { return src_; }
  const CoherentSheaf& target() const { return tgt_; }
  const RingMatrix& fU() const { return fU_; }
  const RingMatrix& fV() const { return fV_; }
  ModuleMorphism onU() const;
  ModuleMorphism onV() const;

  friend SheafMorphism operator*(const SheafMorphism& g, const SheafMorphism& f);  // g ∘ f
  friend SheafMorphism operator+(const SheafMorphism& a, const SheafMorphism& b);
  SheafMorphism scaled(const exact::Scalar& c) const;
  bool equals(const SheafMorphism& o) const;
  bool isZero() const;

 private:
  CoherentSheaf src_, tgt_;
  RingMatrix fU_, fV_;
};

/// 0 -> A -f-> B -g-> C -> 0, certified exact on both charts.
class ShortExactSeq {
 public:
  ShortExactSeq() = default;
  ShortExactSeq(SheafMorphism f, SheafMorphism g);

  const SheafMorphism& f() const { return f_; }
  const SheafMorphism& g() const { return g_; }
  const CoherentSheaf& a() const { return f_.source(); }
  const CoherentSheaf& b() const { return f_.target(); }
  const CoherentSheaf& c() const { return g_.target(); }

 private:
  SheafMorphism f_, g_;
};

/// Whether the chart sequence is exact (f injective, g surjective, im f = ker g).
bool isExactOnCharts(const SheafMorphism& f, const SheafMorphism& g);

CoherentSheaf lineBundle(Field f, int n);
CoherentSheaf torsionSheaf(const ClosedPoint& pt, int length);
CoherentSheaf twist(const CoherentSheaf& f, int n);
SheafMorphism twist(const SheafMorphism& f, int n);
CoherentSheaf directSum(const CoherentSheaf& a, const CoherentSheaf& b);
CoherentSheaf directSum(const std::vector<CoherentSheaf>& parts, Field f);
SheafMorphism directSum(const SheafMorphism& a, const SheafMorphism& b);
CoherentSheaf tensorSheaf(const CoherentSheaf& a, const CoherentSheaf& b);
SheafMorphism tensorMorphism(const SheafMorphism& f, const CoherentSheaf& t);  ///< f ⊗ id_t

/// Re-present a sheaf through chart automorphisms: new coordinates are aU·old
/// and aV·old (aU, aV unimodular); relations are also mixed by cU, cV.
CoherentSheaf represent(const CoherentSheaf& f, const RingMatrix& aU, const RingMatrix& aV, const RingMatrix& cU,
                        const RingMatrix& cV);

struct KerCokerImage {
  CoherentSheaf kernel, image, cokernel;
  SheafMorphism kernelInclusion;   ///< kernel -> source
  SheafMorphism imageInclusion;    ///< image -> target
  SheafMorphism coimage;           ///< source -> image
  SheafMorphism cokernelProjection;  ///< target -> cokernel
  RingMatrix cokernelLiftU, cokernelLiftV;  ///< target coordinates of the cokernel generators
};
KerCokerImage kernelCokernelImage(const SheafMorphism& f);

/// Isomorphic presentation with diagonal chart modules, the free part of the
/// glue reduced to diag(x^d) and torsion glue entries reduced.
struct SimplifiedSheaf {
  CoherentSheaf sheaf;
  SheafMorphism toOriginal;    ///< sheaf -> original
  SheafMorphism fromOriginal;  ///< original -> sheaf
};
SimplifiedSheaf simplifyPresentation(const CoherentSheaf& f);

/// Section of O(1) chosen by (U-part, V-part) polynomials, e.g. (1, y) or (x, 1),
/// as a morphism O(n) -> O(n+1) or F(n) -> F(n+1).
SheafMorphism multiplyBySection(const CoherentSheaf& f, int n, const RingElement& sU, const RingElement& sV);

/// Indecomposable labels: LB(n) or Tors(pt, m).
struct SheafLabel {
  enum class Kind { LB, Tors };
  Kind kind = Kind::LB;
  int n = 0;
  ClosedPoint pt;
  int m = 0;

  static SheafLabel lb(int n) { return {Kind::LB, n, {}, 0}; }
  static SheafLabel tors(ClosedPoint pt, int m) { return {Kind::Tors, 0, std::move(pt), m}; }
  std::string toString() const;
  friend bool operator==(const SheafLabel& a, const SheafLabel& b);
  friend bool operator<(const SheafLabel& a, const SheafLabel& b);
};

CoherentSheaf sheafFromLabel(const SheafLabel& l, Field f);

/// Krull-Schmidt decomposition: torsion from the chart modules, line bundles
/// from the jumps of h0(F(n)).
std::vector<SheafLabel> decomposeSheaf(const CoherentSheaf& f);

}  // namespace purisheaf::sheaf
