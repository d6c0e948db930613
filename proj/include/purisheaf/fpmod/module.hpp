#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "purisheaf/exact/matrix.hpp"

namespace purisheaf::fpmod {

using exact::Field;
using exact::Ring;
using exact::RingElement;
using exact::RingMatrix;

/// m ≅ R^freeRank ⊕ ⊕ R/(d_i) with d_1 | d_2 | ... monic nonunits.
struct CyclicDecomposition {
  int freeRank = 0;
  std::vector<RingElement> invariantFactors;
  bool isZero() const { return freeRank == 0 && invariantFactors.empty(); }
  friend bool operator==(const CyclicDecomposition&, const CyclicDecomposition&) = default;
};

/// Coordinates adapted to the cyclic decomposition. Coordinate i < torsion()
/// lives in R/(factors[i]); the remaining ones are free.
struct NormalForm {
  std::vector<RingElement> factors;
  int freeRank = 0;
  RingMatrix toNormal;    ///< n x g: old generator coordinates -> normalized coordinates
  RingMatrix fromNormal;  ///< g x n: normalized generator -> old coordinates
  int torsion() const { return static_cast<int>(factors.size()); }
  int size() const { return torsion() + freeRank; }
  /// Modulus of coordinate i (zero for free coordinates).
  RingElement modulus(int i) const;
};

/// Finitely presented module coker(R^c -> R^g) over one of the coordinate rings.
class FPModule {
 public:
  FPModule() = default;
  explicit FPModule(RingMatrix relations);

  static FPModule free(Field f, Ring r, int n);
  static FPModule cyclic(const RingElement& d);
  static FPModule zero(Field f, Ring r) { return free(f, r, 0); }
  /// R^free ⊕ ⊕ R/(d_i) presented diagonally.
  static FPModule fromDecomposition(Field f, Ring r, const CyclicDecomposition& d);

  Field field() const { return rel_.field(); }
  Ring ring() const { return rel_.ring(); }
  int generators() const { return rel_.rows(); }
  const RingMatrix& relations() const { return rel_; }
  const NormalForm& normalForm() const { return *nf_; }
  CyclicDecomposition decomposition() const;
  bool isZero() const { return nf_->size() == 0; }
  /// k-dimension when finite (no free part), otherwise -1.
  int kDimension() const;

  /// Whether every column of `v` (g rows) is zero in the module.
  bool isZeroElements(const RingMatrix& v) const;
  /// Normalized coordinates of the columns of v, reduced modulo the factors.
  RingMatrix reduce(const RingMatrix& v) const;

 private:
  RingMatrix rel_;
  std::shared_ptr<const NormalForm> nf_;
};

CyclicDecomposition decomposeModule(const FPModule& m);

/// Module map given on generators: column j is the image of generator j.
class ModuleMorphism {
 public:
  ModuleMorphism() = default;
  /// Certifies that relations of the source are sent into relations of the target.
  ModuleMorphism(FPModule source, FPModule target, RingMatrix matrix);

  static ModuleMorphism identity(const FPModule& m);
  static ModuleMorphism zero(const FPModule& s, const FPModule& t);

  const FPModule& source() const { return src_; }
  const FPModule& target() const { return tgt_; }
  const RingMatrix& matrix() const { return mat_; }

  friend ModuleMorphism operator*(const ModuleMorphism& g, const ModuleMorphism& f);  // g ∘ f
  friend ModuleMorphism operator+(const ModuleMorphism& a, const ModuleMorphism& b);
  ModuleMorphism scaled(const RingElement& c) const;
  /// Equality as maps (difference lands in the target relations).
  bool equals(const ModuleMorphism& o) const;
  bool isZero() const;

 private:
  FPModule src_, tgt_;
  RingMatrix mat_;
};

/// Check without throwing that `matrix` defines a morphism.
bool isMorphismMatrix(const FPModule& s, const FPModule& t, const RingMatrix& matrix);

struct KernelData {
  FPModule module;
  ModuleMorphism inclusion;
};
struct CokernelData {
  FPModule module;
  ModuleMorphism projection;
  RingMatrix lift;  ///< target generators of lifts of the cokernel generators
};
KernelData kernel(const ModuleMorphism& f);
CokernelData cokernel(const ModuleMorphism& f);
/// Image presented as a submodule of the target.
KernelData image(const ModuleMorphism& f);
bool isInjective(const ModuleMorphism& f);
bool isSurjective(const ModuleMorphism& f);

struct HomData {
  FPModule module;                          ///< Hom_R(m, n) presented diagonally
  std::vector<ModuleMorphism> generators;   ///< module generators as morphisms
  std::optional<std::vector<ModuleMorphism>> kBasis;  ///< when k-finite
};
HomData homModule(const FPModule& m, const FPModule& n);

FPModule tensorModule(const FPModule& m, const FPModule& n);
/// f ⊗ id_t
ModuleMorphism tensorMorphism(const ModuleMorphism& f, const FPModule& t);

struct SplitResult {
  bool split = false;
  std::optional<ModuleMorphism> retraction;
};
/// Requires f injective (throws "not a monomorphism").
SplitResult isSplitMono(const ModuleMorphism& f);

/// Same presentation over Laurent (y -> 1/x for PolyV).
FPModule baseChangeLaurent(const FPModule& m);
ModuleMorphism baseChangeLaurent(const ModuleMorphism& f);

FPModule directSum(const FPModule& a, const FPModule& b);
ModuleMorphism directSum(const ModuleMorphism& a, const ModuleMorphism& b);

}  // namespace purisheaf::fpmod
