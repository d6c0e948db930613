#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "purisheaf/sheafp1/sheaf.hpp"

namespace purisheaf::homalg {

using exact::Field;
using exact::RingMatrix;
using exact::Scalar;
using sheaf::CoherentSheaf;
using sheaf::SheafMorphism;
using sheaf::ShortExactSeq;

/// A global section: compatible column vectors in the generators of mU and mV.
struct SectionPair {
  RingMatrix u;
  RingMatrix v;
};

struct CechState;

/// Čech data of a sheaf on the standard two-chart cover.
class CechDatum {
 public:
  int h0() const { return static_cast<int>(h0Basis_.size()); }
  int h1() const { return static_cast<int>(h1Basis_.size()); }
  const std::vector<SectionPair>& h0Basis() const { return h0Basis_; }
  /// Coset representatives in the overlap, as Laurent columns over the mU generators.
  const std::vector<RingMatrix>& h1Basis() const { return h1Basis_; }
  /// Free overlap exponents used: [-w, w].
  int windowUsed() const { return window_; }

  /// Class of an overlap element (Laurent column over the mU generators).
  /// Throws when the element reaches beyond the computed window.
  std::vector<Scalar> h1Coordinates(const RingMatrix& overlapElement) const;
  /// Coordinates of a global section in h0Basis (throws if not a section).
  std::vector<Scalar> h0Coordinates(const SectionPair& s) const;

 private:
  friend CechDatum cech(const CoherentSheaf& f, int minWindow);
  std::vector<SectionPair> h0Basis_;
  std::vector<RingMatrix> h1Basis_;
  int window_ = 0;
  std::shared_ptr<const CechState> state_;
};

/// Window starts at max(D + 2, minWindow) and widens until stable.
CechDatum cech(const CoherentSheaf& f, int minWindow = 0);
int eulerChar(const CoherentSheaf& f);

struct HomState;

/// k-basis of the global morphisms F -> G.
class HomSpace {
 public:
  int dimension() const { return static_cast<int>(basis_.size()); }
  const std::vector<SheafMorphism>& basis() const { return basis_; }
  /// Coordinates of a morphism F -> G in the basis.
  std::vector<Scalar> coordinates(const SheafMorphism& f) const;

 private:
  friend HomSpace globalHom(const CoherentSheaf& f, const CoherentSheaf& g);
  std::vector<SheafMorphism> basis_;
  std::shared_ptr<const HomState> state_;
};

HomSpace globalHom(const CoherentSheaf& f, const CoherentSheaf& g);

struct ExtState;

struct ExtData {
  int dimension = 0;
  int resolutionTwist = 0;      ///< N: P = O(-N)^s -> F
  int twistedH1 = 0;            ///< h1(G(N)), zero by construction
  std::vector<SheafMorphism> classes;  ///< cocycles K -> G spanning Ext¹
  std::vector<ShortExactSeq> extensions;  ///< 0 -> G -> E -> F -> 0, one per class
  std::shared_ptr<const ExtState> state;
};

/// Ext¹(F, G) from a two-term resolution of F by line bundles.
ExtData ext1(const CoherentSheaf& f, const CoherentSheaf& g, bool buildExtensions = true);
int extDimension(const CoherentSheaf& f, const CoherentSheaf& g);
/// Pushout extension 0 -> G -> E -> F -> 0 of the class sum_i c_i·classes[i];
/// the zero vector gives the split sequence.
ShortExactSeq extensionOfClass(const ExtData& d, const std::vector<Scalar>& coefficients);

/// Searches for an isomorphism from the labeled direct sum onto F.
bool certifyDecomposition(const CoherentSheaf& f, const std::vector<sheaf::SheafLabel>& labels);

/// No line-bundle summand (structural test through the decomposition).
bool isInD(const CoherentSheaf& f);
/// Hom(F, O(n)) = 0 and Ext¹(O(n), F) = 0 for |n| <= D + 2.
bool isInDWindowed(const CoherentSheaf& f);

}  // namespace purisheaf::homalg
