#pragma once

#include <string>
#include <vector>

#include <gmpxx.h>

namespace purisheaf::twopoint {

/// Indecomposable species over Z_(p): Z/(p^k), the Prüfer group, Q, the
/// p-adic completion, its fraction field, and a free module of rank r.
struct Summand {
  enum class Kind { Cyc, PruferZ, RatQ, Zhat, Qhat, FreeFin };
  Kind kind = Kind::RatQ;
  int k = 0;  ///< Cyc exponent or FreeFin rank

  static Summand cyc(int k);
  static Summand freeFin(int r);
  std::string toString() const;
  friend auto operator<=>(const Summand&, const Summand&) = default;
};

/// Finite direct sum, flattened and sorted; FreeFin ranks are merged.
class Species {
 public:
  Species() = default;
  Species(std::initializer_list<Summand> s);
  explicit Species(std::vector<Summand> s);

  static Species zero() { return {}; }
  const std::vector<Summand>& summands() const { return s_; }
  bool isZero() const { return s_.empty(); }
  bool isQSpace() const;
  bool isTorsion() const;
  bool isTorsionFree() const;
  bool isPureInjective() const;
  std::string toString() const;
  friend Species operator+(const Species& a, const Species& b);
  friend bool operator==(const Species&, const Species&) = default;

 private:
  void normalize();
  std::vector<Summand> s_;
};

Species tensorWithQ(const Species& s);

/// The map M(X) -> M(Y) is the canonical one for its tag:
///  toZero: M(Y) = 0;  identity: M(X) = M(Y) a Q-space;
///  inclusion: M(X) torsion-free, M(X) ⊗ Q a summand of M(Y);
///  localizationUnit: M(Y) = M(X) ⊗ Q and m |-> m ⊗ 1.
enum class Restriction { ToZero, Identity, Inclusion, LocalizationUnit };
std::string toString(Restriction r);

class TwoPointSheaf {
 public:
  /// Throws MathError when the tag does not fit the species pair.
  TwoPointSheaf(Species x, Species y, Restriction res);
  const Species& secX() const { return x_; }
  const Species& secY() const { return y_; }
  Restriction res() const { return res_; }
  std::string toString() const;

 private:
  Species x_, y_;
  Restriction res_;
};

bool isQuasicoherent(const TwoPointSheaf& m);
bool isFlasque(const TwoPointSheaf& m);
bool restrictionSplits(const TwoPointSheaf& m);
/// Skyscraper at the closed point with a pure-injective stalk, or the
/// skyscraper at the generic point (identity on a Q-space).
bool isGPureInjectiveCandidate(const TwoPointSheaf& m);

struct TableRow {
  std::string xLabel, yLabel;
  TwoPointSheaf sheaf;
  int cbRank;     ///< stored
  bool injective;  ///< stored
  bool gPureInjective;  ///< stored, compared against the predicate
  bool quasicoherent;   ///< stored, compared against the predicate
  bool computedGPureInjective = false;
  bool computedQuasicoherent = false;
  bool flasque = false;
};

/// The seven points of Zg(O_X-Mod) for X = Spec Z_(p). The Z/(p^k) row is
/// checked for k = 1..6; a mismatch throws.
std::vector<TableRow> zpTable();
std::string formatTable(const std::vector<TableRow>& rows);

// ---------- finitely presented triples over Z_(p) ----------

/// Exact rational whose denominator is prime to p.
bool inZp(const mpq_class& q, long p);
/// p-adic valuation, q != 0.
int valuation(const mpq_class& q, long p);

using QMatrix = std::vector<std::vector<mpq_class>>;

/// (M(X), M(Y), res) with M(X) = Z_(p)^free ⊕ ⊕ Z/(p^e): one generator per
/// entry of `exps` (0 = free), M(Y) = Q^dimY, res a dimY x |exps| matrix that
/// vanishes on torsion generators.
struct Triple {
  long p = 2;
  std::vector<int> exps;
  int dimY = 0;
  QMatrix res;

  Triple(long p, std::vector<int> exps, int dimY, QMatrix res);
  int nX() const { return static_cast<int>(exps.size()); }
};

struct TripleMorphism {
  Triple source, target;
  QMatrix fX;  ///< target.nX x source.nX over Z_(p)
  QMatrix fY;  ///< target.dimY x source.dimY over Q
  /// Checks Z_(p) entries, well-definedness on torsion and res∘fX = fY∘res.
  TripleMorphism(Triple source, Triple target, QMatrix fX, QMatrix fY);
};

bool isInjective(const TripleMorphism& f);

struct TripleVerdict {
  bool cPure = false;  ///< a retraction of triples exists
  bool gPure = false;  ///< the global sections component splits
  QMatrix retractionX, retractionY;  ///< when cPure
};
/// Throws MathError if f is not injective in both components.
TripleVerdict isCPureMonoTriple(const TripleMorphism& f);

/// (0, Q^n) -> (Z_(p)^n, Q^n) with fY = c·I: g-pure, never c-pure.
TripleMorphism witnessFamily(long p, int n, const mpq_class& c);

}  // namespace purisheaf::twopoint
