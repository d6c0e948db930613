#pragma once

#include <string>
#include <utility>
#include <vector>

#include "purisheaf/exact/scalar.hpp"

namespace purisheaf::exact {

/// Coordinate rings of the two-chart cover of the projective line.
///   PolyU   = k[x]          (chart around 0)
///   PolyV   = k[y]          (chart around infinity)
///   Laurent = k[x, 1/x]     (overlap; y is identified with 1/x)
enum class Ring { PolyU, PolyV, Laurent };

std::string ringName(Ring r);
inline bool isEuclidean(Ring r) { return r != Ring::Laurent; }

/// A (Laurent) polynomial in one variable with coefficients in a Field.
/// Stored densely from the lowest nonzero exponent; zero has no coefficients.
class RingElement {
 public:
  RingElement() = default;
  RingElement(Field f, Ring r) : field_(f), ring_(r) {}

  static RingElement zero(Field f, Ring r) { return RingElement(f, r); }
  static RingElement one(Field f, Ring r) { return constant(f.one(), r); }
  static RingElement constant(const Scalar& c, Ring r);
  static RingElement monomial(const Scalar& c, int exponent, Ring r);
  static RingElement variable(Field f, Ring r) { return monomial(f.one(), 1, r); }
  /// Build from coefficients c[0] + c[1] t + ... (ascending, exponent offset `low`).
  static RingElement fromCoefficients(Field f, Ring r, std::vector<Scalar> c, int low = 0);
  static RingElement fromInts(Field f, Ring r, const std::vector<long>& c, int low = 0);

  Field field() const noexcept { return field_; }
  Ring ring() const noexcept { return ring_; }
  bool isZero() const noexcept { return c_.empty(); }
  bool isOne() const noexcept { return c_.size() == 1 && low_ == 0 && c_[0].isOne(); }
  /// Units of the ring: nonzero constants, or nonzero monomials over Laurent.
  bool isUnit() const noexcept;
  bool isConstant() const noexcept { return c_.empty() || (c_.size() == 1 && low_ == 0); }
  bool isMonomial() const noexcept { return c_.size() == 1; }

  /// Highest exponent; -1 for zero.
  int degree() const noexcept { return c_.empty() ? -1 : low_ + static_cast<int>(c_.size()) - 1; }
  /// Lowest exponent; 0 for zero.
  int lowExponent() const noexcept { return c_.empty() ? 0 : low_; }
  /// Number of stored coefficients (degree - low + 1).
  int span() const noexcept { return static_cast<int>(c_.size()); }
  Scalar coeff(int exponent) const;
  Scalar leadingCoeff() const;
  Scalar trailingCoeff() const;
  const std::vector<Scalar>& coefficients() const noexcept { return c_; }

  RingElement operator-() const;
  friend RingElement operator+(const RingElement& a, const RingElement& b);
  friend RingElement operator-(const RingElement& a, const RingElement& b);
  friend RingElement operator*(const RingElement& a, const RingElement& b);
  RingElement& operator+=(const RingElement& o) { return *this = *this + o; }
  RingElement& operator-=(const RingElement& o) { return *this = *this - o; }
  RingElement& operator*=(const RingElement& o) { return *this = *this * o; }
  RingElement scaled(const Scalar& s) const;
  /// Multiply by t^k. Negative k only allowed over Laurent (or when exact).
  RingElement shifted(int k) const;

  friend bool operator==(const RingElement& a, const RingElement& b);

  /// Monic normalization; over Laurent the power of x is also stripped.
  RingElement normalized() const;
  /// Over Laurent: the polynomial part with nonzero constant term (x-power stripped).
  RingElement stripLowPower() const;

  /// Same coefficients in another ring (caller guarantees exponents are legal).
  RingElement withRing(Ring r) const;
  /// Image in Laurent: identity for PolyU, y -> 1/x for PolyV.
  RingElement toLaurent() const;
  /// Reciprocal map x^k -> x^{-k} (used for Laurent -> PolyV conversion).
  RingElement reflected(Ring target) const;
  RingElement derivative() const;
  Scalar evaluate(const Scalar& t) const;

  std::string toString(const std::string& var = "") const;

 private:
  void trim();

  Field field_;
  Ring ring_ = Ring::PolyU;
  int low_ = 0;
  std::vector<Scalar> c_;
};

struct DivMod {
  RingElement quotient;
  RingElement remainder;
};

/// Euclidean division in k[t] (PolyU / PolyV, or Laurent elements with low >= 0).
DivMod divMod(const RingElement& a, const RingElement& b);
/// Exact division; throws if b does not divide a. Over Laurent, divisibility is
/// tested up to units (powers of x).
RingElement exactDiv(const RingElement& a, const RingElement& b);
bool divides(const RingElement& d, const RingElement& a);
/// Monic gcd (zero if both are zero). Over Laurent the x-power is stripped.
RingElement gcd(const RingElement& a, const RingElement& b);
RingElement lcm(const RingElement& a, const RingElement& b);

struct ExtGcd {
  RingElement g, s, t;  // s*a + t*b = g, g monic
};
ExtGcd extendedGcd(const RingElement& a, const RingElement& b);

/// Reduce a Laurent element modulo a polynomial m with m(0) != 0; the result is
/// a polynomial of degree < deg m (returned in Laurent ring). Works for
/// PolyU/PolyV inputs too (plain remainder).
RingElement reduceMod(const RingElement& a, const RingElement& m);
/// Inverse of a modulo m (monic, coprime); throws if not invertible.
RingElement inverseMod(const RingElement& a, const RingElement& m);

RingElement power(const RingElement& a, int e);

/// Monic reciprocal p^(t) = t^deg p * p(1/t), rescaled monic; returns 1 for p = t.
RingElement reciprocal(const RingElement& p);

}  // namespace purisheaf::exact
