#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>

#include <gmpxx.h>

namespace purisheaf::exact {

class Scalar;

/// The base field: the rationals, or a prime field F_p (p < 2^31).
class Field {
 public:
  Field() = default;

  static Field rationals() { return Field{}; }
  static Field prime(std::uint64_t p);

  std::uint32_t characteristic() const noexcept { return p_; }
  bool isRational() const noexcept { return p_ == 0; }

  Scalar zero() const;
  Scalar one() const;
  Scalar fromInt(std::int64_t v) const;
  Scalar fromRational(std::int64_t num, std::int64_t den) const;
  Scalar fromMpq(const mpq_class& q) const;

  std::string name() const;

  friend bool operator==(Field, Field) = default;

 private:
  friend class Scalar;
  explicit Field(std::uint32_t p) : p_(p) {}
  std::uint32_t p_ = 0;
};

/// Exact element of a Field. Rationals keep a 64-bit fast path and promote to
/// GMP on overflow; residues are stored reduced in [0, p).
class Scalar {
 public:
  Scalar() = default;

  Field field() const;
  bool isZero() const noexcept { return !big_ && num_ == 0; }
  bool isOne() const noexcept { return !big_ && num_ == 1 && den_ == 1; }

  Scalar operator-() const;
  Scalar inverse() const;
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  friend bool operator==(const Scalar& a, const Scalar& b);

  /// Rational value (for F_p the representative in [0, p)).
  mpq_class toMpq() const;
  /// Residue for F_p scalars.
  std::uint64_t residue() const noexcept { return static_cast<std::uint64_t>(num_); }
  /// True when the value is an integer that fits in int64.
  bool isSmallInteger() const noexcept { return !big_ && den_ == 1; }
  std::int64_t smallNumerator() const noexcept { return num_; }

  std::string toString() const;

 private:
  friend class Field;

  static Scalar makeRational(__int128 num, __int128 den);
  static Scalar fromBig(mpq_class q);
  static Scalar residueOf(std::uint32_t p, std::uint64_t r);

  std::uint32_t p_ = 0;
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::shared_ptr<const mpq_class> big_;
};

}  // namespace purisheaf::exact
