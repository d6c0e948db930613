#include "purisheaf/exact/scalar.hpp"

#include <limits>
#include <numeric>

#include "purisheaf/error.hpp"

namespace purisheaf::exact {
namespace {

constexpr __int128 kI64Max = std::numeric_limits<std::int64_t>::max();
constexpr __int128 kI64Min = std::numeric_limits<std::int64_t>::min();

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

mpz_class mpzFrom128(__int128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1
                            : static_cast<unsigned __int128>(v);
  mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
  mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

std::uint64_t powMod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

bool isPrime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

[[noreturn]] void fieldMismatch() { throw MathError("exactlinear", "scalar field mismatch"); }

}  // namespace

Field Field::prime(std::uint64_t p) {
  if (p >= (1ULL << 31) || !isPrime(p))
    throw MathError("exactlinear", "field characteristic must be a prime below 2^31");
  return Field(static_cast<std::uint32_t>(p));
}

Scalar Field::zero() const { return fromInt(0); }
Scalar Field::one() const { return fromInt(1); }

Scalar Field::fromInt(std::int64_t v) const {
  if (p_ == 0) return Scalar::makeRational(v, 1);
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return Scalar::residueOf(p_, static_cast<std::uint64_t>(r));
}

Scalar Field::fromRational(std::int64_t num, std::int64_t den) const {
  if (den == 0) throw MathError("exactlinear", "division by zero");
  if (p_ == 0) return Scalar::makeRational(num, den);
  return fromInt(num) / fromInt(den);
}

Scalar Field::fromMpq(const mpq_class& q) const {
  if (p_ == 0) return Scalar::fromBig(q);
  mpz_class n = q.get_num() % p_;
  mpz_class d = q.get_den() % p_;
  if (n < 0) n += p_;
  if (d == 0) throw MathError("exactlinear", "denominator divisible by the characteristic");
  return Scalar::residueOf(p_, n.get_ui()) / Scalar::residueOf(p_, d.get_ui());
}

std::string Field::name() const {
  return p_ == 0 ? std::string("Q") : "F" + std::to_string(p_);
}

Field Scalar::field() const { return Field(p_); }

Scalar Scalar::residueOf(std::uint32_t p, std::uint64_t r) {
  Scalar s;
  s.p_ = p;
  s.num_ = static_cast<std::int64_t>(r % p);
  return s;
}

Scalar Scalar::makeRational(__int128 num, __int128 den) {
  if (den == 0) throw MathError("exactlinear", "division by zero");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  __int128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (num == 0) den = 1;
  if (num <= kI64Max && num >= kI64Min && den <= kI64Max) {
    Scalar s;
    s.num_ = static_cast<std::int64_t>(num);
    s.den_ = static_cast<std::int64_t>(den);
    return s;
  }
  mpq_class q(mpzFrom128(num), mpzFrom128(den));
  q.canonicalize();
  return fromBig(std::move(q));
}

Scalar Scalar::fromBig(mpq_class q) {
  q.canonicalize();
  if (q.get_num().fits_slong_p() && q.get_den().fits_slong_p()) {
    Scalar s;
    s.num_ = q.get_num().get_si();
    s.den_ = q.get_den().get_si();
    return s;
  }
  Scalar s;
  s.big_ = std::make_shared<const mpq_class>(std::move(q));
  return s;
}

mpq_class Scalar::toMpq() const {
  if (big_) return *big_;
  return mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
}

Scalar Scalar::operator-() const {
  if (p_ != 0) return residueOf(p_, num_ == 0 ? 0 : p_ - num_);
  if (big_) return fromBig(-*big_);
  return makeRational(-static_cast<__int128>(num_), den_);
}

Scalar Scalar::inverse() const {
  if (isZero()) throw MathError("exactlinear", "division by zero");
  if (p_ != 0) return residueOf(p_, powMod(num_, p_ - 2, p_));
  if (big_) return fromBig(1 / *big_);
  return makeRational(den_, num_);
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  if (a.p_ != b.p_) fieldMismatch();
  if (a.p_ != 0) return Scalar::residueOf(a.p_, (a.num_ + b.num_) % a.p_);
  if (a.big_ || b.big_) return Scalar::fromBig(a.toMpq() + b.toMpq());
  if (a.den_ == 1 && b.den_ == 1)
    return Scalar::makeRational(static_cast<__int128>(a.num_) + b.num_, 1);
  return Scalar::makeRational(static_cast<__int128>(a.num_) * b.den_ +
                                  static_cast<__int128>(b.num_) * a.den_,
                              static_cast<__int128>(a.den_) * b.den_);
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
  if (a.p_ != b.p_) fieldMismatch();
  if (a.p_ != 0)
    return Scalar::residueOf(
        a.p_, static_cast<std::uint64_t>(a.num_) * static_cast<std::uint64_t>(b.num_) % a.p_);
  if (a.big_ || b.big_) return Scalar::fromBig(a.toMpq() * b.toMpq());
  return Scalar::makeRational(static_cast<__int128>(a.num_) * b.num_,
                              static_cast<__int128>(a.den_) * b.den_);
}

Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.p_ != b.p_) return false;
  if (a.big_ || b.big_) {
    if (static_cast<bool>(a.big_) != static_cast<bool>(b.big_)) return false;
    return *a.big_ == *b.big_;
  }
  return a.num_ == b.num_ && a.den_ == b.den_;
}

std::string Scalar::toString() const {
  if (big_) return big_->get_str();
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

}  // namespace purisheaf::exact
