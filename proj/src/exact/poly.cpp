#include "purisheaf/exact/poly.hpp"

#include <algorithm>
#include <sstream>

#include "purisheaf/error.hpp"

namespace purisheaf::exact {

std::string ringName(Ring r) {
  switch (r) {
    case Ring::PolyU: return "k[x]";
    case Ring::PolyV: return "k[y]";
    case Ring::Laurent: return "k[x,1/x]";
  }
  return "?";
}

namespace {

void requireCompatible(const RingElement& a, const RingElement& b) {
  if (a.ring() != b.ring())
    throw MathError("exactlinear", "ring mismatch: " + ringName(a.ring()) + " vs " + ringName(b.ring()));
  if (!(a.field() == b.field())) throw MathError("exactlinear", "field mismatch");
}

}  // namespace

RingElement RingElement::constant(const Scalar& c, Ring r) {
  RingElement e(c.field(), r);
  if (!c.isZero()) e.c_.push_back(c);
  return e;
}

RingElement RingElement::monomial(const Scalar& c, int exponent, Ring r) {
  if (exponent < 0 && r != Ring::Laurent)
    throw MathError("exactlinear", "negative exponent outside the Laurent ring");
  RingElement e(c.field(), r);
  if (!c.isZero()) {
    e.c_.push_back(c);
    e.low_ = exponent;
  }
  return e;
}

RingElement RingElement::fromCoefficients(Field f, Ring r, std::vector<Scalar> c, int low) {
  if (low < 0 && r != Ring::Laurent)
    throw MathError("exactlinear", "negative exponent outside the Laurent ring");
  RingElement e(f, r);
  e.c_ = std::move(c);
  e.low_ = low;
  e.trim();
  return e;
}

RingElement RingElement::fromInts(Field f, Ring r, const std::vector<long>& c, int low) {
  std::vector<Scalar> s;
  s.reserve(c.size());
  for (long v : c) s.push_back(f.fromInt(v));
  return fromCoefficients(f, r, std::move(s), low);
}

void RingElement::trim() {
  std::size_t lead = 0;
  while (lead < c_.size() && c_[lead].isZero()) ++lead;
  if (lead == c_.size()) {
    c_.clear();
    low_ = 0;
    return;
  }
  while (c_.back().isZero()) c_.pop_back();
  if (lead > 0) {
    c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
    low_ += static_cast<int>(lead);
  }
}

bool RingElement::isUnit() const noexcept {
  if (c_.empty()) return false;
  if (ring_ == Ring::Laurent) return c_.size() == 1;
  return c_.size() == 1 && low_ == 0;
}

Scalar RingElement::coeff(int exponent) const {
  int i = exponent - low_;
  if (c_.empty() || i < 0 || i >= static_cast<int>(c_.size())) return field_.zero();
  return c_[static_cast<std::size_t>(i)];
}

Scalar RingElement::leadingCoeff() const { return c_.empty() ? field_.zero() : c_.back(); }
Scalar RingElement::trailingCoeff() const { return c_.empty() ? field_.zero() : c_.front(); }

RingElement RingElement::operator-() const {
  RingElement r = *this;
  for (auto& s : r.c_) s = -s;
  return r;
}

RingElement operator+(const RingElement& a, const RingElement& b) {
  requireCompatible(a, b);
  if (a.isZero()) return b;
  if (b.isZero()) return a;
  int lo = std::min(a.low_, b.low_);
  int hi = std::max(a.degree(), b.degree());
  std::vector<Scalar> c(static_cast<std::size_t>(hi - lo + 1), a.field_.zero());
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i + static_cast<std::size_t>(a.low_ - lo)] = a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i + static_cast<std::size_t>(b.low_ - lo)] += b.c_[i];
  RingElement r(a.field_, a.ring_);
  r.c_ = std::move(c);
  r.low_ = lo;
  r.trim();
  return r;
}

RingElement operator-(const RingElement& a, const RingElement& b) { return a + (-b); }

RingElement operator*(const RingElement& a, const RingElement& b) {
  requireCompatible(a, b);
  if (a.isZero() || b.isZero()) return RingElement(a.field_, a.ring_);
  std::vector<Scalar> c(a.c_.size() + b.c_.size() - 1, a.field_.zero());
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].isZero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      if (b.c_[j].isZero()) continue;
      c[i + j] += a.c_[i] * b.c_[j];
    }
  }
  RingElement r(a.field_, a.ring_);
  r.c_ = std::move(c);
  r.low_ = a.low_ + b.low_;
  r.trim();
  return r;
}

RingElement RingElement::scaled(const Scalar& s) const {
  if (s.isZero()) return RingElement(field_, ring_);
  RingElement r = *this;
  for (auto& v : r.c_) v *= s;
  return r;
}

RingElement RingElement::shifted(int k) const {
  if (c_.empty()) return *this;
  RingElement r = *this;
  r.low_ += k;
  if (r.low_ < 0 && ring_ != Ring::Laurent)
    throw MathError("exactlinear", "shift produced a negative exponent");
  return r;
}

bool operator==(const RingElement& a, const RingElement& b) {
  return a.ring_ == b.ring_ && a.field_ == b.field_ && a.low_ == b.low_ && a.c_ == b.c_;
}

RingElement RingElement::normalized() const {
  if (c_.empty()) return *this;
  RingElement r = scaled(leadingCoeff().inverse());
  if (ring_ == Ring::Laurent) r.low_ = 0;
  return r;
}

RingElement RingElement::stripLowPower() const {
  RingElement r = *this;
  if (!r.c_.empty()) r.low_ = 0;
  return r;
}

RingElement RingElement::withRing(Ring r) const {
  if (r != Ring::Laurent && lowExponent() < 0)
    throw MathError("exactlinear", "element has negative exponents");
  RingElement e = *this;
  e.ring_ = r;
  return e;
}

RingElement RingElement::toLaurent() const {
  if (ring_ == Ring::PolyV) return reflected(Ring::Laurent);
  return withRing(Ring::Laurent);
}

RingElement RingElement::reflected(Ring target) const {
  RingElement r(field_, target);
  if (c_.empty()) return r;
  r.c_.assign(c_.rbegin(), c_.rend());
  r.low_ = -degree();
  if (r.low_ < 0 && target != Ring::Laurent)
    throw MathError("exactlinear", "reflection produced negative exponents");
  return r;
}

RingElement RingElement::derivative() const {
  RingElement r(field_, ring_);
  if (c_.empty()) return r;
  r.c_.reserve(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i)
    r.c_.push_back(c_[i] * field_.fromInt(low_ + static_cast<int>(i)));
  r.low_ = low_ - 1;
  // the exponent-0 coefficient is multiplied by 0, so trimming restores low >= 0
  r.trim();
  return r;
}

Scalar RingElement::evaluate(const Scalar& t) const {
  if (c_.empty()) return field_.zero();
  Scalar acc = field_.zero();
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
  Scalar base = field_.one();
  int e = low_;
  Scalar m = e >= 0 ? t : t.inverse();
  for (int i = 0; i < std::abs(e); ++i) base *= m;
  return acc * base;
}

std::string RingElement::toString(const std::string& varIn) const {
  std::string var = varIn.empty() ? (ring_ == Ring::PolyV ? "y" : "x") : varIn;
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = static_cast<int>(c_.size()) - 1; i >= 0; --i) {
    const Scalar& s = c_[static_cast<std::size_t>(i)];
    if (s.isZero()) continue;
    int e = low_ + i;
    std::string cs = s.toString();
    bool neg = !cs.empty() && cs[0] == '-' && s.field().isRational();
    if (neg) cs = cs.substr(1);
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    bool unitCoeff = cs == "1";
    if (e == 0) {
      os << cs;
    } else {
      if (!unitCoeff) os << (cs.find('/') != std::string::npos ? "(" + cs + ")" : cs) << "*";
      os << var;
      if (e != 1) os << "^" << (e < 0 ? "(" + std::to_string(e) + ")" : std::to_string(e));
    }
  }
  return os.str();
}

DivMod divMod(const RingElement& a, const RingElement& b) {
  requireCompatible(a, b);
  if (b.isZero()) throw MathError("exactlinear", "division by zero polynomial");
  if (a.lowExponent() < 0 || b.lowExponent() < 0)
    throw MathError("exactlinear", "Euclidean division needs polynomial operands");
  Field f = a.field();
  if (a.degree() < b.degree()) return {RingElement(f, a.ring()), a};
  int db = b.degree();
  int da = a.degree();
  std::vector<Scalar> rem(static_cast<std::size_t>(da + 1), f.zero());
  for (int e = a.lowExponent(); e <= da; ++e) rem[static_cast<std::size_t>(e)] = a.coeff(e);
  std::vector<Scalar> bc(static_cast<std::size_t>(db + 1), f.zero());
  for (int e = b.lowExponent(); e <= db; ++e) bc[static_cast<std::size_t>(e)] = b.coeff(e);
  Scalar lcInv = b.leadingCoeff().inverse();
  std::vector<Scalar> q(static_cast<std::size_t>(da - db + 1), f.zero());
  for (int i = da; i >= db; --i) {
    Scalar c = rem[static_cast<std::size_t>(i)];
    if (c.isZero()) continue;
    Scalar qc = c * lcInv;
    q[static_cast<std::size_t>(i - db)] = qc;
    for (int j = 0; j <= db; ++j) {
      if (bc[static_cast<std::size_t>(j)].isZero()) continue;
      rem[static_cast<std::size_t>(i - db + j)] -= qc * bc[static_cast<std::size_t>(j)];
    }
  }
  rem.resize(static_cast<std::size_t>(db));
  return {RingElement::fromCoefficients(f, a.ring(), std::move(q)),
          RingElement::fromCoefficients(f, a.ring(), std::move(rem))};
}

RingElement exactDiv(const RingElement& a, const RingElement& b) {
  requireCompatible(a, b);
  if (b.isZero()) throw MathError("exactlinear", "division by zero polynomial");
  if (a.isZero()) return a;
  if (a.ring() == Ring::Laurent) {
    RingElement an = a.stripLowPower();
    RingElement bn = b.stripLowPower();
    DivMod qr = divMod(an, bn);
    if (!qr.remainder.isZero()) throw MathError("exactlinear", "inexact division");
    return qr.quotient.shifted(a.lowExponent() - b.lowExponent());
  }
  DivMod qr = divMod(a, b);
  if (!qr.remainder.isZero()) throw MathError("exactlinear", "inexact division");
  return qr.quotient;
}

bool divides(const RingElement& d, const RingElement& a) {
  if (a.isZero()) return true;
  if (d.isZero()) return false;
  if (d.ring() == Ring::Laurent)
    return divMod(a.stripLowPower(), d.stripLowPower()).remainder.isZero();
  return divMod(a, d).remainder.isZero();
}

RingElement gcd(const RingElement& a, const RingElement& b) {
  requireCompatible(a, b);
  RingElement x = a.ring() == Ring::Laurent ? a.stripLowPower() : a;
  RingElement y = b.ring() == Ring::Laurent ? b.stripLowPower() : b;
  while (!y.isZero()) {
    RingElement r = divMod(x, y).remainder;
    x = std::move(y);
    y = std::move(r);
  }
  return x.normalized();
}

RingElement lcm(const RingElement& a, const RingElement& b) {
  if (a.isZero() || b.isZero()) return RingElement(a.field(), a.ring());
  return exactDiv(a * b, gcd(a, b)).normalized();
}

ExtGcd extendedGcd(const RingElement& a, const RingElement& b) {
  requireCompatible(a, b);
  Field f = a.field();
  Ring r = a.ring();
  RingElement r0 = a, r1 = b;
  RingElement s0 = RingElement::one(f, r), s1 = RingElement::zero(f, r);
  RingElement t0 = RingElement::zero(f, r), t1 = RingElement::one(f, r);
  while (!r1.isZero()) {
    DivMod qr = divMod(r0, r1);
    RingElement r2 = qr.remainder;
    RingElement s2 = s0 - qr.quotient * s1;
    RingElement t2 = t0 - qr.quotient * t1;
    r0 = std::move(r1); r1 = std::move(r2);
    s0 = std::move(s1); s1 = std::move(s2);
    t0 = std::move(t1); t1 = std::move(t2);
  }
  if (r0.isZero()) return {r0, s0, t0};
  Scalar inv = r0.leadingCoeff().inverse();
  return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

RingElement inverseMod(const RingElement& a, const RingElement& m) {
  RingElement ar = reduceMod(a, m);
  RingElement mm = m.withRing(ar.ring());
  ExtGcd eg = extendedGcd(ar, mm);
  if (eg.g.isZero() || eg.g.degree() != 0)
    throw MathError("exactlinear", "element not invertible modulo " + m.toString());
  return divMod(eg.s, mm).remainder;
}

RingElement reduceMod(const RingElement& a, const RingElement& m) {
  if (m.isZero()) return a;
  if (a.ring() != Ring::Laurent || a.lowExponent() >= 0) {
    RingElement mm = m.withRing(a.ring());
    return divMod(a, mm).remainder;
  }
  // a = x^{-k} * b with b polynomial; x is invertible modulo m.
  Field f = a.field();
  RingElement mm = m.withRing(Ring::Laurent);
  if (mm.lowExponent() > 0 || mm.coeff(0).isZero())
    throw MathError("exactlinear", "x not invertible modulo " + m.toString());
  int k = -a.lowExponent();
  RingElement b = a.shifted(k);
  RingElement xinv = inverseMod(RingElement::variable(f, Ring::Laurent), mm);
  RingElement res = divMod(b, mm).remainder;
  for (int i = 0; i < k; ++i) res = divMod(res * xinv, mm).remainder;
  return res;
}

RingElement power(const RingElement& a, int e) {
  RingElement r = RingElement::one(a.field(), a.ring());
  RingElement b = a;
  while (e > 0) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

RingElement reciprocal(const RingElement& p) {
  if (p.isZero()) return p;
  RingElement q = p.shifted(-p.lowExponent());  // strip t-power
  std::vector<Scalar> c(q.coefficients().rbegin(), q.coefficients().rend());
  return RingElement::fromCoefficients(p.field(), p.ring(), std::move(c)).normalized();
}

}  // namespace purisheaf::exact
