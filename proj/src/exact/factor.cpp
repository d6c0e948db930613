#include "purisheaf/exact/factor.hpp"

#include <algorithm>
#include <random>

#include "purisheaf/error.hpp"

namespace purisheaf::exact {
namespace {

// ---------- F_p ----------

RingElement mulMod(const RingElement& a, const RingElement& b, const RingElement& m) {
  return divMod(a * b, m).remainder;
}

RingElement powMod(RingElement a, mpz_class e, const RingElement& m) {
  RingElement r = RingElement::one(a.field(), a.ring());
  a = divMod(a, m).remainder;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = mulMod(r, a, m);
    e >>= 1;
    if (e > 0) a = mulMod(a, a, m);
  }
  return r;
}

RingElement monic(const RingElement& a) { return a.scaled(a.leadingCoeff().inverse()); }

// p-th root of a polynomial whose exponents are all multiples of p (over F_p, a^p = a)
RingElement pthRoot(const RingElement& f) {
  const int p = static_cast<int>(f.field().characteristic());
  std::vector<Scalar> c;
  for (int e = 0; e <= f.degree(); e += p) c.push_back(f.coeff(e));
  return RingElement::fromCoefficients(f.field(), f.ring(), std::move(c));
}

void squarefreeFp(const RingElement& f, int scale, std::vector<IrreducibleFactor>& out,
                  std::vector<std::pair<RingElement, int>>& parts) {
  (void)out;
  if (f.degree() <= 0) return;
  RingElement d = f.derivative();
  if (d.isZero()) {
    squarefreeFp(pthRoot(f), scale * static_cast<int>(f.field().characteristic()), out, parts);
    return;
  }
  RingElement c = gcd(f, d);
  RingElement w = exactDiv(f, c);
  int i = 1;
  while (w.degree() > 0) {
    RingElement y = gcd(w, c);
    RingElement z = exactDiv(w, y);
    if (z.degree() > 0) parts.emplace_back(monic(z), i * scale);
    ++i;
    w = y;
    c = exactDiv(c, y);
  }
  if (c.degree() > 0)
    squarefreeFp(pthRoot(c), scale * static_cast<int>(f.field().characteristic()), out, parts);
}

void equalDegree(const RingElement& g, int d, std::mt19937_64& rng, std::vector<RingElement>& out) {
  if (g.degree() == d) {
    out.push_back(monic(g));
    return;
  }
  const Field f = g.field();
  const std::uint64_t p = f.characteristic();
  const RingElement one = RingElement::one(f, g.ring());
  for (;;) {
    std::vector<Scalar> c;
    for (int i = 0; i < g.degree(); ++i) c.push_back(f.fromInt(static_cast<std::int64_t>(rng() % p)));
    RingElement a = RingElement::fromCoefficients(f, g.ring(), std::move(c));
    if (a.degree() <= 0) continue;
    RingElement b;
    if (p == 2) {
      b = a;
      RingElement t = a;
      for (int i = 1; i < d; ++i) {
        t = mulMod(t, t, g);
        b = b + t;
      }
    } else {
      mpz_class e;
      mpz_ui_pow_ui(e.get_mpz_t(), p, static_cast<unsigned long>(d));
      e = (e - 1) / 2;
      b = powMod(a, e, g) - one;
    }
    RingElement h = gcd(b, g);
    if (h.degree() > 0 && h.degree() < g.degree()) {
      equalDegree(h, d, rng, out);
      equalDegree(exactDiv(g, h), d, rng, out);
      return;
    }
  }
}

// monic squarefree input
std::vector<RingElement> factorSquarefreeFp(RingElement f) {
  std::vector<RingElement> out;
  const Field fld = f.field();
  const std::uint64_t p = fld.characteristic();
  const RingElement x = RingElement::variable(fld, f.ring());
  std::mt19937_64 rng(0x5eed1234u + p);
  RingElement h = x;
  for (int d = 1; f.degree() >= 2 * d; ++d) {
    h = powMod(h, mpz_class(static_cast<unsigned long>(p)), f);
    RingElement g = gcd(h - x, f);
    if (g.degree() > 0) {
      equalDegree(g, d, rng, out);
      f = exactDiv(f, g);
      h = divMod(h, f).remainder;
    }
  }
  if (f.degree() > 0) out.push_back(monic(f));
  return out;
}

std::vector<IrreducibleFactor> factorFp(const RingElement& f) {
  std::vector<std::pair<RingElement, int>> parts;
  std::vector<IrreducibleFactor> out;
  squarefreeFp(monic(f), 1, out, parts);
  for (const auto& [sf, mult] : parts)
    for (auto& irr : factorSquarefreeFp(sf)) out.push_back({std::move(irr), mult});
  return out;
}

// ---------- Z[x] helpers for the rational case ----------

using ZPoly = std::vector<mpz_class>;  // ascending coefficients

void ztrim(ZPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int zdeg(const ZPoly& a) { return static_cast<int>(a.size()) - 1; }

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  ztrim(c);
  return c;
}

ZPoly zsub(const ZPoly& a, const ZPoly& b) {
  ZPoly c(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) c[i] -= b[i];
  ztrim(c);
  return c;
}

mpz_class symmetricMod(const mpz_class& v, const mpz_class& m) {
  mpz_class r = v % m;
  if (r < 0) r += m;
  if (2 * r > m) r -= m;
  return r;
}

ZPoly zmodSym(const ZPoly& a, const mpz_class& m) {
  ZPoly c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = symmetricMod(a[i], m);
  ztrim(c);
  return c;
}

// exact division by a monic integer polynomial; nullopt if remainder nonzero
bool zdivMonic(ZPoly a, const ZPoly& b, ZPoly& q) {
  const int db = zdeg(b);
  if (zdeg(a) < db) {
    q.clear();
    return a.empty();
  }
  q.assign(static_cast<std::size_t>(zdeg(a) - db + 1), 0);
  for (int i = zdeg(a); i >= db; --i) {
    mpz_class c = a[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    q[static_cast<std::size_t>(i - db)] = c;
    for (int j = 0; j <= db; ++j) a[static_cast<std::size_t>(i - db + j)] -= c * b[static_cast<std::size_t>(j)];
  }
  ztrim(a);
  ztrim(q);
  return a.empty();
}

RingElement toFp(const ZPoly& a, Field f) {
  std::vector<Scalar> c;
  for (const auto& v : a) {
    mpz_class r = v % static_cast<unsigned long>(f.characteristic());
    if (r < 0) r += f.characteristic();
    c.push_back(f.fromInt(r.get_si()));
  }
  return RingElement::fromCoefficients(f, Ring::PolyU, std::move(c));
}

ZPoly fromFp(const RingElement& a) {
  ZPoly c(static_cast<std::size_t>(a.degree() + 1), 0);
  for (int i = 0; i <= a.degree(); ++i)
    c[static_cast<std::size_t>(i)] = mpz_class(static_cast<unsigned long>(a.coeff(i).residue()));
  ztrim(c);
  return c;
}

// lift f = g*h mod p^k to mod p^(k+1); all monic, s*g + t*h = 1 mod p
void henselStep(const ZPoly& f, ZPoly& g, ZPoly& h, const RingElement& s, const RingElement& t,
                const mpz_class& pk, Field fp) {
  ZPoly e = zsub(f, zmul(g, h));
  for (auto& c : e) c /= pk;  // exact by the lifting invariant
  RingElement ep = toFp(e, fp);
  RingElement gp = toFp(g, fp), hp = toFp(h, fp);
  RingElement dg = divMod(t * ep, gp).remainder;
  RingElement dh = divMod(s * ep, hp).remainder;
  ZPoly zg = fromFp(dg), zh = fromFp(dh);
  for (std::size_t i = 0; i < zg.size(); ++i) g[i] += pk * zg[i];
  for (std::size_t i = 0; i < zh.size(); ++i) h[i] += pk * zh[i];
}

// multifactor lift by peeling off one factor at a time
std::vector<ZPoly> henselLift(const ZPoly& f, const std::vector<RingElement>& factors, Field fp,
                              const mpz_class& bound, mpz_class& modulus) {
  const unsigned long p = fp.characteristic();
  int steps = 1;
  modulus = p;
  while (modulus <= bound) {
    modulus *= p;
    ++steps;
  }
  std::vector<ZPoly> out;
  ZPoly rest = f;
  for (std::size_t i = 0; i + 1 < factors.size(); ++i) {
    RingElement gp = factors[i];
    RingElement hp = RingElement::one(fp, Ring::PolyU);
    for (std::size_t j = i + 1; j < factors.size(); ++j) hp = hp * factors[j];
    ExtGcd eg = extendedGcd(gp, hp);
    ZPoly g = fromFp(gp), h = fromFp(hp);
    mpz_class pk = p;
    for (int k = 1; k < steps; ++k) {
      henselStep(rest, g, h, eg.s, eg.t, pk, fp);
      pk *= p;
      g = zmodSym(g, pk);
      h = zmodSym(h, pk);
    }
    out.push_back(g);
    rest = h;
  }
  out.push_back(zmodSym(rest, modulus));
  return out;
}

std::vector<ZPoly> zassenhaus(const ZPoly& f) {
  const int n = zdeg(f);
  if (n <= 1) return {f};
  // choose a prime keeping f squarefree
  static const unsigned long primes[] = {3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47,
                                         53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109,
                                         113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173};
  Field fp;
  std::vector<RingElement> modFactors;
  bool found = false;
  for (unsigned long p : primes) {
    fp = Field::prime(p);
    RingElement fbar = toFp(f, fp);
    if (fbar.degree() != n) continue;
    if (gcd(fbar, fbar.derivative()).degree() != 0) continue;
    modFactors = factorSquarefreeFp(fbar);
    found = true;
    break;
  }
  if (!found) throw MathError("exactlinear", "no suitable prime for factorization");
  if (modFactors.size() == 1) return {f};

  // Mignotte-style bound on factor coefficients: 2^n * ||f||_2
  mpz_class norm2 = 0;
  for (const auto& c : f) norm2 += c * c;
  mpz_class bound = sqrt(norm2) + 1;
  bound <<= static_cast<unsigned long>(n);
  bound *= 2;
  mpz_class modulus;
  std::vector<ZPoly> lifted = henselLift(f, modFactors, fp, bound, modulus);

  std::vector<ZPoly> result;
  ZPoly rest = f;
  std::vector<ZPoly> pool = lifted;
  for (std::size_t size = 1; 2 * size <= pool.size();) {
    bool hit = false;
    std::vector<int> idx(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = static_cast<int>(i);
    for (;;) {
      ZPoly cand{1};
      for (int i : idx) cand = zmodSym(zmul(cand, pool[static_cast<std::size_t>(i)]), modulus);
      ZPoly q;
      if (zdivMonic(rest, cand, q)) {
        result.push_back(cand);
        rest = q;
        std::vector<ZPoly> next;
        for (std::size_t i = 0; i < pool.size(); ++i)
          if (std::find(idx.begin(), idx.end(), static_cast<int>(i)) == idx.end()) next.push_back(pool[i]);
        pool = std::move(next);
        hit = true;
        break;
      }
      // next combination
      int k = static_cast<int>(size) - 1;
      while (k >= 0 && idx[static_cast<std::size_t>(k)] == static_cast<int>(pool.size() - size) + k) --k;
      if (k < 0) break;
      ++idx[static_cast<std::size_t>(k)];
      for (std::size_t j = static_cast<std::size_t>(k) + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!hit) ++size;
  }
  if (zdeg(rest) > 0) result.push_back(rest);
  return result;
}

std::vector<IrreducibleFactor> factorQ(const RingElement& f) {
  const Field q = f.field();
  const Ring ring = f.ring();
  // Yun squarefree decomposition (characteristic zero)
  std::vector<std::pair<RingElement, int>> parts;
  {
    RingElement a = monic(f);
    RingElement b = a.derivative();
    RingElement c = gcd(a, b);
    RingElement w = exactDiv(a, c);
    RingElement y = exactDiv(b, c);
    int i = 1;
    while (w.degree() > 0) {
      RingElement z = y - w.derivative();
      RingElement g = gcd(w, z);
      if (g.degree() > 0) parts.emplace_back(monic(g), i);
      w = exactDiv(w, g);
      y = exactDiv(z, g);
      ++i;
    }
  }
  std::vector<IrreducibleFactor> out;
  for (const auto& [sf, mult] : parts) {
    // clear denominators, then make monic via F(x) = lc^(n-1) f(x/lc)
    const int n = sf.degree();
    mpz_class den = 1;
    for (int i = 0; i <= n; ++i) {
      mpz_class d = sf.coeff(i).toMpq().get_den();
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
    }
    ZPoly z(static_cast<std::size_t>(n + 1));
    for (int i = 0; i <= n; ++i) {
      mpq_class v = sf.coeff(i).toMpq() * den;
      z[static_cast<std::size_t>(i)] = v.get_num();
    }
    const mpz_class lc = z.back();
    ZPoly F(static_cast<std::size_t>(n + 1));
    mpz_class pw = 1;  // lc^(n-1-i) accumulated from the top
    for (int i = n; i >= 0; --i) {
      if (i == n) {
        F[static_cast<std::size_t>(i)] = 1;
      } else {
        F[static_cast<std::size_t>(i)] = z[static_cast<std::size_t>(i)] * pw;
        pw *= lc;
      }
    }
    for (const ZPoly& G : zassenhaus(F)) {
      // g(x) = G(lc x), then monic over Q
      std::vector<Scalar> c;
      mpz_class l = 1;
      for (std::size_t i = 0; i < G.size(); ++i) {
        c.push_back(q.fromMpq(mpq_class(G[i] * l)));
        l *= lc;
      }
      RingElement g = RingElement::fromCoefficients(q, ring, std::move(c));
      out.push_back({monic(g), mult});
    }
  }
  return out;
}

}  // namespace

bool canonicalLess(const RingElement& a, const RingElement& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  if (a.lowExponent() != b.lowExponent()) return a.lowExponent() > b.lowExponent();
  for (int e = a.degree(); e >= a.lowExponent(); --e) {
    Scalar x = a.coeff(e), y = b.coeff(e);
    if (x == y) continue;
    if (a.field().isRational()) return x.toMpq() < y.toMpq();
    return x.residue() < y.residue();
  }
  return false;
}

std::vector<IrreducibleFactor> factorPolynomial(const RingElement& f) {
  if (f.isZero()) throw MathError("exactlinear", "cannot factor zero");
  RingElement g = f;
  std::vector<IrreducibleFactor> out;
  if (f.ring() == Ring::Laurent) g = f.stripLowPower();
  const Ring work = f.ring() == Ring::Laurent ? Ring::PolyU : f.ring();
  g = g.withRing(work);
  int xpow = 0;
  while (g.degree() > 0 && g.coeff(0).isZero()) {
    g = divMod(g, RingElement::variable(g.field(), work)).quotient;
    ++xpow;
  }
  if (xpow > 0) out.push_back({RingElement::variable(g.field(), work), xpow});
  if (g.degree() > 0) {
    auto rest = g.field().isRational() ? factorQ(g) : factorFp(g);
    out.insert(out.end(), rest.begin(), rest.end());
  }
  // merge duplicates (distinct squarefree parts never share factors, but be safe)
  std::sort(out.begin(), out.end(),
            [](const IrreducibleFactor& a, const IrreducibleFactor& b) { return canonicalLess(a.p, b.p); });
  std::vector<IrreducibleFactor> merged;
  for (auto& fac : out) {
    fac.p = fac.p.withRing(f.ring());
    if (!merged.empty() && merged.back().p == fac.p)
      merged.back().multiplicity += fac.multiplicity;
    else
      merged.push_back(std::move(fac));
  }
  return merged;
}

bool isIrreducible(const RingElement& f) {
  if (f.isZero() || f.degree() <= 0) return false;
  if (f.ring() == Ring::Laurent) return false;
  auto fs = factorPolynomial(f);
  return fs.size() == 1 && fs[0].multiplicity == 1;
}

}  // namespace purisheaf::exact
