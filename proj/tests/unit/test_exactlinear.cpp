#include <doctest.h>

#include <random>

#include "purisheaf/exact/factor.hpp"
#include "purisheaf/exact/klinear.hpp"
#include "support.hpp"

using namespace purisheaf;
using namespace purisheaf::exact;
using testsupport::M;
using testsupport::P;

namespace {

bool isDiagonalChain(const SmithForm& sf) {
  for (int i = 0; i < sf.s.rows(); ++i)
    for (int j = 0; j < sf.s.cols(); ++j)
      if (i != j && !sf.s(i, j).isZero()) return false;
  for (std::size_t i = 0; i + 1 < sf.diagonal.size(); ++i)
    if (!divides(sf.diagonal[i], sf.diagonal[i + 1])) return false;
  for (const auto& d : sf.diagonal)
    if (!d.leadingCoeff().isOne()) return false;
  return true;
}

// brute-force irreducibility over a small prime field: no monic divisor of degree <= n/2
bool bruteIrreducibleFp(const RingElement& f) {
  const Field fld = f.field();
  const int p = static_cast<int>(fld.characteristic());
  const int n = f.degree();
  for (int d = 1; 2 * d <= n; ++d) {
    int total = 1;
    for (int i = 0; i < d; ++i) total *= p;
    for (int code = 0; code < total; ++code) {
      std::vector<long> c;
      int k = code;
      for (int i = 0; i < d; ++i) {
        c.push_back(k % p);
        k /= p;
      }
      c.push_back(1);
      if (divides(RingElement::fromInts(fld, Ring::PolyU, c), f)) return false;
    }
  }
  return true;
}

}  // namespace

TEST_SUITE("exactlinear") {

TEST_CASE("scalar arithmetic is exact") {
  Field q = Field::rationals();
  Scalar a = q.fromRational(1, 3), b = q.fromRational(1, 6);
  CHECK(a + b == q.fromRational(1, 2));
  CHECK((a / b) == q.fromInt(2));
  CHECK_THROWS_AS(q.zero().inverse(), MathError);
  // overflow into the big path and back
  Scalar big = q.fromInt(INT64_MAX);
  Scalar sq = big * big;
  CHECK(sq / big == big);
  CHECK((sq - sq).isZero());
  Field f7 = Field::prime(7);
  CHECK(f7.fromInt(3) * f7.fromInt(5) == f7.fromInt(1));
  CHECK(f7.fromInt(3).inverse() == f7.fromInt(5));
  CHECK_THROWS_AS(Field::prime(8), MathError);
  CHECK_THROWS_AS(q.one() + f7.one(), MathError);
}

TEST_CASE("polynomial division and gcd") {
  Field q = Field::rationals();
  auto f = P(q, Ring::PolyU, {-1, 0, 1});  // x^2 - 1
  auto g = P(q, Ring::PolyU, {1, 1});
  CHECK(divides(g, f));
  CHECK(exactDiv(f, g) == P(q, Ring::PolyU, {-1, 1}));
  CHECK(gcd(f, P(q, Ring::PolyU, {2, 2})) == g);
  ExtGcd eg = extendedGcd(P(q, Ring::PolyU, {0, 1}), P(q, Ring::PolyU, {-1, 1}));
  CHECK(eg.g.isOne());
  CHECK(eg.s * P(q, Ring::PolyU, {0, 1}) + eg.t * P(q, Ring::PolyU, {-1, 1}) == eg.g);
  CHECK(reciprocal(P(q, Ring::PolyU, {-2, 1})) ==
        RingElement::fromCoefficients(q, Ring::PolyU, {q.fromRational(-1, 2), q.one()}));
  // Laurent: x is a unit
  auto xl = RingElement::variable(q, Ring::Laurent);
  CHECK(xl.isUnit());
  CHECK(divides(xl, RingElement::one(q, Ring::Laurent)));
}

TEST_CASE("smith normal form examples") {
  Field q = Field::rationals();
  auto x = RingElement::variable(q, Ring::PolyU);
  SmithForm a = smithNormalForm(M(q, Ring::PolyU, {{x * x}}));
  CHECK(a.s == M(q, Ring::PolyU, {{x * x}}));
  CHECK(a.u == RingMatrix::identity(q, Ring::PolyU, 1));
  CHECK(a.v == RingMatrix::identity(q, Ring::PolyU, 1));

  auto one = RingElement::one(q, Ring::PolyU);
  auto zero = RingElement::zero(q, Ring::PolyU);
  RingMatrix m = M(q, Ring::PolyU, {{x, zero}, {zero, one}});
  SmithForm b = smithNormalForm(m);
  CHECK(b.s == M(q, Ring::PolyU, {{one, zero}, {zero, x}}));
  CHECK(b.u * m * b.v == b.s);

  CHECK_THROWS_WITH_AS(smithNormalForm(RingMatrix::identity(q, Ring::Laurent, 1)), "unsupported ring", MathError);
}

TEST_CASE("smith normal form against the gcd-of-minors oracle over F5") {
  Field f5 = Field::prime(5);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    RingMatrix m = testsupport::randomMatrix(f5, Ring::PolyU, 3, 3, 2, rng);
    SmithForm sf = smithNormalForm(m);
    REQUIRE(sf.u * m * sf.v == sf.s);
    REQUIRE(isDiagonalChain(sf));
    CHECK(determinant(sf.u).isUnit());
    CHECK(determinant(sf.v).isUnit());
    RingElement prev = RingElement::one(f5, Ring::PolyU);
    for (int k = 1; k <= 3; ++k) {
      RingElement gk = gcdOfMinors(m, k);
      if (gk.isZero()) {
        CHECK(sf.rank() < k);
        break;
      }
      REQUIRE(sf.rank() >= k);
      CHECK(sf.diagonal[static_cast<std::size_t>(k - 1)] == exactDiv(gk, prev).normalized());
      prev = gk;
    }
  }
}

TEST_CASE("smith normal form random rectangular property suite") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    Field f = trial % 2 ? Field::rationals() : Field::prime(5);
    Ring r = trial % 3 == 0 ? Ring::PolyV : Ring::PolyU;
    int rows = 1 + static_cast<int>(rng() % 4), cols = 1 + static_cast<int>(rng() % 4);
    RingMatrix m = testsupport::randomMatrix(f, r, rows, cols, 3, rng);
    SmithForm sf = smithNormalForm(m);
    REQUIRE(sf.u * m * sf.v == sf.s);
    REQUIRE(isDiagonalChain(sf));
    CHECK(sf.u * sf.uinv == RingMatrix::identity(f, r, rows));
    // product of invariant factors equals the gcd of maximal minors
    const int k = std::min(rows, cols);
    RingElement g = gcdOfMinors(m, k);
    RingElement prod = RingElement::one(f, r);
    for (const auto& d : sf.diagonal) prod = prod * d;
    if (g.isZero())
      CHECK(sf.rank() < k);
    else
      CHECK(prod == g);
  }
}

TEST_CASE("solveLinear examples") {
  Field q = Field::rationals();
  auto x = RingElement::variable(q, Ring::PolyU);
  auto s1 = solveLinear(M(q, Ring::PolyU, {{x}}), M(q, Ring::PolyU, {{x * x * x}}));
  REQUIRE(s1.solvable);
  CHECK(s1.particular == M(q, Ring::PolyU, {{x * x}}));
  CHECK(s1.homogeneous.cols() == 0);

  auto s2 = solveLinear(M(q, Ring::PolyU, {{x}}), M(q, Ring::PolyU, {{RingElement::one(q, Ring::PolyU)}}));
  CHECK_FALSE(s2.solvable);

  auto xl = RingElement::variable(q, Ring::Laurent);
  auto s3 = solveLinear(M(q, Ring::Laurent, {{xl}}), M(q, Ring::Laurent, {{RingElement::one(q, Ring::Laurent)}}));
  REQUIRE(s3.solvable);
  CHECK(s3.particular == M(q, Ring::Laurent, {{RingElement::monomial(q.one(), -1, Ring::Laurent)}}));

  CHECK_THROWS_AS(solveLinear(RingMatrix(q, Ring::PolyU, 2, 1), RingMatrix(q, Ring::PolyU, 1, 1)), MathError);
}

TEST_CASE("solveLinear finds solutions of constructed systems") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    Field f = trial % 2 ? Field::rationals() : Field::prime(5);
    Ring r = trial % 4 == 3 ? Ring::Laurent : Ring::PolyU;
    int rows = 1 + static_cast<int>(rng() % 4), cols = 1 + static_cast<int>(rng() % 4);
    RingMatrix a = testsupport::randomMatrix(f, r == Ring::Laurent ? Ring::PolyU : r, rows, cols, 3, rng);
    RingMatrix x0 = testsupport::randomMatrix(f, r == Ring::Laurent ? Ring::PolyU : r, cols, 2, 3, rng);
    if (r == Ring::Laurent) {
      a = a.toLaurent();
      x0 = x0.toLaurent().scaled(RingElement::monomial(f.one(), -2, Ring::Laurent));
    }
    RingMatrix b = a * x0;
    LinearSolution s = solveLinear(a, b);
    REQUIRE(s.solvable);
    CHECK(a * s.particular == b);
    CHECK((a * s.homogeneous).isZero());
  }
}

TEST_CASE("degree budget is enforced") {
  Field q = Field::rationals();
  RingMatrix m = M(q, Ring::PolyU, {{power(RingElement::variable(q, Ring::PolyU), 20)}});
  CHECK_THROWS_AS(smithNormalForm(m, 10), DegreeBudgetExceeded);
}

TEST_CASE("sparse kernels and solves") {
  Field q = Field::rationals();
  // columns (1,0),(0,1),(1,1)
  std::vector<SparseVec> cols = {{{0, q.one()}}, {{1, q.one()}}, {{0, q.one()}, {1, q.one()}}};
  KernelResult k = kernelOfColumns(q, 2, cols);
  CHECK(k.rank == 2);
  REQUIRE(k.kernel.size() == 1);
  // verify the relation
  SparseVec sum;
  for (const auto& [j, c] : k.kernel[0]) sum = axpy(sum, c, cols[static_cast<std::size_t>(j)]);
  CHECK(sum.empty());
  auto sol = solveColumns(q, 2, cols, {{0, q.fromInt(3)}, {1, q.fromInt(-2)}});
  REQUIRE(sol);
  SparseVec back;
  for (const auto& [j, c] : *sol) back = axpy(back, c, cols[static_cast<std::size_t>(j)]);
  CHECK(back == SparseVec{{0, q.fromInt(3)}, {1, q.fromInt(-2)}});
  CHECK_FALSE(solveColumns(q, 3, cols, {{2, q.one()}}));
}

TEST_CASE("factorization over F_p against brute force") {
  std::mt19937_64 rng(5);
  for (int p : {2, 3, 5, 7}) {
    Field f = Field::prime(static_cast<unsigned>(p));
    for (int trial = 0; trial < 25; ++trial) {
      RingElement g = testsupport::randomPoly(f, Ring::PolyU, 7, rng, 3);
      if (g.degree() < 1) continue;
      auto fs = factorPolynomial(g);
      RingElement prod = RingElement::constant(g.leadingCoeff(), Ring::PolyU);
      for (const auto& fac : fs) {
        CHECK(fac.p.leadingCoeff().isOne());
        CHECK(bruteIrreducibleFp(fac.p));
        prod = prod * power(fac.p, fac.multiplicity);
      }
      CHECK(prod == g);
    }
  }
}

TEST_CASE("factorization over Q") {
  Field q = Field::rationals();
  auto fs = factorPolynomial(P(q, Ring::PolyU, {-1, 0, 0, 0, 1}));
  REQUIRE(fs.size() == 3);
  CHECK(fs[0].p == P(q, Ring::PolyU, {-1, 1}));
  CHECK(fs[1].p == P(q, Ring::PolyU, {1, 1}));
  CHECK(fs[2].p == P(q, Ring::PolyU, {1, 0, 1}));
  // reducible modulo every prime but irreducible over Q
  CHECK(isIrreducible(P(q, Ring::PolyU, {1, 0, 0, 0, 1})));
  CHECK(isIrreducible(P(q, Ring::PolyU, {1, 0, 1})));
  CHECK_FALSE(isIrreducible(P(q, Ring::PolyU, {1, 5, 6})));
  auto g = factorPolynomial(P(q, Ring::PolyU, {1, 5, 6}));
  REQUIRE(g.size() == 2);
  CHECK(g[0].p == RingElement::fromCoefficients(q, Ring::PolyU, {q.fromRational(1, 3), q.one()}));
  CHECK(g[1].p == RingElement::fromCoefficients(q, Ring::PolyU, {q.fromRational(1, 2), q.one()}));
  // multiplicities and the factor x
  auto h = factorPolynomial(P(q, Ring::PolyU, {0, 0, 1}) * power(P(q, Ring::PolyU, {-2, 0, 1}), 3));
  REQUIRE(h.size() == 2);
  CHECK(h[0].p == P(q, Ring::PolyU, {0, 1}));
  CHECK(h[0].multiplicity == 2);
  CHECK(h[1].multiplicity == 3);
  // a product of several irreducibles
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    RingElement prod = RingElement::one(q, Ring::PolyU);
    for (int k = 0; k < 3; ++k) {
      RingElement a = testsupport::randomPoly(q, Ring::PolyU, 3, rng, 5);
      if (a.degree() >= 1) prod = prod * a;
    }
    if (prod.degree() < 1) continue;
    auto fs2 = factorPolynomial(prod);
    RingElement back = RingElement::constant(prod.leadingCoeff(), Ring::PolyU);
    for (const auto& fac : fs2) back = back * power(fac.p, fac.multiplicity);
    CHECK(back == prod);
  }
}

}  // TEST_SUITE
