#include <doctest.h>

#include <random>

#include "purisheaf/fpmod/module.hpp"
#include "purisheaf/homalg/homalg.hpp"
#include "sheaf_support.hpp"

using namespace purisheaf;
using namespace purisheaf::homalg;
using sheaf::ClosedPoint;
using sheaf::lineBundle;
using sheaf::SheafLabel;
using sheaf::torsionSheaf;
using exact::RingElement;
using testsupport::P;

namespace {

const Field Q = Field::rationals();

// monomials x^a (a >= 0) on U, x^(n-b) (b >= 0) on V
int monomialH0(int n) {
  int c = 0;
  for (int a = 0; a <= std::max(n, 0) + 2; ++a)
    if (a <= n) ++c;
  return c;
}
int monomialH1(int n) {
  // exponents reached by neither chart
  int c = 0;
  for (int e = n - 5; e <= 5; ++e)
    if (e < 0 && e > n) ++c;
  return c;
}

int lengthOf(const SheafLabel& l) { return l.m * l.pt.degree(); }

// dim Ext¹ between labeled indecomposables, by Serre duality on the closed forms
int extOracle(const SheafLabel& a, const SheafLabel& b) {
  using K = SheafLabel::Kind;
  if (a.kind == K::LB && b.kind == K::LB) return std::max(0, a.n - b.n - 1);
  if (a.kind == K::LB) return 0;
  if (b.kind == K::LB) return lengthOf(a);
  if (!(a.pt == b.pt)) return 0;
  return std::min(a.m, b.m) * a.pt.degree();
}

int homOracle(const SheafLabel& a, const SheafLabel& b) {
  using K = SheafLabel::Kind;
  if (a.kind == K::LB && b.kind == K::LB) return std::max(0, b.n - a.n + 1);
  if (a.kind == K::LB) return lengthOf(b);
  if (b.kind == K::LB) return 0;
  if (!(a.pt == b.pt)) return 0;
  return std::min(a.m, b.m) * a.pt.degree();
}

bool sectionGlues(const CoherentSheaf& f, const SectionPair& s) {
  return f.overlapV().isZeroElements(f.phi() * s.u.toLaurent() - s.v.toLaurent());
}

}  // namespace

TEST_SUITE("homalg") {

TEST_CASE("cohomology of line bundles against monomial counting") {
  for (Field f : {Q, Field::prime(5)})
    for (int n = -5; n <= 5; ++n) {
      CechDatum d = cech(lineBundle(f, n));
      CAPTURE(n);
      CHECK(d.h0() == monomialH0(n));
      CHECK(d.h1() == monomialH1(n));
      CHECK(eulerChar(lineBundle(f, n)) == n + 1);
      for (const auto& s : d.h0Basis()) CHECK(sectionGlues(lineBundle(f, n), s));
    }
  CechDatum m2 = cech(lineBundle(Q, -2));
  REQUIRE(m2.h1() == 1);
  // the class is spanned by x^-1
  RingMatrix xinv(Q, exact::Ring::Laurent, 1, 1);
  xinv(0, 0) = RingElement::monomial(Q.one(), -1, exact::Ring::Laurent);
  CHECK_FALSE(m2.h1Coordinates(xinv)[0].isZero());
  xinv(0, 0) = RingElement::monomial(Q.one(), -2, exact::Ring::Laurent);
  CHECK(m2.h1Coordinates(xinv)[0].isZero());
}

TEST_CASE("cohomology of torsion sheaves") {
  for (Field f : {Q, Field::prime(5)})
    for (const auto& pt : testsupport::samplePoints(f))
      for (int m = 1; m <= 3; ++m) {
        CoherentSheaf t = torsionSheaf(pt, m);
        CechDatum d = cech(t);
        CHECK(d.h0() == m * pt.degree());
        CHECK(d.h1() == 0);
        CHECK(eulerChar(t) == m * pt.degree());
      }
}

TEST_CASE("cohomology is invariant under re-presentation and window doubling") {
  std::mt19937_64 rng(101);
  for (int iter = 0; iter < 30; ++iter) {
    auto labels = testsupport::randomLabels(Q, rng, 3);
    CoherentSheaf f = testsupport::scramble(testsupport::sheafOf(labels, Q), rng);
    int h0 = 0, h1 = 0;
    for (const auto& l : labels) {
      if (l.kind == SheafLabel::Kind::LB) {
        h0 += monomialH0(l.n);
        h1 += monomialH1(l.n);
      } else {
        h0 += lengthOf(l);
      }
    }
    CechDatum d = cech(f);
    CHECK(d.h0() == h0);
    CHECK(d.h1() == h1);
    CechDatum wide = cech(f, 2 * d.windowUsed());
    CHECK(wide.h0() == d.h0());
    CHECK(wide.h1() == d.h1());
    for (const auto& s : d.h0Basis()) CHECK(sectionGlues(f, s));
    for (std::size_t i = 0; i < d.h0Basis().size(); ++i) {
      auto c = d.h0Coordinates(d.h0Basis()[i]);
      for (std::size_t j = 0; j < c.size(); ++j) CHECK(c[j] == (i == j ? Q.one() : Q.zero()));
    }
  }
}

TEST_CASE("Hom between line bundles") {
  for (int m = -4; m <= 4; ++m)
    for (int n = -4; n <= 4; ++n) {
      int oracle = 0;
      for (int a = 0; a <= n - m; ++a) ++oracle;
      CHECK(globalHom(lineBundle(Q, m), lineBundle(Q, n)).dimension() == oracle);
    }
  CoherentSheaf o11 = sheaf::directSum(lineBundle(Q, 1), lineBundle(Q, 1));
  CHECK(globalHom(lineBundle(Q, 2), o11).dimension() == 0);
  CHECK(globalHom(lineBundle(Q, 0), o11).dimension() == 4);
}

TEST_CASE("Hom between torsion sheaves against chart brute force") {
  for (Field f : {Q, Field::prime(5)})
    for (const auto& pt : testsupport::samplePoints(f))
      for (int m = 1; m <= 3; ++m) {
        CoherentSheaf t = torsionSheaf(pt, m);
        const fpmod::FPModule& chart = pt.isInfinity() ? t.mV() : t.mU();
        auto local = fpmod::homModule(chart, chart);
        REQUIRE(local.kBasis);
        HomSpace h = globalHom(t, t);
        CHECK(h.dimension() == static_cast<int>(local.kBasis->size()));
        CHECK(h.dimension() == m * pt.degree());
      }
}

TEST_CASE("Hom basis coordinates") {
  std::mt19937_64 rng(7);
  CoherentSheaf f = testsupport::scramble(testsupport::sheafOf({SheafLabel::lb(-1), SheafLabel::lb(0)}, Q), rng);
  CoherentSheaf g = testsupport::sheafOf({SheafLabel::lb(1), SheafLabel::tors(ClosedPoint::infinity(Q), 2)}, Q);
  HomSpace h = globalHom(f, g);
  CHECK(h.dimension() == 3 + 2 + 2 + 2);
  SheafMorphism sum = h.basis()[0].scaled(Q.fromInt(3)) + h.basis()[2];
  auto c = h.coordinates(sum);
  CHECK(c[0] == Q.fromInt(3));
  CHECK(c[1].isZero());
  CHECK(c[2] == Q.one());
}

TEST_CASE("Hom dimensions are twist invariant") {
  std::mt19937_64 rng(8);
  for (int iter = 0; iter < 6; ++iter) {
    auto a = testsupport::randomLabels(Q, rng, 2, 2, 2);
    auto b = testsupport::randomLabels(Q, rng, 2, 2, 2);
    CoherentSheaf f = testsupport::sheafOf(a, Q), g = testsupport::sheafOf(b, Q);
    int base = globalHom(f, g).dimension();
    int oracle = 0;
    for (const auto& x : a)
      for (const auto& y : b) oracle += homOracle(x, y);
    CHECK(base == oracle);
    for (int n = -3; n <= 3; ++n)
      CHECK(globalHom(sheaf::twist(f, n), sheaf::twist(g, n)).dimension() == base);
  }
}

TEST_CASE("Ext between line bundles") {
  for (int m = -4; m <= 4; ++m)
    for (int n = -4; n <= 4; ++n) {
      // Serre duality oracle: monomials of O(m - 2 - n)
      int oracle = 0;
      for (int a = 0; a <= m - 2 - n; ++a) ++oracle;
      CAPTURE(m);
      CAPTURE(n);
      CHECK(extDimension(lineBundle(Q, m), lineBundle(Q, n)) == oracle);
    }
}

TEST_CASE("Ext examples") {
  for (const auto& pt : testsupport::samplePoints(Q))
    for (int m = 1; m <= 2; ++m) {
      CoherentSheaf oo1 = sheaf::directSum(lineBundle(Q, 0), lineBundle(Q, 1));
      CHECK(extDimension(oo1, torsionSheaf(pt, m)) == 0);
    }
  ExtData e = ext1(lineBundle(Q, 2), lineBundle(Q, 0));
  REQUIRE(e.dimension == 1);
  REQUIRE(e.extensions.size() == 1);
  CHECK(cech(sheaf::twist(lineBundle(Q, 0), e.resolutionTwist)).h1() == 0);
  // the nonsplit extension of O(2) by O is O(1) ++ O(1)
  std::vector<SheafLabel> mid = sheaf::decomposeSheaf(e.extensions[0].b());
  CHECK(mid == std::vector<SheafLabel>{SheafLabel::lb(1), SheafLabel::lb(1)});
  CHECK(isExactOnCharts(e.extensions[0].f(), e.extensions[0].g()));
}

TEST_CASE("Ext against closed forms on random sums") {
  std::mt19937_64 rng(9);
  for (Field f : {Q, Field::prime(5)})
    for (int iter = 0; iter < 8; ++iter) {
      auto a = testsupport::randomLabels(f, rng, 2, 2, 2);
      auto b = testsupport::randomLabels(f, rng, 2, 2, 2);
      int oracle = 0;
      for (const auto& x : a)
        for (const auto& y : b) oracle += extOracle(x, y);
      CoherentSheaf fa = testsupport::scramble(testsupport::sheafOf(a, f), rng);
      CoherentSheaf fb = testsupport::sheafOf(b, f);
      ExtData e = ext1(fa, fb);
      CHECK(e.dimension == oracle);
      CHECK(static_cast<int>(e.extensions.size()) == oracle);
      for (const auto& s : e.extensions) CHECK(eulerChar(s.b()) == eulerChar(fa) + eulerChar(fb));
    }
}

TEST_CASE("Serre duality in dimension form") {
  std::mt19937_64 rng(10);
  for (int iter = 0; iter < 10; ++iter) {
    CoherentSheaf f = testsupport::scramble(testsupport::sheafOf(testsupport::randomLabels(Q, rng, 2, 2, 2), Q), rng);
    CoherentSheaf g = testsupport::scramble(testsupport::sheafOf(testsupport::randomLabels(Q, rng, 2, 2, 2), Q), rng);
    CHECK(extDimension(f, g) == globalHom(g, sheaf::twist(f, -2)).dimension());
  }
}

TEST_CASE("Euler characteristic is additive on the line bundle sequence") {
  CHECK(eulerChar(lineBundle(Q, 1)) + eulerChar(lineBundle(Q, 1)) == 4);
  CHECK(eulerChar(lineBundle(Q, 0)) + eulerChar(lineBundle(Q, 2)) == 4);
}

TEST_CASE("membership in D") {
  CHECK_FALSE(isInD(lineBundle(Q, 3)));
  CHECK(isInD(torsionSheaf(ClosedPoint::infinity(Q), 2)));
  CHECK(isInD(sheaf::CoherentSheaf::zero(Q)));
  CHECK_FALSE(isInDWindowed(lineBundle(Q, 3)));
  CHECK(isInDWindowed(torsionSheaf(ClosedPoint::finite(P(Q, exact::Ring::PolyU, {1, 0, 1})), 1)));
  std::mt19937_64 rng(11);
  for (int iter = 0; iter < 8; ++iter) {
    auto labels = testsupport::randomLabels(Q, rng, 3, 2, 2);
    CoherentSheaf f = testsupport::scramble(testsupport::sheafOf(labels, Q), rng);
    bool lb = std::any_of(labels.begin(), labels.end(), [](const SheafLabel& l) { return l.kind == SheafLabel::Kind::LB; });
    CHECK(isInD(f) == !lb);
    CHECK(isInDWindowed(f) == !lb);
    if (!lb) CHECK(cech(f).h1() == 0);
  }
}

TEST_CASE("D is closed under quotients") {
  std::mt19937_64 rng(12);
  for (int iter = 0; iter < 10; ++iter) {
    std::vector<SheafLabel> labels;
    for (int i = 0; i < 2; ++i) labels.push_back(testsupport::randomLabel(Q, rng, 2, 3, 5));
    CoherentSheaf f = testsupport::sheafOf(labels, Q);
    CoherentSheaf g = testsupport::sheafOf({testsupport::randomLabel(Q, rng, 2, 2, 3)}, Q);
    HomSpace h = globalHom(g, f);
    SheafMorphism m = SheafMorphism::zero(g, f);
    for (const auto& b : h.basis()) m = m + b.scaled(Q.fromInt(static_cast<long>(rng() % 5) - 2));
    CoherentSheaf quotient = sheaf::kernelCokernelImage(m).cokernel;
    CHECK(isInD(f));
    CHECK(isInD(quotient));
  }
}

TEST_CASE("decomposition certificates") {
  std::mt19937_64 rng(13);
  for (int iter = 0; iter < 5; ++iter) {
    auto labels = testsupport::randomLabels(Q, rng, 3, 2, 2);
    CoherentSheaf f = testsupport::scramble(testsupport::sheafOf(labels, Q), rng);
    CHECK(sheaf::decomposeSheaf(f) == labels);
    CHECK(certifyDecomposition(f, labels));
  }
  CHECK_FALSE(certifyDecomposition(lineBundle(Q, 2), {SheafLabel::lb(1), SheafLabel::tors(ClosedPoint::infinity(Q), 1)}));
}

}  // TEST_SUITE
