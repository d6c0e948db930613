#include <doctest.h>

#include <chrono>
#include <random>

#include "purisheaf/homalg/homalg.hpp"
#include "purisheaf/kronecker/kronecker.hpp"
#include "sheaf_support.hpp"

using namespace purisheaf;
using namespace purisheaf::kronecker;
using sheaf::lineBundle;
using sheaf::torsionSheaf;
using testsupport::P;

namespace {

const Field Q = Field::rationals();

ScalarMatrix fromRows(Field f, int rows, int cols, std::vector<long> v) {
  ScalarMatrix m(f, rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = f.fromInt(v[static_cast<std::size_t>(i * cols + j)]);
  return m;
}

ScalarMatrix randomScalars(Field f, int rows, int cols, std::mt19937_64& rng) {
  ScalarMatrix m(f, rows, cols);
  for (auto& e : m.data) e = f.fromInt(static_cast<long>(rng() % 7) - 3);
  return m;
}

ScalarMatrix randomInvertible(Field f, int n, std::mt19937_64& rng) {
  for (;;) {
    ScalarMatrix m = randomScalars(f, n, n, rng);
    if (m.rank() == n) return m;
  }
}

// (P0·A·P1⁻¹, P0·B·P1⁻¹) without inverting: P1 is applied on the right as Q
KroneckerRep transport(const KroneckerRep& r, const ScalarMatrix& p0, const ScalarMatrix& q1) {
  if (r.d0 == 0 || r.d1 == 0) return r;
  return KroneckerRep(p0 * r.mapA * q1, p0 * r.mapB * q1);
}

// dim Hom by writing out the commutation equations entry by entry
int homOracle(const KroneckerRep& r, const KroneckerRep& s) {
  const Field f = r.field;
  const int n1 = s.d1 * r.d1, n0 = s.d0 * r.d0;
  const int eqs = 2 * s.d0 * r.d1;
  if (n1 + n0 == 0) return 0;
  ScalarMatrix m(f, std::max(eqs, 1), n1 + n0);
  for (int b = 0; b < 2; ++b) {
    const ScalarMatrix& mr = b == 0 ? r.mapA : r.mapB;
    const ScalarMatrix& ms = b == 0 ? s.mapA : s.mapB;
    // (P0·mr - ms·P1)(i, j) = 0
    for (int i = 0; i < s.d0; ++i)
      for (int j = 0; j < r.d1; ++j) {
        int row = b * s.d0 * r.d1 + i * r.d1 + j;
        for (int k = 0; k < r.d0; ++k) m(row, n1 + i * r.d0 + k) = m(row, n1 + i * r.d0 + k) + mr(k, j);
        for (int k = 0; k < s.d1; ++k) m(row, k * r.d1 + j) = m(row, k * r.d1 + j) - ms(i, k);
      }
  }
  return n1 + n0 - m.rank();
}

std::vector<ClosedPoint> points(Field f) { return testsupport::samplePoints(f); }

RepLabel randomRepLabel(Field f, std::mt19937_64& rng) {
  switch (rng() % 3) {
    case 0: return RepLabel::preproj(static_cast<int>(rng() % 4));
    case 1: return RepLabel::preinj(static_cast<int>(rng() % 4));
    default: {
      auto pts = points(f);
      return RepLabel::regular(pts[rng() % pts.size()], 1 + static_cast<int>(rng() % 3));
    }
  }
}

}  // namespace

TEST_SUITE("kronecker") {

TEST_CASE("decomposeRep examples") {
  CHECK(decomposeRep(KroneckerRep(Q, 0, 1)) == std::vector<RepLabel>{RepLabel::preproj(0)});
  CHECK(decomposeRep(KroneckerRep(Q, 1, 0)) == std::vector<RepLabel>{RepLabel::preinj(0)});
  KroneckerRep p1(fromRows(Q, 2, 1, {1, 0}), fromRows(Q, 2, 1, {0, 1}));
  CHECK(decomposeRep(p1) == std::vector<RepLabel>{RepLabel::preproj(1)});
  KroneckerRep reg(fromRows(Q, 1, 1, {1}), fromRows(Q, 1, 1, {1}));
  CHECK(decomposeRep(reg) == std::vector<RepLabel>{RepLabel::regular(ClosedPoint::finite(P(Q, exact::Ring::PolyU, {-1, 1})), 1)});
  // B alone invertible, A nilpotent: the point at infinity
  KroneckerRep inf(fromRows(Q, 2, 2, {0, 0, 1, 0}), ScalarMatrix::identity(Q, 2));
  CHECK(decomposeRep(inf) == std::vector<RepLabel>{RepLabel::regular(ClosedPoint::infinity(Q), 2)});
  // x^2 + 1 is a single closed point of degree two over Q
  KroneckerRep quad(ScalarMatrix::identity(Q, 2), fromRows(Q, 2, 2, {0, -1, 1, 0}));
  auto ls = decomposeRep(quad);
  REQUIRE(ls.size() == 1);
  CHECK(ls[0].pt.degree() == 2);
  CHECK(ls[0].length == 1);
  // over F5 it splits
  const Field f5 = Field::prime(5);
  KroneckerRep quad5(ScalarMatrix::identity(f5, 2), fromRows(f5, 2, 2, {0, -1, 1, 0}));
  CHECK(decomposeRep(quad5).size() == 2);
}

TEST_CASE("canonical representations have the advertised dimension vectors") {
  for (Field f : {Q, Field::prime(5)}) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 40; ++i) {
      RepLabel l = randomRepLabel(f, rng);
      KroneckerRep r = canonicalRep(l, f);
      CHECK(r.dimensionVector() == l.dimensionVector());
      // indecomposable: End is local, so dim End equals the length times the point degree or 1
      int expected = l.kind == RepLabel::Kind::Regular ? l.length * l.pt.degree() : 1;
      CHECK(homOracle(r, r) == expected);
    }
  }
}

TEST_CASE("repHom against the commutation equations") {
  std::mt19937_64 rng(5);
  for (Field f : {Q, Field::prime(5)})
    for (int i = 0; i < 25; ++i) {
      KroneckerRep r = canonicalRep(randomRepLabel(f, rng), f);
      KroneckerRep s = directSum(canonicalRep(randomRepLabel(f, rng), f), canonicalRep(randomRepLabel(f, rng), f));
      auto hom = repHom(r, s);
      CHECK(static_cast<int>(hom.size()) == homOracle(r, s));
      for (const auto& [p1, p0] : hom) {
        if (r.d1 == 0 || s.d0 == 0) continue;
        CHECK(p0 * r.mapA == s.mapA * p1);
        CHECK(p0 * r.mapB == s.mapB * p1);
      }
    }
}

TEST_CASE("decomposition recovers scrambled canonical sums") {
  for (Field f : {Q, Field::prime(5)}) {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 30; ++i) {
      std::vector<RepLabel> labels;
      int k = 1 + static_cast<int>(rng() % 4);
      KroneckerRep sum(f, 0, 0);
      for (int j = 0; j < k; ++j) {
        labels.push_back(randomRepLabel(f, rng));
        sum = directSum(sum, canonicalRep(labels.back(), f));
      }
      std::sort(labels.begin(), labels.end());
      KroneckerRep r = transport(sum, randomInvertible(f, sum.d0, rng), randomInvertible(f, sum.d1, rng));
      CHECK(decomposeRep(r) == labels);
    }
  }
}

TEST_CASE("dimension additivity and defect on random pencils") {
  std::mt19937_64 rng(11);
  for (Field f : {Q, Field::prime(5)})
    for (int i = 0; i < 40; ++i) {
      int d1 = static_cast<int>(rng() % 4), d0 = static_cast<int>(rng() % 4);
      KroneckerRep r(f, d1, d0);
      if (d0 > 0 && d1 > 0) r = KroneckerRep(randomScalars(f, d0, d1, rng), randomScalars(f, d0, d1, rng));
      auto labels = decomposeRep(r);
      int s1 = 0, s0 = 0, defect = 0;
      for (const auto& l : labels) {
        s1 += l.dimensionVector().first;
        s0 += l.dimensionVector().second;
        if (l.kind == RepLabel::Kind::Preproj) ++defect;
        if (l.kind == RepLabel::Kind::Preinj) --defect;
      }
      CHECK(s1 == d1);
      CHECK(s0 == d0);
      CHECK(defect == d0 - d1);
    }
}

TEST_CASE("tilt of line bundles and torsion sheaves") {
  for (Field f : {Q, Field::prime(5)}) {
    for (int n = -5; n <= 5; ++n) {
      TiltImage t = tilt(lineBundle(f, n));
      if (n >= 0) {
        CHECK(t.deg0.dimensionVector() == std::pair{n, n + 1});
        CHECK(t.deg1.isZero());
      } else {
        CHECK(t.deg0.isZero());
        CHECK(t.deg1.dimensionVector() == std::pair{-n, -n - 1});
      }
    }
    for (const auto& pt : points(f))
      for (int m = 1; m <= 3; ++m) {
        TiltImage t = tilt(torsionSheaf(pt, m));
        const int len = m * pt.degree();
        CHECK(t.deg0.dimensionVector() == std::pair{len, len});
        CHECK(t.deg1.isZero());
      }
  }
}

TEST_CASE("support dictionary calibration") {
  for (Field f : {Q, Field::prime(5)})
    for (const auto& pt : points(f)) {
      auto ls = decomposeRep(tilt(torsionSheaf(pt, 1)).deg0);
      CHECK(ls == std::vector<RepLabel>{RepLabel::regular(pt, 1)});
    }
}

TEST_CASE("sheaf labels from representation labels") {
  CHECK(sheafLabelFromRep(RepLabel::preproj(3), 0) == SheafLabel::lb(3));
  CHECK(sheafLabelFromRep(RepLabel::preinj(0), 1) == SheafLabel::lb(-1));
  ClosedPoint x = ClosedPoint::finite(P(Q, exact::Ring::PolyU, {0, 1}));
  CHECK(sheafLabelFromRep(RepLabel::regular(x, 2), 0) == SheafLabel::tors(x, 2));
  CHECK_THROWS_WITH(sheafLabelFromRep(RepLabel::preinj(2), 0), doctest::Contains("not in the image of coherent sheaves"));
  CHECK_THROWS_WITH(sheafLabelFromRep(RepLabel::preproj(0), 1), doctest::Contains("not in the image of coherent sheaves"));
  CHECK_THROWS_WITH(sheafLabelFromRep(RepLabel::regular(x, 1), 1), doctest::Contains("not in the image of coherent sheaves"));
}

TEST_CASE("round trip through the tilt on random sheaves") {
  auto t0 = std::chrono::steady_clock::now();
  int checked = 0;
  for (Field f : {Q, Field::prime(5)}) {
    std::mt19937_64 rng(f.isRational() ? 13 : 17);
    for (int i = 0; i < 50; ++i) {
      auto labels = testsupport::randomLabels(f, rng, 3, 3, 2);
      CoherentSheaf s = testsupport::scramble(testsupport::sheafOf(labels, f), rng);
      TiltImage t = tilt(s);
      // no preinjectives in degree 0, only preinjectives in degree 1
      for (const auto& l : decomposeRep(t.deg0)) CHECK(l.kind != RepLabel::Kind::Preinj);
      for (const auto& l : decomposeRep(t.deg1)) CHECK(l.kind == RepLabel::Kind::Preinj);
      auto viaTilt = decomposeViaTilt(s);
      CHECK(viaTilt == labels);
      CHECK(sheaf::decomposeSheaf(s) == viaTilt);
      ++checked;
    }
  }
  CHECK(checked == 100);
  MESSAGE("round trip seconds: " << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
}

TEST_CASE("tilt dimension vectors follow the Euler characteristic") {
  std::mt19937_64 rng(19);
  for (int i = 0; i < 30; ++i) {
    auto labels = testsupport::randomLabels(Q, rng, 3, 3, 2);
    CoherentSheaf s = testsupport::sheafOf(labels, Q);
    TiltImage t = tilt(s);
    CHECK(t.deg0.d0 - t.deg1.d0 == homalg::eulerChar(s));
    CHECK(t.deg0.d1 - t.deg1.d1 == homalg::eulerChar(sheaf::twist(s, -1)));
  }
}

}  // TEST_SUITE
