#include "purisheaf/kronecker/kronecker.hpp"

#include <algorithm>
#include <random>

#include "purisheaf/error.hpp"
#include "purisheaf/exact/factor.hpp"
#include "purisheaf/exact/matrix.hpp"
#include "purisheaf/homalg/homalg.hpp"

namespace purisheaf::kronecker {

using exact::Echelon;
using exact::Ring;
using exact::RingElement;
using exact::RingMatrix;
using exact::Scalar;
using exact::SparseVec;

KroneckerRep::KroneckerRep(Field f, int d1_, int d0_)
    : field(f), d1(d1_), d0(d0_), mapA(f, d0_, d1_), mapB(f, d0_, d1_) {}

KroneckerRep::KroneckerRep(ScalarMatrix a, ScalarMatrix b)
    : field(a.field), d1(a.cols), d0(a.rows), mapA(std::move(a)), mapB(std::move(b)) {
  if (mapB.rows != d0 || mapB.cols != d1) throw MathError("kronecker", "map shapes do not match");
}

// ---------- labels ----------

std::pair<int, int> RepLabel::dimensionVector() const {
  switch (kind) {
    case Kind::Preproj:
      return {n, n + 1};
    case Kind::Preinj:
      return {n + 1, n};
    case Kind::Regular:
      return {length * pt.degree(), length * pt.degree()};
  }
  return {0, 0};
}

std::string RepLabel::toString() const {
  switch (kind) {
    case Kind::Preproj:
      return "Preproj(" + std::to_string(n) + ")";
    case Kind::Preinj:
      return "Preinj(" + std::to_string(n) + ")";
    case Kind::Regular:
      return "Regular(" + pt.toString() + ", " + std::to_string(length) + ")";
  }
  return {};
}

bool operator==(const RepLabel& a, const RepLabel& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == RepLabel::Kind::Regular) return a.pt == b.pt && a.length == b.length;
  return a.n == b.n;
}

bool operator<(const RepLabel& a, const RepLabel& b) {
  if (a.kind != b.kind) return a.kind < b.kind;
  if (a.kind != RepLabel::Kind::Regular) return a.n < b.n;
  if (!(a.pt == b.pt)) return a.pt < b.pt;
  return a.length < b.length;
}

// ---------- tilt ----------

TiltImage tilt(const CoherentSheaf& f) {
  const Field fld = f.field();
  CoherentSheaf f1 = sheaf::twist(f, -1);
  homalg::CechDatum c1 = homalg::cech(f1);
  homalg::CechDatum c0 = homalg::cech(f, c1.windowUsed() + 2);
  const RingElement x = RingElement::variable(fld, Ring::PolyU);
  const RingElement y = RingElement::variable(fld, Ring::PolyV);
  const RingElement xl = RingElement::variable(fld, Ring::Laurent);

  TiltImage out;
  out.deg0 = KroneckerRep(fld, c1.h0(), c0.h0());
  for (int j = 0; j < c1.h0(); ++j) {
    const homalg::SectionPair& s = c1.h0Basis()[static_cast<std::size_t>(j)];
    std::vector<Scalar> a = c0.h0Coordinates({s.u, s.v.scaled(y)});
    std::vector<Scalar> b = c0.h0Coordinates({s.u.scaled(x), s.v});
    for (int i = 0; i < c0.h0(); ++i) {
      out.deg0.mapA(i, j) = a[static_cast<std::size_t>(i)];
      out.deg0.mapB(i, j) = b[static_cast<std::size_t>(i)];
    }
  }
  out.deg1 = KroneckerRep(fld, c1.h1(), c0.h1());
  for (int j = 0; j < c1.h1(); ++j) {
    const RingMatrix& z = c1.h1Basis()[static_cast<std::size_t>(j)];
    std::vector<Scalar> a = c0.h1Coordinates(z);
    std::vector<Scalar> b = c0.h1Coordinates(z.scaled(xl));
    for (int i = 0; i < c0.h1(); ++i) {
      out.deg1.mapA(i, j) = a[static_cast<std::size_t>(i)];
      out.deg1.mapB(i, j) = b[static_cast<std::size_t>(i)];
    }
  }
  return out;
}

// ---------- canonical representations ----------

namespace {

ScalarMatrix companion(const RingElement& q) {
  const Field f = q.field();
  const int n = q.degree();
  ScalarMatrix c(f, n, n);
  for (int i = 1; i < n; ++i) c(i, i - 1) = f.one();
  for (int i = 0; i < n; ++i) c(i, n - 1) = -q.coeff(i);
  return c;
}

ScalarMatrix transposed(const ScalarMatrix& m) {
  ScalarMatrix t(m.field, m.cols, m.rows);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) t(j, i) = m(i, j);
  return t;
}

// dim of degree <= j polynomial kernel vectors of the pencil A + tB
int polyKernelDim(const ScalarMatrix& a, const ScalarMatrix& b, int j) {
  const int rows = a.rows, cols = a.cols;
  std::vector<SparseVec> columns;
  for (int i = 0; i <= j; ++i)
    for (int c = 0; c < cols; ++c) {
      SparseVec v;
      for (int r = 0; r < rows; ++r)
        if (!a(r, c).isZero()) v.push_back({i * rows + r, a(r, c)});
      for (int r = 0; r < rows; ++r)
        if (!b(r, c).isZero()) v.push_back({(i + 1) * rows + r, b(r, c)});
      columns.push_back(std::move(v));
    }
  return (j + 1) * cols - exact::rankOfColumns(a.field, (j + 2) * rows, columns);
}

// counts of minimal column indices of A + tB
std::vector<int> minimalIndices(const ScalarMatrix& a, const ScalarMatrix& b) {
  std::vector<int> kappa;
  std::vector<int> out;
  auto k = [&](int j) { return j < 0 ? 0 : kappa[static_cast<std::size_t>(j)]; };
  for (int j = 0; j <= a.rows; ++j) {
    kappa.push_back(polyKernelDim(a, b, j));
    int cnt = k(j) - 2 * k(j - 1) + k(j - 2);
    for (int t = 0; t < cnt; ++t) out.push_back(j);
  }
  return out;
}

RingMatrix linearPencil(const ScalarMatrix& lin, const ScalarMatrix& con, Ring r) {
  // lin·t - con
  const Field f = lin.field;
  RingMatrix m(f, r, lin.rows, lin.cols);
  for (int i = 0; i < lin.rows; ++i)
    for (int j = 0; j < lin.cols; ++j)
      m(i, j) = RingElement::monomial(lin(i, j), 1, r) - RingElement::constant(con(i, j), r);
  return m;
}

Scalar rnd(Field f, std::mt19937_64& rng) { return f.fromInt(static_cast<long>(rng() % 11) - 5); }

}  // namespace

KroneckerRep canonicalRep(const RepLabel& l, Field f) {
  using K = RepLabel::Kind;
  auto [d1, d0] = l.dimensionVector();
  KroneckerRep r(f, d1, d0);
  switch (l.kind) {
    case K::Preproj:
      for (int i = 0; i < l.n; ++i) {
        r.mapA(i, i) = f.one();
        r.mapB(i + 1, i) = f.one();
      }
      break;
    case K::Preinj:
      for (int i = 0; i < l.n; ++i) {
        r.mapA(i, i) = f.one();
        r.mapB(i, i + 1) = f.one();
      }
      break;
    case K::Regular:
      if (l.pt.isInfinity()) {
        for (int i = 0; i < d0; ++i) r.mapB(i, i) = f.one();
        for (int i = 1; i < d0; ++i) r.mapA(i, i - 1) = f.one();
      } else {
        for (int i = 0; i < d0; ++i) r.mapA(i, i) = f.one();
        r.mapB = companion(exact::power(l.pt.poly(), l.length));
      }
      break;
  }
  return r;
}

KroneckerRep directSum(const KroneckerRep& a, const KroneckerRep& b) {
  KroneckerRep r(a.field, a.d1 + b.d1, a.d0 + b.d0);
  for (int i = 0; i < a.d0; ++i)
    for (int j = 0; j < a.d1; ++j) {
      r.mapA(i, j) = a.mapA(i, j);
      r.mapB(i, j) = a.mapB(i, j);
    }
  for (int i = 0; i < b.d0; ++i)
    for (int j = 0; j < b.d1; ++j) {
      r.mapA(a.d0 + i, a.d1 + j) = b.mapA(i, j);
      r.mapB(a.d0 + i, a.d1 + j) = b.mapB(i, j);
    }
  return r;
}

std::vector<std::pair<ScalarMatrix, ScalarMatrix>> repHom(const KroneckerRep& r, const KroneckerRep& s) {
  const Field f = r.field;
  const int n1 = s.d1 * r.d1;
  const int block = s.d0 * r.d1;
  std::vector<SparseVec> columns;
  // P1(k, j)
  for (int k = 0; k < s.d1; ++k)
    for (int j = 0; j < r.d1; ++j) {
      SparseVec v;
      for (int b = 0; b < 2; ++b) {
        const ScalarMatrix& ms = b == 0 ? s.mapA : s.mapB;
        for (int i = 0; i < s.d0; ++i)
          if (!ms(i, k).isZero()) v.push_back({b * block + i * r.d1 + j, -ms(i, k)});
      }
      std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
      columns.push_back(std::move(v));
    }
  // P0(i, k)
  for (int i = 0; i < s.d0; ++i)
    for (int k = 0; k < r.d0; ++k) {
      SparseVec v;
      for (int b = 0; b < 2; ++b) {
        const ScalarMatrix& mr = b == 0 ? r.mapA : r.mapB;
        for (int j = 0; j < r.d1; ++j)
          if (!mr(k, j).isZero()) v.push_back({b * block + i * r.d1 + j, mr(k, j)});
      }
      columns.push_back(std::move(v));
    }
  exact::KernelResult ker = exact::kernelOfColumns(f, 2 * block, columns);
  std::vector<std::pair<ScalarMatrix, ScalarMatrix>> out;
  for (const SparseVec& v : ker.kernel) {
    ScalarMatrix p1(f, s.d1, r.d1), p0(f, s.d0, r.d0);
    for (const auto& [idx, c] : v) {
      if (idx < n1)
        p1(idx / r.d1, idx % r.d1) = c;
      else
        p0((idx - n1) / r.d0, (idx - n1) % r.d0) = c;
    }
    out.emplace_back(std::move(p1), std::move(p0));
  }
  return out;
}

std::vector<RepLabel> decomposeRep(const KroneckerRep& r, bool certify) {
  std::vector<RepLabel> labels;
  if (r.isZero()) return labels;
  const Field f = r.field;
  for (int e : minimalIndices(r.mapA, r.mapB)) labels.push_back(RepLabel::preinj(e));
  for (int e : minimalIndices(transposed(r.mapA), transposed(r.mapB))) labels.push_back(RepLabel::preproj(e));
  if (r.d0 > 0 && r.d1 > 0) {
    exact::SmithForm su = exact::smithNormalForm(linearPencil(r.mapA, r.mapB, Ring::PolyU));
    for (const RingElement& d : su.diagonal) {
      if (d.isUnit()) continue;
      for (const auto& fac : exact::factorPolynomial(d))
        labels.push_back(RepLabel::regular(ClosedPoint::finite(fac.p), fac.multiplicity));
    }
    // A - y·B
    ScalarMatrix negA = r.mapA.scaled(-f.one());
    exact::SmithForm sv = exact::smithNormalForm(linearPencil(r.mapB, negA, Ring::PolyV));
    for (const RingElement& d : sv.diagonal)
      if (d.lowExponent() > 0) labels.push_back(RepLabel::regular(ClosedPoint::infinity(f), d.lowExponent()));
  }
  std::sort(labels.begin(), labels.end());
  int s1 = 0, s0 = 0;
  for (const auto& l : labels) {
    s1 += l.dimensionVector().first;
    s0 += l.dimensionVector().second;
  }
  if (s1 != r.d1 || s0 != r.d0) throw MathError("kronecker", "decomposition dimension mismatch");
  if (!certify) return labels;

  KroneckerRep canon(f, 0, 0);
  for (const auto& l : labels) canon = directSum(canon, canonicalRep(l, f));
  auto hom = repHom(canon, r);
  std::mt19937_64 rng(0x6b726f6eULL);
  for (int attempt = 0; attempt < 40 && !hom.empty(); ++attempt) {
    ScalarMatrix p1(f, r.d1, r.d1), p0(f, r.d0, r.d0);
    for (const auto& [h1, h0] : hom) {
      Scalar c = rnd(f, rng);
      if (c.isZero()) continue;
      p1 = p1 + h1.scaled(c);
      p0 = p0 + h0.scaled(c);
    }
    if (p1.rank() == r.d1 && p0.rank() == r.d0) return labels;
  }
  throw MathError("kronecker", "decomposition certificate failed");
}

SheafLabel sheafLabelFromRep(const RepLabel& l, int degree) {
  using K = RepLabel::Kind;
  if (degree == 0 && l.kind == K::Preproj) return SheafLabel::lb(l.n);
  if (degree == 0 && l.kind == K::Regular) return SheafLabel::tors(l.pt, l.length);
  if (degree == 1 && l.kind == K::Preinj) return SheafLabel::lb(-l.n - 1);
  throw MathError("kronecker", "not in the image of coherent sheaves");
}

std::vector<SheafLabel> decomposeViaTilt(const CoherentSheaf& f, bool certify) {
  TiltImage t = tilt(f);
  std::vector<SheafLabel> out;
  for (const auto& l : decomposeRep(t.deg0, certify)) out.push_back(sheafLabelFromRep(l, 0));
  for (const auto& l : decomposeRep(t.deg1, certify)) out.push_back(sheafLabelFromRep(l, 1));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace purisheaf::kronecker
