#include <algorithm>
#include <functional>

#include "purisheaf/exact/matrix.hpp"

namespace purisheaf::exact {
namespace {

void checkBudget(const RingMatrix& m, int budget) {
  if (m.maxDegree() > budget) throw DegreeBudgetExceeded("exactlinear");
}

}  // namespace

SmithForm smithNormalForm(const RingMatrix& m, int degreeBudget) {
  if (!isEuclidean(m.ring())) throw MathError("exactlinear", "unsupported ring");
  const Field f = m.field();
  const Ring ring = m.ring();
  const int rows = m.rows();
  const int cols = m.cols();
  RingMatrix a = m;
  RingMatrix u = RingMatrix::identity(f, ring, rows);
  RingMatrix uinv = RingMatrix::identity(f, ring, rows);
  RingMatrix v = RingMatrix::identity(f, ring, cols);
  std::vector<RingElement> diag;

  for (int t = 0; t < std::min(rows, cols); ++t) {
    int pi = -1, pj = -1, best = 0;
    for (int i = t; i < rows; ++i)
      for (int j = t; j < cols; ++j) {
        const auto& e = a(i, j);
        if (!e.isZero() && (pi < 0 || e.degree() < best)) {
          pi = i;
          pj = j;
          best = e.degree();
        }
      }
    if (pi < 0) break;
    a.swapRows(t, pi);
    u.swapRows(t, pi);
    uinv.swapCols(t, pi);
    a.swapCols(t, pj);
    v.swapCols(t, pj);

    for (;;) {
      // monic pivot, otherwise rational remainders blow up
      Scalar lc = a(t, t).leadingCoeff();
      if (!lc.isOne()) {
        a.scaleRow(t, lc.inverse());
        u.scaleRow(t, lc.inverse());
        uinv.scaleCol(t, lc);
      }
      bool moved = false;
      for (int i = t + 1; i < rows && !moved; ++i) {
        if (a(i, t).isZero()) continue;
        RingElement q = divMod(a(i, t), a(t, t)).quotient;
        a.addRowMultiple(i, t, -q);
        u.addRowMultiple(i, t, -q);
        uinv.addColMultiple(t, i, q);
        if (!a(i, t).isZero()) {
          a.swapRows(t, i);
          u.swapRows(t, i);
          uinv.swapCols(t, i);
          moved = true;
        }
      }
      for (int j = t + 1; j < cols && !moved; ++j) {
        if (a(t, j).isZero()) continue;
        RingElement q = divMod(a(t, j), a(t, t)).quotient;
        a.addColMultiple(j, t, -q);
        v.addColMultiple(j, t, -q);
        if (!a(t, j).isZero()) {
          a.swapCols(t, j);
          v.swapCols(t, j);
          moved = true;
        }
      }
      if (moved) continue;
      bool clear = true;
      for (int i = t + 1; i < rows; ++i) clear = clear && a(i, t).isZero();
      for (int j = t + 1; j < cols; ++j) clear = clear && a(t, j).isZero();
      if (!clear) continue;
      // divisibility: the pivot must divide every remaining entry
      bool fixed = false;
      for (int i = t + 1; i < rows && !fixed; ++i)
        for (int j = t + 1; j < cols && !fixed; ++j)
          if (!divides(a(t, t), a(i, j))) {
            a.addRowMultiple(t, i, RingElement::one(f, ring));
            u.addRowMultiple(t, i, RingElement::one(f, ring));
            uinv.addColMultiple(i, t, -RingElement::one(f, ring));
            fixed = true;
          }
      if (!fixed) break;
    }
    Scalar inv = a(t, t).leadingCoeff().inverse();
    a.scaleRow(t, inv);
    u.scaleRow(t, inv);
    uinv.scaleCol(t, inv.inverse());
    diag.push_back(a(t, t));
    checkBudget(a, degreeBudget);
    checkBudget(u, degreeBudget);
    checkBudget(v, degreeBudget);
  }
  return {std::move(a), std::move(u), std::move(v), std::move(diag), std::move(uinv)};
}

SmithForm laurentSmithForm(const RingMatrix& m, int degreeBudget) {
  if (m.ring() != Ring::Laurent) return smithNormalForm(m, degreeBudget);
  const int shift = std::max(0, -m.minExponent());
  RingMatrix cleared(m.field(), Ring::PolyU, m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) cleared(i, j) = m(i, j).shifted(shift).withRing(Ring::PolyU);
  SmithForm sf = smithNormalForm(cleared, degreeBudget);
  SmithForm out;
  out.u = sf.u.toLaurent();
  out.v = sf.v.toLaurent();
  out.uinv = sf.uinv.toLaurent();
  out.s = out.u * m * out.v;
  for (const auto& d : sf.diagonal) out.diagonal.push_back(d.toLaurent().normalized());
  return out;
}

LinearSolution solveLinear(const RingMatrix& a, const RingMatrix& b, int degreeBudget) {
  if (a.rows() != b.rows()) throw MathError("exactlinear", "shape mismatch in solveLinear");
  if (a.ring() != b.ring()) throw MathError("exactlinear", "ring mismatch in solveLinear");
  const Field f = a.field();
  const Ring ring = a.ring();
  const bool laurent = ring == Ring::Laurent;

  RingMatrix aa = a, bb = b;
  if (laurent) {
    const int shift = std::max({0, -a.minExponent(), -b.minExponent()});
    aa = RingMatrix(f, Ring::PolyU, a.rows(), a.cols());
    bb = RingMatrix(f, Ring::PolyU, b.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i) {
      for (int j = 0; j < a.cols(); ++j) aa(i, j) = a(i, j).shifted(shift).withRing(Ring::PolyU);
      for (int j = 0; j < b.cols(); ++j) bb(i, j) = b(i, j).shifted(shift).withRing(Ring::PolyU);
    }
  }
  const Ring work = aa.ring();
  SmithForm sf = smithNormalForm(aa, degreeBudget);
  RingMatrix c = sf.u * bb;
  const int r = sf.rank();
  LinearSolution sol;
  RingMatrix y(f, work, a.cols(), b.cols());
  if (laurent) y = RingMatrix(f, Ring::Laurent, a.cols(), b.cols());
  for (int j = 0; j < b.cols(); ++j) {
    for (int i = 0; i < r; ++i) {
      const RingElement& cij = c(i, j);
      const RingElement& d = sf.diagonal[static_cast<std::size_t>(i)];
      if (laurent) {
        RingElement cl = cij.withRing(Ring::Laurent);
        RingElement dl = d.withRing(Ring::Laurent);
        if (!divides(dl, cl)) {
          sol.solvable = false;
          return sol;
        }
        y(i, j) = exactDiv(cl, dl);
      } else {
        DivMod qr = divMod(cij, d);
        if (!qr.remainder.isZero()) {
          sol.solvable = false;
          return sol;
        }
        y(i, j) = qr.quotient;
      }
    }
    for (int i = r; i < a.rows(); ++i)
      if (!c(i, j).isZero()) {
        sol.solvable = false;
        return sol;
      }
  }
  RingMatrix v = laurent ? sf.v.toLaurent() : sf.v;
  sol.solvable = true;
  sol.particular = v * y;
  std::vector<int> kcols;
  for (int j = r; j < a.cols(); ++j) kcols.push_back(j);
  sol.homogeneous = v.selectCols(kcols);
  return sol;
}

RingMatrix kernelBasis(const RingMatrix& a, int degreeBudget) {
  return solveLinear(a, RingMatrix(a.field(), a.ring(), a.rows(), 0), degreeBudget).homogeneous;
}

RingMatrix inverseUnimodular(const RingMatrix& m, int degreeBudget) {
  if (m.rows() != m.cols()) throw MathError("exactlinear", "inverse of a non-square matrix");
  LinearSolution s = solveLinear(m, RingMatrix::identity(m.field(), m.ring(), m.rows()), degreeBudget);
  if (!s.solvable || s.homogeneous.cols() != 0)
    throw MathError("exactlinear", "matrix is not invertible over " + ringName(m.ring()));
  return s.particular;
}

RingElement determinant(const RingMatrix& m) {
  if (m.rows() != m.cols()) throw MathError("exactlinear", "determinant of a non-square matrix");
  const int n = m.rows();
  if (n == 0) return RingElement::one(m.field(), m.ring());
  if (n == 1) return m(0, 0);
  RingElement det = RingElement::zero(m.field(), m.ring());
  std::vector<int> rest;
  for (int i = 1; i < n; ++i) rest.push_back(i);
  for (int j = 0; j < n; ++j) {
    if (m(0, j).isZero()) continue;
    std::vector<int> cs;
    for (int k = 0; k < n; ++k)
      if (k != j) cs.push_back(k);
    RingElement minor = determinant(m.selectRows(rest).selectCols(cs));
    RingElement term = m(0, j) * minor;
    det = (j % 2 == 0) ? det + term : det - term;
  }
  return det;
}

RingElement gcdOfMinors(const RingMatrix& m, int k) {
  RingElement g = RingElement::zero(m.field(), m.ring());
  if (k == 0) return RingElement::one(m.field(), m.ring());
  std::vector<int> rs, cs;
  std::function<void(int, std::vector<int>&, int, std::vector<std::vector<int>>&)> choose =
      [&](int start, std::vector<int>& cur, int n, std::vector<std::vector<int>>& out) {
        if (static_cast<int>(cur.size()) == k) {
          out.push_back(cur);
          return;
        }
        for (int i = start; i < n; ++i) {
          cur.push_back(i);
          choose(i + 1, cur, n, out);
          cur.pop_back();
        }
      };
  std::vector<std::vector<int>> rowSets, colSets;
  choose(0, rs, m.rows(), rowSets);
  choose(0, cs, m.cols(), colSets);
  for (const auto& r : rowSets)
    for (const auto& c : colSets) g = gcd(g, determinant(m.selectRows(r).selectCols(c)));
  return g;
}

}  // namespace purisheaf::exact
