#include <algorithm>
#include <climits>

#include "purisheaf/error.hpp"
#include "purisheaf/exact/klinear.hpp"
#include "purisheaf/sheafp1/sheaf.hpp"

// Normal-form coordinates on both charts, then the free block of the glue is
// column reduced over k[x] until its leading coefficient matrix is invertible;
// what is left over k[1/x] is absorbed into chart V.

namespace purisheaf::sheaf {

using exact::Scalar;
using exact::SparseVec;

namespace {

RingMatrix diagonalRelations(const fpmod::NormalForm& nf, Field f, Ring r) {
  RingMatrix rel(f, r, nf.size(), nf.torsion());
  for (int i = 0; i < nf.torsion(); ++i) rel(i, i) = nf.factors[static_cast<std::size_t>(i)];
  return rel;
}

// representative of e in L/(d), as a polynomial of degree < deg d (Laurent ring)
RingElement overlapResidue(const RingElement& e, const RingElement& d) {
  RingElement core = d.toLaurent().stripLowPower();
  if (e.isZero() || core.isConstant()) return RingElement::zero(e.field(), Ring::Laurent);
  return exact::reduceMod(e.toLaurent(), core.withRing(Ring::PolyU));
}

int maxExp(const RingElement& e) { return e.isZero() ? INT_MIN : e.degree(); }

}  // namespace

SimplifiedSheaf simplifyPresentation(const CoherentSheaf& s) {
  const Field k = s.field();
  const fpmod::NormalForm& nu = s.mU().normalForm();
  const fpmod::NormalForm& nv = s.mV().normalForm();
  const int tu = nu.torsion(), tv = nv.torsion(), r = nu.freeRank;
  const int n = nu.size(), m = nv.size();
  if (nv.freeRank != r) throw MathError("sheafp1", "chart ranks disagree");

  RingMatrix phi = nv.toNormal.toLaurent() * s.phi() * nu.fromNormal.toLaurent();  // m x n
  RingMatrix psi = nu.toNormal.toLaurent() * s.psi() * nv.fromNormal.toLaurent();  // n x m

  // U-side change [[I, C], [0, B]] and its inverse [[I, -C], [0, B^-1]]
  RingMatrix c(k, Ring::PolyU, tu, r);
  if (tu > 0 && tv > 0 && r > 0) {
    RingMatrix relV(k, Ring::Laurent, tv, tv);
    for (int i = 0; i < tv; ++i) relV(i, i) = nv.factors[static_cast<std::size_t>(i)].toLaurent();
    RingMatrix rhs = phi.block(0, tu, tv, r).scaled(RingElement::constant(-k.one(), Ring::Laurent));
    exact::LinearSolution sol = exact::solveLinear(RingMatrix::hcat(phi.block(0, 0, tv, tu), relV), rhs);
    if (!sol.solvable) throw MathError("sheafp1", "torsion part of the glue does not split off");
    for (int i = 0; i < tu; ++i)
      for (int j = 0; j < r; ++j)
        c(i, j) = overlapResidue(sol.particular(i, j), nu.factors[static_cast<std::size_t>(i)]).withRing(Ring::PolyU);
  }

  RingMatrix ff = phi.block(tv, tu, r, r);
  RingMatrix b = RingMatrix::identity(k, Ring::PolyU, r);
  RingMatrix binv = RingMatrix::identity(k, Ring::PolyU, r);
  std::vector<int> deg(static_cast<std::size_t>(r));
  for (int guard = 0;; ++guard) {
    if (guard > 64 * (r + 1) + 4 * kDefaultDegreeBudget) throw MathError("sheafp1", "glue reduction did not terminate");
    for (int j = 0; j < r; ++j) {
      int d = INT_MIN;
      for (int i = 0; i < r; ++i) d = std::max(d, maxExp(ff(i, j)));
      if (d == INT_MIN) throw MathError("sheafp1", "glue is not invertible on the free part");
      deg[static_cast<std::size_t>(j)] = d;
    }
    std::vector<SparseVec> lead(static_cast<std::size_t>(r));
    for (int j = 0; j < r; ++j)
      for (int i = 0; i < r; ++i) {
        Scalar a = ff(i, j).coeff(deg[static_cast<std::size_t>(j)]);
        if (!a.isZero()) lead[static_cast<std::size_t>(j)].push_back({i, a});
      }
    exact::KernelResult ker = exact::kernelOfColumns(k, r, lead);
    if (ker.kernel.empty()) break;
    const SparseVec& v = ker.kernel.front();
    int top = v.front().first;
    for (const auto& [j, a] : v)
      if (deg[static_cast<std::size_t>(j)] > deg[static_cast<std::size_t>(top)]) top = j;
    Scalar vt;
    for (const auto& [j, a] : v)
      if (j == top) vt = a;
    for (const auto& [j, a] : v) {
      if (j == top) continue;
      RingElement q = RingElement::monomial(a * vt.inverse(), deg[static_cast<std::size_t>(top)] - deg[static_cast<std::size_t>(j)], Ring::PolyU);
      ff.addColMultiple(top, j, q.toLaurent());
      b.addColMultiple(top, j, q);
      binv.addRowMultiple(j, top, -q);
    }
  }

  // A = diag(x^d) B^-1 psi_ff lies over k[1/x]; H = A^-1 = phi_ff B diag(x^-d)
  RingMatrix xd(k, Ring::Laurent, r, r), xmd(k, Ring::Laurent, r, r);
  for (int j = 0; j < r; ++j) {
    xd(j, j) = RingElement::monomial(k.one(), deg[static_cast<std::size_t>(j)], Ring::Laurent);
    xmd(j, j) = RingElement::monomial(k.one(), -deg[static_cast<std::size_t>(j)], Ring::Laurent);
  }
  RingMatrix aL = xd * binv.toLaurent() * psi.block(tu, tv, r, r);
  RingMatrix hL = phi.block(tv, tu, r, r) * b.toLaurent() * xmd;
  for (const RingMatrix* mat : {&aL, &hL})
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        if (!(*mat)(i, j).isZero() && (*mat)(i, j).degree() > 0)
          throw MathError("sheafp1", "glue reduction left a non-polynomial chart change");

  // chart changes: new -> normal coordinates
  RingMatrix tU = RingMatrix::identity(k, Ring::PolyU, n), tUinv = RingMatrix::identity(k, Ring::PolyU, n);
  RingMatrix tV = RingMatrix::identity(k, Ring::PolyV, m), tVinv = RingMatrix::identity(k, Ring::PolyV, m);
  RingMatrix aV = aL.laurentToV(), hV = hL.laurentToV();
  for (int i = 0; i < tu; ++i)
    for (int j = 0; j < r; ++j) {
      RingElement cb = RingElement::zero(k, Ring::PolyU);
      for (int l = 0; l < r; ++l) cb += c(i, l) * b(l, j);
      tU(i, tu + j) = cb;
      tUinv(i, tu + j) = -c(i, j);
    }
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      tU(tu + i, tu + j) = b(i, j);
      tUinv(tu + i, tu + j) = binv(i, j);
      tV(tv + i, tv + j) = hV(i, j);
      tVinv(tv + i, tv + j) = aV(i, j);
    }

  RingMatrix phiN(k, Ring::Laurent, m, n), psiN(k, Ring::Laurent, n, m);
  for (int i = 0; i < tv; ++i)
    for (int j = 0; j < tu; ++j) phiN(i, j) = overlapResidue(phi(i, j), nv.factors[static_cast<std::size_t>(i)]);
  for (int i = 0; i < tu; ++i)
    for (int j = 0; j < tv; ++j) psiN(i, j) = overlapResidue(psi(i, j), nu.factors[static_cast<std::size_t>(i)]);
  for (int j = 0; j < r; ++j) {
    phiN(tv + j, tu + j) = xd(j, j);
    psiN(tu + j, tv + j) = xmd(j, j);
  }

  SimplifiedSheaf out;
  out.sheaf = CoherentSheaf(FPModule(diagonalRelations(nu, k, Ring::PolyU)), FPModule(diagonalRelations(nv, k, Ring::PolyV)), phiN, psiN);
  out.toOriginal = SheafMorphism(out.sheaf, s, nu.fromNormal * tU, nv.fromNormal * tV);
  out.fromOriginal = SheafMorphism(s, out.sheaf, tUinv * nu.toNormal, tVinv * nv.toNormal);
  return out;
}

}  // namespace purisheaf::sheaf
