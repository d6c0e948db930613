#include "purisheaf/purity/purity.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "purisheaf/error.hpp"
#include "purisheaf/exact/factor.hpp"
#include "purisheaf/exact/klinear.hpp"

namespace purisheaf::purity {

using exact::Field;
using exact::Ring;
using exact::RingElement;
using exact::RingMatrix;
using exact::SparseVec;
using homalg::HomSpace;

namespace {

SparseVec toSparse(const std::vector<Scalar>& c) {
  SparseVec v;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!c[i].isZero()) v.push_back({static_cast<int>(i), c[i]});
  return v;
}

// q(y) with q(0) != 0 cuts out the point whose x-polynomial is x^d q(1/x)
ClosedPoint pointFromV(const RingElement& q) {
  std::vector<Scalar> c = q.coefficients();
  std::reverse(c.begin(), c.end());
  return ClosedPoint::finite(RingElement::fromCoefficients(q.field(), Ring::PolyU, c));
}

void collectSupport(const CoherentSheaf& f, std::map<ClosedPoint, int>& out) {
  auto bump = [&](const ClosedPoint& pt, int m) {
    int& cur = out[pt];
    cur = std::max(cur, m);
  };
  for (const RingElement& d : f.mU().normalForm().factors)
    for (const auto& fac : exact::factorPolynomial(d)) bump(ClosedPoint::finite(fac.p), fac.multiplicity);
  for (const RingElement& d : f.mV().normalForm().factors)
    for (const auto& fac : exact::factorPolynomial(d.withRing(Ring::PolyU))) {
      if (fac.p.degree() == 1 && fac.p.coeff(0).isZero())
        bump(ClosedPoint::infinity(f.field()), fac.multiplicity);
      else
        bump(pointFromV(fac.p), fac.multiplicity);
    }
}

std::vector<SheafLabel> minimalOf(const std::vector<SheafLabel>& failing) {
  std::map<ClosedPoint, int> least;
  for (const auto& l : failing) {
    auto it = least.find(l.pt);
    if (it == least.end() || l.m < it->second) least[l.pt] = l.m;
  }
  std::vector<SheafLabel> out;
  for (const auto& [pt, m] : least) out.push_back(SheafLabel::tors(pt, m));
  return out;
}

bool injectiveOnCharts(const SheafMorphism& f) {
  return fpmod::isInjective(f.onU()) && fpmod::isInjective(f.onV());
}

// rows of a map into a diagonally presented module, reduced modulo its factors
RingMatrix reducedInto(const RingMatrix& m, const fpmod::FPModule& target) {
  RingMatrix out = m;
  const RingMatrix& rel = target.relations();
  for (int i = 0; i < std::min(rel.rows(), rel.cols()); ++i)
    for (int j = 0; j < out.cols(); ++j)
      if (!out(i, j).isZero()) out(i, j) = exact::divMod(out(i, j), rel(i, i)).remainder;
  return out;
}

SheafMorphism reduced(const SheafMorphism& f) {
  return SheafMorphism(f.source(), f.target(), reducedInto(f.fU(), f.target().mU()), reducedInto(f.fV(), f.target().mV()));
}

// the same sequence between simplified presentations
struct Normalized {
  sheaf::SimplifiedSheaf a, b, c;
  ShortExactSeq seq;
};

Normalized normalized(const ShortExactSeq& s) {
  Normalized n{sheaf::simplifyPresentation(s.a()), sheaf::simplifyPresentation(s.b()), sheaf::simplifyPresentation(s.c()), {}};
  n.seq = ShortExactSeq(reduced(n.b.fromOriginal * s.f() * n.a.toOriginal), reduced(n.c.fromOriginal * s.g() * n.b.toOriginal));
  return n;
}

}  // namespace

CPureVerdict isCPure(const ShortExactSeq& original) {
  CPureVerdict out;
  if (original.c().isZero()) {
    out.pure = true;
    out.section = SheafMorphism::zero(original.c(), original.b());
    return out;
  }
  const Normalized n = normalized(original);
  const ShortExactSeq& s = n.seq;
  const CoherentSheaf& c = s.c();
  const Field fld = c.field();
  HomSpace hCB = homalg::globalHom(c, s.b());
  HomSpace hCC = homalg::globalHom(c, c);
  std::vector<SparseVec> cols;
  for (const SheafMorphism& h : hCB.basis()) cols.push_back(toSparse(hCC.coordinates(s.g() * h)));
  SparseVec id = toSparse(hCC.coordinates(SheafMorphism::identity(c)));
  auto x = exact::solveColumns(fld, hCC.dimension(), cols, id);
  if (!x) return out;
  SheafMorphism sec = SheafMorphism::zero(c, s.b());
  for (const auto& [i, v] : *x) sec = sec + hCB.basis()[static_cast<std::size_t>(i)].scaled(v);
  sec = n.b.toOriginal * sec * n.c.fromOriginal;
  if (!(original.g() * sec).equals(SheafMorphism::identity(original.c())))
    throw MathError("purity", "splitting section failed its check");
  out.pure = true;
  out.section = sec;
  return out;
}

GPureVerdict isGPure(const ShortExactSeq& original) {
  GPureVerdict out;
  const Normalized n = normalized(original);
  fpmod::SplitResult u = fpmod::isSplitMono(n.seq.f().onU());
  fpmod::SplitResult v = fpmod::isSplitMono(n.seq.f().onV());
  out.splitU = u.split;
  out.splitV = v.split;
  // back to the original chart coordinates
  if (u.retraction) out.retractionU = n.a.toOriginal.onU() * *u.retraction * n.b.fromOriginal.onU();
  if (v.retraction) out.retractionV = n.a.toOriginal.onV() * *v.retraction * n.b.fromOriginal.onV();
  out.pure = u.split && v.split;
  return out;
}

std::vector<SheafLabel> torsionTestSet(const ShortExactSeq& s) {
  std::map<ClosedPoint, int> support;
  for (const CoherentSheaf* f : {&s.a(), &s.b(), &s.c()}) collectSupport(*f, support);
  std::vector<SheafLabel> out;
  for (const auto& [pt, m] : support)
    for (int k = 1; k <= m + 1; ++k) out.push_back(SheafLabel::tors(pt, k));
  return out;
}

CriterionVerdict gPureViaTensor(const ShortExactSeq& original) {
  const ShortExactSeq s = normalized(original).seq;
  CriterionVerdict out;
  out.testSet = torsionTestSet(s);
  for (const SheafLabel& t : out.testSet) {
    CoherentSheaf ts = sheaf::sheafFromLabel(t, s.a().field());
    if (!injectiveOnCharts(sheaf::tensorMorphism(s.f(), ts))) out.failing.push_back(t);
  }
  out.pure = out.failing.empty();
  out.minimalFailing = minimalOf(out.failing);
  return out;
}

CriterionVerdict gPureViaTorsionHom(const ShortExactSeq& original) {
  const ShortExactSeq s = normalized(original).seq;
  CriterionVerdict out;
  out.testSet = torsionTestSet(s);
  const Field fld = s.a().field();
  for (const SheafLabel& t : out.testSet) {
    CoherentSheaf ts = sheaf::sheafFromLabel(t, fld);
    HomSpace hA = homalg::globalHom(ts, s.a());
    HomSpace hB = homalg::globalHom(ts, s.b());
    HomSpace hC = homalg::globalHom(ts, s.c());
    // Hom(T, -) is left exact; exactness on the right is surjectivity onto Hom(T, C)
    std::vector<SparseVec> cols;
    for (const SheafMorphism& h : hB.basis()) cols.push_back(toSparse(hC.coordinates(s.g() * h)));
    const int rank = exact::rankOfColumns(fld, hC.dimension(), cols);
    const bool ok = rank == hC.dimension() && hB.dimension() == hA.dimension() + hC.dimension();
    if (!ok) out.failing.push_back(t);
  }
  out.pure = out.failing.empty();
  out.minimalFailing = minimalOf(out.failing);
  return out;
}

PurityReport purityReport(const ShortExactSeq& s) {
  PurityReport r;
  r.c = isCPure(s);
  r.g = isGPure(s);
  r.viaTensor = gPureViaTensor(s);
  r.viaHom = gPureViaTorsionHom(s);
  r.cPure = r.c.pure;
  r.gPure = r.g.pure;
  r.tensorCriterion = r.viaTensor.pure;
  r.homCriterion = r.viaHom.pure;
  r.criteriaAgreement = r.gPure == r.tensorCriterion && r.gPure == r.homCriterion && (!r.cPure || r.gPure);
  return r;
}

SampledExtension randomExtension(const CoherentSheaf& a, const CoherentSheaf& c, std::uint64_t seed) {
  const Field fld = a.field();
  homalg::ExtData ext = homalg::ext1(c, a, false);
  std::mt19937_64 rng(seed);
  SampledExtension out;
  const bool zero = rng() % 5 == 0;
  for (int i = 0; i < ext.dimension; ++i) {
    long v = zero ? 0 : static_cast<long>(rng() % 5) - 2;
    out.classCoordinates.push_back(fld.fromInt(v));
    if (!out.classCoordinates.back().isZero()) out.splitClass = false;
  }
  out.seq = homalg::extensionOfClass(ext, out.classCoordinates);
  return out;
}

ShortExactSeq lineBundleSequence(Field f, int a, int b, int c, int d) {
  if (!(a < b && b <= c && c < d && a + d == b + c))
    throw MathError("purity", "line bundle sequence needs a < b <= c < d and a + d = b + c");
  const int k = b - a, l = c - a;
  CoherentSheaf oa = sheaf::lineBundle(f, a), od = sheaf::lineBundle(f, d);
  CoherentSheaf mid = sheaf::directSum(sheaf::lineBundle(f, b), sheaf::lineBundle(f, c));
  const RingElement one = RingElement::one(f, Ring::PolyU);
  const RingElement xk = RingElement::monomial(f.one(), k, Ring::PolyU);
  const RingElement oneV = RingElement::one(f, Ring::PolyV);
  const RingElement yl = RingElement::monomial(f.one(), l, Ring::PolyV);
  RingMatrix fU(f, Ring::PolyU, 2, 1), gU(f, Ring::PolyU, 1, 2);
  RingMatrix fV(f, Ring::PolyV, 2, 1), gV(f, Ring::PolyV, 1, 2);
  fU(0, 0) = xk;
  fU(1, 0) = one;
  gU(0, 0) = one;
  gU(0, 1) = -xk;
  fV(0, 0) = oneV;
  fV(1, 0) = yl;
  gV(0, 0) = yl;
  gV(0, 1) = -oneV;
  return ShortExactSeq(SheafMorphism(oa, mid, fU, fV), SheafMorphism(mid, od, gU, gV));
}

}  // namespace purisheaf::purity
