#include "purisheaf/sheafp1/sheaf.hpp"

#include <algorithm>

#include "purisheaf/error.hpp"
#include "purisheaf/exact/factor.hpp"

namespace purisheaf::sheaf {

namespace {

RingElement laurentMonomial(Field f, int e) { return RingElement::monomial(f.one(), e, Ring::Laurent); }

int absDegree(const RingMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  return std::max(std::max(m.maxDegree(), 0), -std::min(m.minExponent(), 0));
}

// X with a·X ≡ rhs modulo the columns of rel
// a·X ≡ rhs in m, solved in the normalized coordinates of m so the entries stay small
RingMatrix solveModulo(const RingMatrix& a, const FPModule& m, const RingMatrix& rhs) {
  if (a.cols() == 0 || rhs.cols() == 0) return RingMatrix(rhs.field(), rhs.ring(), a.cols(), rhs.cols());
  const fpmod::NormalForm& nf = m.normalForm();
  RingMatrix rel(m.field(), m.ring(), nf.size(), nf.torsion());
  for (int i = 0; i < nf.torsion(); ++i) rel(i, i) = nf.factors[static_cast<std::size_t>(i)];
  exact::LinearSolution s = exact::solveLinear(RingMatrix::hcat(m.reduce(a), rel), m.reduce(rhs));
  if (!s.solvable) throw MathError("sheafp1", "induced glue does not exist");
  return s.particular.block(0, 0, a.cols(), rhs.cols());
}

bool chartExact(const ModuleMorphism& f, const ModuleMorphism& g) {
  if (!(g * f).isZero()) return false;
  if (!fpmod::isInjective(f) || !fpmod::isSurjective(g)) return false;
  fpmod::KernelData k = fpmod::kernel(g);
  if (k.module.generators() == 0) return true;
  RingMatrix span = RingMatrix::hcat(f.matrix(), f.target().relations());
  if (span.cols() == 0) return k.inclusion.matrix().isZero();
  return exact::solveLinear(span, k.inclusion.matrix()).solvable;
}

}  // namespace

// ---------- points ----------

ClosedPoint ClosedPoint::finite(const RingElement& p) {
  if (p.ring() != Ring::PolyU) throw MathError("sheafp1", "point polynomial must lie in k[x]");
  if (p.degree() < 1) throw MathError("sheafp1", "point polynomial must be nonconstant");
  RingElement m = p.scaled(p.leadingCoeff().inverse());
  if (!exact::isIrreducible(m)) throw MathError("sheafp1", "point polynomial " + m.toString() + " is not irreducible");
  ClosedPoint pt;
  pt.p_ = m;
  return pt;
}

ClosedPoint ClosedPoint::infinity(Field f) {
  ClosedPoint pt;
  pt.inf_ = true;
  pt.p_ = RingElement::variable(f, Ring::PolyV);
  return pt;
}

RingElement ClosedPoint::vPoly() const {
  if (inf_) return p_;
  return exact::reciprocal(p_).withRing(Ring::PolyV);
}

std::string ClosedPoint::toString() const { return inf_ ? "inf" : p_.toString("x"); }

bool operator==(const ClosedPoint& a, const ClosedPoint& b) {
  if (a.inf_ != b.inf_) return false;
  return a.inf_ || a.p_ == b.p_;
}

bool operator<(const ClosedPoint& a, const ClosedPoint& b) {
  if (a.inf_ != b.inf_) return b.inf_;
  if (a.inf_) return false;
  return exact::canonicalLess(a.p_, b.p_);
}

// ---------- sheaves ----------

CoherentSheaf::CoherentSheaf(FPModule mU, FPModule mV, RingMatrix phi, RingMatrix psi)
    : mU_(std::move(mU)), mV_(std::move(mV)), phi_(std::move(phi)), psi_(std::move(psi)) {
  if (mU_.ring() != Ring::PolyU || mV_.ring() != Ring::PolyV)
    throw MathError("sheafp1", "chart modules must live over k[x] and k[y]");
  if (phi_.ring() != Ring::Laurent || psi_.ring() != Ring::Laurent)
    throw MathError("sheafp1", "glue must be given over the Laurent ring");
  lU_ = fpmod::baseChangeLaurent(mU_);
  lV_ = fpmod::baseChangeLaurent(mV_);
  if (!fpmod::isMorphismMatrix(lU_, lV_, phi_) || !fpmod::isMorphismMatrix(lV_, lU_, psi_))
    throw MathError("sheafp1", "glue is not a morphism of overlap modules");
  const Field f = mU_.field();
  if (!lU_.isZeroElements(psi_ * phi_ - RingMatrix::identity(f, Ring::Laurent, mU_.generators())) ||
      !lV_.isZeroElements(phi_ * psi_ - RingMatrix::identity(f, Ring::Laurent, mV_.generators())))
    throw MathError("sheafp1", "glue certificate failed: maps are not mutually inverse");
}

CoherentSheaf CoherentSheaf::zero(Field f) {
  return CoherentSheaf(FPModule::zero(f, Ring::PolyU), FPModule::zero(f, Ring::PolyV),
                       RingMatrix(f, Ring::Laurent, 0, 0), RingMatrix(f, Ring::Laurent, 0, 0));
}

int CoherentSheaf::presentationDegree() const {
  return std::max({absDegree(mU_.relations()), absDegree(mV_.relations()), absDegree(phi_), absDegree(psi_)});
}

// ---------- morphisms ----------

SheafMorphism::SheafMorphism(CoherentSheaf source, CoherentSheaf target, RingMatrix fU, RingMatrix fV)
    : src_(std::move(source)), tgt_(std::move(target)), fU_(std::move(fU)), fV_(std::move(fV)) {
  if (!fpmod::isMorphismMatrix(src_.mU(), tgt_.mU(), fU_) || !fpmod::isMorphismMatrix(src_.mV(), tgt_.mV(), fV_))
    throw MathError("sheafp1", "chart maps are not module morphisms");
  RingMatrix lhs = tgt_.phi() * fU_.toLaurent();
  RingMatrix rhs = fV_.toLaurent() * src_.phi();
  if (!tgt_.overlapV().isZeroElements(lhs - rhs)) throw MathError("sheafp1", "chart maps do not commute with the glue");
}

SheafMorphism SheafMorphism::identity(const CoherentSheaf& f) {
  return SheafMorphism(f, f, RingMatrix::identity(f.field(), Ring::PolyU, f.mU().generators()),
                       RingMatrix::identity(f.field(), Ring::PolyV, f.mV().generators()));
}

SheafMorphism SheafMorphism::zero(const CoherentSheaf& s, const CoherentSheaf& t) {
  return SheafMorphism(s, t, RingMatrix(s.field(), Ring::PolyU, t.mU().generators(), s.mU().generators()),
                       RingMatrix(s.field(), Ring::PolyV, t.mV().generators(), s.mV().generators()));
}

ModuleMorphism SheafMorphism::onU() const { return ModuleMorphism(src_.mU(), tgt_.mU(), fU_); }
ModuleMorphism SheafMorphism::onV() const { return ModuleMorphism(src_.mV(), tgt_.mV(), fV_); }

SheafMorphism operator*(const SheafMorphism& g, const SheafMorphism& f) {
  if (f.tgt_.mU().generators() != g.src_.mU().generators() || f.tgt_.mV().generators() != g.src_.mV().generators())
    throw MathError("sheafp1", "composition shape mismatch");
  SheafMorphism h;
  h.src_ = f.src_;
  h.tgt_ = g.tgt_;
  h.fU_ = g.fU_ * f.fU_;
  h.fV_ = g.fV_ * f.fV_;
  return h;
}

SheafMorphism operator+(const SheafMorphism& a, const SheafMorphism& b) {
  SheafMorphism h = a;
  h.fU_ = a.fU_ + b.fU_;
  h.fV_ = a.fV_ + b.fV_;
  return h;
}

SheafMorphism SheafMorphism::scaled(const exact::Scalar& c) const {
  SheafMorphism h = *this;
  h.fU_ = fU_.scaled(RingElement::constant(c, Ring::PolyU));
  h.fV_ = fV_.scaled(RingElement::constant(c, Ring::PolyV));
  return h;
}

bool SheafMorphism::equals(const SheafMorphism& o) const {
  return tgt_.mU().isZeroElements(fU_ - o.fU_) && tgt_.mV().isZeroElements(fV_ - o.fV_);
}

bool SheafMorphism::isZero() const { return tgt_.mU().isZeroElements(fU_) && tgt_.mV().isZeroElements(fV_); }

bool isExactOnCharts(const SheafMorphism& f, const SheafMorphism& g) {
  return chartExact(f.onU(), g.onU()) && chartExact(f.onV(), g.onV());
}

ShortExactSeq::ShortExactSeq(SheafMorphism f, SheafMorphism g) : f_(std::move(f)), g_(std::move(g)) {
  if (f_.target().mU().generators() != g_.source().mU().generators() ||
      f_.target().mV().generators() != g_.source().mV().generators())
    throw MathError("sheafp1", "sequence maps do not compose");
  if (!isExactOnCharts(f_, g_)) throw MathError("sheafp1", "not exact");
}

// ---------- constructors ----------

CoherentSheaf lineBundle(Field f, int n) {
  RingMatrix phi(f, Ring::Laurent, 1, 1), psi(f, Ring::Laurent, 1, 1);
  phi(0, 0) = laurentMonomial(f, -n);
  psi(0, 0) = laurentMonomial(f, n);
  return CoherentSheaf(FPModule::free(f, Ring::PolyU, 1), FPModule::free(f, Ring::PolyV, 1), phi, psi);
}

CoherentSheaf torsionSheaf(const ClosedPoint& pt, int length) {
  if (length < 1) throw MathError("sheafp1", "torsion length must be positive");
  const Field f = pt.field();
  if (pt.isInfinity()) {
    FPModule mV = FPModule::cyclic(exact::power(RingElement::variable(f, Ring::PolyV), length));
    return CoherentSheaf(FPModule::zero(f, Ring::PolyU), mV, RingMatrix(f, Ring::Laurent, 1, 0),
                         RingMatrix(f, Ring::Laurent, 0, 1));
  }
  FPModule mU = FPModule::cyclic(exact::power(pt.poly(), length));
  if (!pt.onV())
    return CoherentSheaf(mU, FPModule::zero(f, Ring::PolyV), RingMatrix(f, Ring::Laurent, 0, 1),
                         RingMatrix(f, Ring::Laurent, 1, 0));
  FPModule mV = FPModule::cyclic(exact::power(pt.vPoly(), length));
  RingMatrix one = RingMatrix::identity(f, Ring::Laurent, 1);
  return CoherentSheaf(mU, mV, one, one);
}

CoherentSheaf twist(const CoherentSheaf& f, int n) {
  const Field k = f.field();
  return CoherentSheaf(f.mU(), f.mV(), f.phi().scaled(laurentMonomial(k, -n)), f.psi().scaled(laurentMonomial(k, n)));
}

SheafMorphism twist(const SheafMorphism& f, int n) {
  return SheafMorphism(twist(f.source(), n), twist(f.target(), n), f.fU(), f.fV());
}

CoherentSheaf directSum(const CoherentSheaf& a, const CoherentSheaf& b) {
  return CoherentSheaf(fpmod::directSum(a.mU(), b.mU()), fpmod::directSum(a.mV(), b.mV()),
                       RingMatrix::blockDiag(a.phi(), b.phi()), RingMatrix::blockDiag(a.psi(), b.psi()));
}

CoherentSheaf directSum(const std::vector<CoherentSheaf>& parts, Field f) {
  if (parts.empty()) return CoherentSheaf::zero(f);
  CoherentSheaf out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out = directSum(out, parts[i]);
  return out;
}

SheafMorphism directSum(const SheafMorphism& a, const SheafMorphism& b) {
  return SheafMorphism(directSum(a.source(), b.source()), directSum(a.target(), b.target()),
                       RingMatrix::blockDiag(a.fU(), b.fU()), RingMatrix::blockDiag(a.fV(), b.fV()));
}

CoherentSheaf tensorSheaf(const CoherentSheaf& a, const CoherentSheaf& b) {
  return CoherentSheaf(fpmod::tensorModule(a.mU(), b.mU()), fpmod::tensorModule(a.mV(), b.mV()),
                       RingMatrix::kron(a.phi(), b.phi()), RingMatrix::kron(a.psi(), b.psi()));
}

SheafMorphism tensorMorphism(const SheafMorphism& f, const CoherentSheaf& t) {
  const Field k = t.field();
  return SheafMorphism(tensorSheaf(f.source(), t), tensorSheaf(f.target(), t),
                       RingMatrix::kron(f.fU(), RingMatrix::identity(k, Ring::PolyU, t.mU().generators())),
                       RingMatrix::kron(f.fV(), RingMatrix::identity(k, Ring::PolyV, t.mV().generators())));
}

CoherentSheaf represent(const CoherentSheaf& f, const RingMatrix& aU, const RingMatrix& aV, const RingMatrix& cU,
                        const RingMatrix& cV) {
  RingMatrix aUi = exact::inverseUnimodular(aU), aVi = exact::inverseUnimodular(aV);
  if (!exact::determinant(cU).isUnit() || !exact::determinant(cV).isUnit())
    throw MathError("sheafp1", "relation mixing matrices must be unimodular");
  FPModule mU(aU * f.mU().relations() * cU);
  FPModule mV(aV * f.mV().relations() * cV);
  RingMatrix phi = aV.toLaurent() * f.phi() * aUi.toLaurent();
  RingMatrix psi = aU.toLaurent() * f.psi() * aVi.toLaurent();
  return CoherentSheaf(mU, mV, phi, psi);
}

KerCokerImage kernelCokernelImage(const SheafMorphism& f) {
  const CoherentSheaf& s = f.source();
  const CoherentSheaf& t = f.target();
  KerCokerImage out;

  fpmod::KernelData kU = fpmod::kernel(f.onU()), kV = fpmod::kernel(f.onV());
  RingMatrix iU = kU.inclusion.matrix().toLaurent(), iV = kV.inclusion.matrix().toLaurent();
  RingMatrix phiK = solveModulo(iV, s.overlapV(), s.phi() * iU);
  RingMatrix psiK = solveModulo(iU, s.overlapU(), s.psi() * iV);
  out.kernel = CoherentSheaf(kU.module, kV.module, phiK, psiK);
  out.kernelInclusion = SheafMorphism(out.kernel, s, kU.inclusion.matrix(), kV.inclusion.matrix());

  fpmod::KernelData jU = fpmod::image(f.onU()), jV = fpmod::image(f.onV());
  RingMatrix jUL = jU.inclusion.matrix().toLaurent(), jVL = jV.inclusion.matrix().toLaurent();
  RingMatrix phiI = solveModulo(jVL, t.overlapV(), t.phi() * jUL);
  RingMatrix psiI = solveModulo(jUL, t.overlapU(), t.psi() * jVL);
  out.image = CoherentSheaf(jU.module, jV.module, phiI, psiI);
  out.imageInclusion = SheafMorphism(out.image, t, jU.inclusion.matrix(), jV.inclusion.matrix());
  RingMatrix cU = solveModulo(jU.inclusion.matrix(), t.mU(), f.fU());
  RingMatrix cV = solveModulo(jV.inclusion.matrix(), t.mV(), f.fV());
  out.coimage = SheafMorphism(s, out.image, cU, cV);

  fpmod::CokernelData qU = fpmod::cokernel(f.onU()), qV = fpmod::cokernel(f.onV());
  RingMatrix phiC = qV.projection.matrix().toLaurent() * t.phi() * qU.lift.toLaurent();
  RingMatrix psiC = qU.projection.matrix().toLaurent() * t.psi() * qV.lift.toLaurent();
  out.cokernel = CoherentSheaf(qU.module, qV.module, phiC, psiC);
  out.cokernelProjection = SheafMorphism(t, out.cokernel, qU.projection.matrix(), qV.projection.matrix());
  out.cokernelLiftU = qU.lift;
  out.cokernelLiftV = qV.lift;
  return out;
}

SheafMorphism multiplyBySection(const CoherentSheaf& f, int n, const RingElement& sU, const RingElement& sV) {
  const Field k = f.field();
  RingMatrix fU = RingMatrix::identity(k, Ring::PolyU, f.mU().generators()).scaled(sU);
  RingMatrix fV = RingMatrix::identity(k, Ring::PolyV, f.mV().generators()).scaled(sV);
  return SheafMorphism(twist(f, n), twist(f, n + 1), fU, fV);
}

// ---------- labels ----------

std::string SheafLabel::toString() const {
  if (kind == Kind::LB) return "O(" + std::to_string(n) + ")";
  return "T(" + pt.toString() + ", " + std::to_string(m) + ")";
}

bool operator==(const SheafLabel& a, const SheafLabel& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == SheafLabel::Kind::LB) return a.n == b.n;
  return a.pt == b.pt && a.m == b.m;
}

bool operator<(const SheafLabel& a, const SheafLabel& b) {
  if (a.kind != b.kind) return a.kind == SheafLabel::Kind::LB;
  if (a.kind == SheafLabel::Kind::LB) return a.n < b.n;
  if (!(a.pt == b.pt)) return a.pt < b.pt;
  return a.m < b.m;
}

CoherentSheaf sheafFromLabel(const SheafLabel& l, Field f) {
  if (l.kind == SheafLabel::Kind::LB) return lineBundle(f, l.n);
  return torsionSheaf(l.pt, l.m);
}

}  // namespace purisheaf::sheaf
