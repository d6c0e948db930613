#include "purisheaf/fpmod/module.hpp"

#include <algorithm>

#include "purisheaf/error.hpp"

namespace purisheaf::fpmod {

using exact::SmithForm;

namespace {

std::shared_ptr<const NormalForm> computeNormalForm(const RingMatrix& rel) {
  auto nf = std::make_shared<NormalForm>();
  const Field f = rel.field();
  const Ring r = rel.ring();
  const int g = rel.rows();
  if (rel.cols() == 0 || rel.isZero()) {
    nf->freeRank = g;
    nf->toNormal = RingMatrix::identity(f, r, g);
    nf->fromNormal = RingMatrix::identity(f, r, g);
    return nf;
  }
  SmithForm sf = r == Ring::Laurent ? exact::laurentSmithForm(rel) : exact::smithNormalForm(rel);
  std::vector<int> kept;
  for (int i = 0; i < sf.rank(); ++i) {
    RingElement d = sf.diagonal[static_cast<std::size_t>(i)];
    if (r == Ring::Laurent) d = d.normalized();
    if (d.isUnit()) continue;
    kept.push_back(i);
    nf->factors.push_back(d);
  }
  for (int i = sf.rank(); i < g; ++i) kept.push_back(i);
  nf->freeRank = g - sf.rank();
  nf->toNormal = sf.u.selectRows(kept);
  nf->fromNormal = sf.uinv.selectCols(kept);
  return nf;
}

// k-dimension of R/(d)
int quotientDim(const RingElement& d) {
  return d.degree() - (d.ring() == Ring::Laurent ? d.lowExponent() : 0);
}

RingElement reduceEntry(const RingElement& a, const RingElement& d) {
  if (a.isZero()) return a;
  return exact::reduceMod(a, d);
}

// Present a submodule/quotient compactly: given the generator matrix `gens`
// (into some ambient) and a presentation `rel` of the abstract module, return
// the diagonal module and the matrix of the new generators in the ambient.
std::pair<FPModule, RingMatrix> compact(const RingMatrix& rel, const RingMatrix& gens) {
  FPModule raw(rel);
  const NormalForm& nf = raw.normalForm();
  FPModule diag = FPModule::fromDecomposition(rel.field(), rel.ring(), raw.decomposition());
  return {diag, gens * nf.fromNormal};
}

}  // namespace

RingElement NormalForm::modulus(int i) const {
  if (i < torsion()) return factors[static_cast<std::size_t>(i)];
  return RingElement::zero(toNormal.field(), toNormal.ring());
}

FPModule::FPModule(RingMatrix relations) : rel_(std::move(relations)), nf_(computeNormalForm(rel_)) {}

FPModule FPModule::free(Field f, Ring r, int n) { return FPModule(RingMatrix(f, r, n, 0)); }

FPModule FPModule::cyclic(const RingElement& d) {
  return FPModule(RingMatrix::diagonal(d.field(), d.ring(), {d}, 1, 1));
}

FPModule FPModule::fromDecomposition(Field f, Ring r, const CyclicDecomposition& d) {
  const int t = static_cast<int>(d.invariantFactors.size());
  RingMatrix rel(f, r, t + d.freeRank, t);
  for (int i = 0; i < t; ++i) rel(i, i) = d.invariantFactors[static_cast<std::size_t>(i)];
  return FPModule(std::move(rel));
}

CyclicDecomposition FPModule::decomposition() const {
  return CyclicDecomposition{nf_->freeRank, nf_->factors};
}

int FPModule::kDimension() const {
  if (nf_->freeRank > 0) return -1;
  int d = 0;
  for (const auto& f : nf_->factors) d += quotientDim(f);
  return d;
}

RingMatrix FPModule::reduce(const RingMatrix& v) const {
  if (v.rows() != generators()) throw MathError("fpmod", "element shape mismatch");
  RingMatrix w = nf_->toNormal * v;
  for (int i = 0; i < nf_->torsion(); ++i)
    for (int j = 0; j < w.cols(); ++j) w(i, j) = reduceEntry(w(i, j), nf_->factors[static_cast<std::size_t>(i)]);
  return w;
}

bool FPModule::isZeroElements(const RingMatrix& v) const { return reduce(v).isZero(); }

CyclicDecomposition decomposeModule(const FPModule& m) { return m.decomposition(); }

bool isMorphismMatrix(const FPModule& s, const FPModule& t, const RingMatrix& matrix) {
  if (matrix.rows() != t.generators() || matrix.cols() != s.generators()) return false;
  if (matrix.ring() != s.ring() || s.ring() != t.ring()) return false;
  return t.isZeroElements(matrix * s.relations());
}

ModuleMorphism::ModuleMorphism(FPModule source, FPModule target, RingMatrix matrix)
    : src_(std::move(source)), tgt_(std::move(target)), mat_(std::move(matrix)) {
  if (mat_.rows() != tgt_.generators() || mat_.cols() != src_.generators())
    throw MathError("fpmod", "morphism matrix shape mismatch");
  if (!isMorphismMatrix(src_, tgt_, mat_)) throw MathError("fpmod", "matrix does not define a module morphism");
}

ModuleMorphism ModuleMorphism::identity(const FPModule& m) {
  return ModuleMorphism(m, m, RingMatrix::identity(m.field(), m.ring(), m.generators()));
}

ModuleMorphism ModuleMorphism::zero(const FPModule& s, const FPModule& t) {
  return ModuleMorphism(s, t, RingMatrix(s.field(), s.ring(), t.generators(), s.generators()));
}

ModuleMorphism operator*(const ModuleMorphism& g, const ModuleMorphism& f) {
  if (f.tgt_.generators() != g.src_.generators()) throw MathError("fpmod", "composition shape mismatch");
  ModuleMorphism h;
  h.src_ = f.src_;
  h.tgt_ = g.tgt_;
  h.mat_ = g.mat_ * f.mat_;
  return h;
}

ModuleMorphism operator+(const ModuleMorphism& a, const ModuleMorphism& b) {
  ModuleMorphism h = a;
  h.mat_ = a.mat_ + b.mat_;
  return h;
}

ModuleMorphism ModuleMorphism::scaled(const RingElement& c) const {
  ModuleMorphism h = *this;
  h.mat_ = mat_.scaled(c);
  return h;
}

bool ModuleMorphism::equals(const ModuleMorphism& o) const { return tgt_.isZeroElements(mat_ - o.mat_); }

bool ModuleMorphism::isZero() const { return tgt_.isZeroElements(mat_); }

KernelData kernel(const ModuleMorphism& f) {
  const FPModule& m = f.source();
  const FPModule& n = f.target();
  const Field fld = m.field();
  const Ring r = m.ring();
  const NormalForm& nfN = n.normalForm();
  const int g = m.generators();
  const int t = nfN.torsion();
  // v in ker iff toNormal(F v) lies in the span of the torsion moduli
  RingMatrix gmat = nfN.toNormal * f.matrix();
  RingMatrix dmat(fld, r, nfN.size(), t);
  for (int i = 0; i < t; ++i) dmat(i, i) = -nfN.factors[static_cast<std::size_t>(i)];
  RingMatrix big = RingMatrix::hcat(gmat, dmat);
  RingMatrix kb = exact::kernelBasis(big);
  RingMatrix ktop = kb.block(0, 0, g, kb.cols());
  // relations among the kernel generators: c with ktop c in im A
  RingMatrix rel2 = RingMatrix::hcat(ktop, -m.relations());
  RingMatrix kr = exact::kernelBasis(rel2);
  RingMatrix rel = kr.block(0, 0, ktop.cols(), kr.cols());
  auto [mod, gens] = compact(rel, ktop);
  return {mod, ModuleMorphism(mod, m, gens)};
}

CokernelData cokernel(const ModuleMorphism& f) {
  const FPModule& n = f.target();
  RingMatrix rel = RingMatrix::hcat(n.relations(), f.matrix());
  FPModule raw(rel);
  FPModule diag = FPModule::fromDecomposition(n.field(), n.ring(), raw.decomposition());
  return {diag, ModuleMorphism(n, diag, raw.normalForm().toNormal), raw.normalForm().fromNormal};
}

KernelData image(const ModuleMorphism& f) {
  const FPModule& n = f.target();
  RingMatrix big = RingMatrix::hcat(f.matrix(), -n.relations());
  RingMatrix kb = exact::kernelBasis(big);
  RingMatrix rel = kb.block(0, 0, f.matrix().cols(), kb.cols());
  auto [mod, gens] = compact(rel, f.matrix());
  return {mod, ModuleMorphism(mod, n, gens)};
}

bool isInjective(const ModuleMorphism& f) { return kernel(f).module.isZero(); }

bool isSurjective(const ModuleMorphism& f) { return cokernel(f).module.isZero(); }

HomData homModule(const FPModule& m, const FPModule& n) {
  if (m.ring() != n.ring()) throw MathError("fpmod", "ring mismatch in homModule");
  const Field fld = m.field();
  const Ring r = m.ring();
  const NormalForm& a = m.normalForm();
  const NormalForm& b = n.normalForm();
  struct Comp {
    int i, j;
    RingElement mult, modulus;
  };
  std::vector<Comp> comps;
  for (int j = 0; j < b.size(); ++j)
    for (int i = 0; i < a.size(); ++i) {
      RingElement d = a.modulus(i), e = b.modulus(j);
      if (d.isZero() && e.isZero()) {
        comps.push_back({i, j, RingElement::one(fld, r), e});
      } else if (d.isZero()) {
        comps.push_back({i, j, RingElement::one(fld, r), e});
      } else if (e.isZero()) {
        continue;
      } else {
        RingElement g = exact::gcd(d, e);
        if (g.isUnit()) continue;
        comps.push_back({i, j, exact::exactDiv(e, g), g});
      }
    }
  // torsion components first so the presentation is diagonal
  std::stable_partition(comps.begin(), comps.end(), [](const Comp& c) { return !c.modulus.isZero(); });
  int t = 0;
  for (const auto& c : comps) t += c.modulus.isZero() ? 0 : 1;
  RingMatrix rel(fld, r, static_cast<int>(comps.size()), t);
  for (int k = 0; k < t; ++k) rel(k, k) = comps[static_cast<std::size_t>(k)].modulus;
  HomData out{FPModule(rel), {}, std::nullopt};

  auto morphismFor = [&](const Comp& c, const RingElement& scale) {
    RingMatrix mat = b.fromNormal.colMatrix(c.j) * a.toNormal.selectRows({c.i}).scaled(c.mult * scale);
    return ModuleMorphism(m, n, mat);
  };
  for (const auto& c : comps) out.generators.push_back(morphismFor(c, RingElement::one(fld, r)));
  if (t == static_cast<int>(comps.size())) {
    std::vector<ModuleMorphism> basis;
    for (const auto& c : comps) {
      const int dim = quotientDim(c.modulus);
      for (int k = 0; k < dim; ++k) basis.push_back(morphismFor(c, RingElement::monomial(fld.one(), k, r)));
    }
    out.kBasis = std::move(basis);
  }
  return out;
}

FPModule tensorModule(const FPModule& m, const FPModule& n) {
  if (m.ring() != n.ring()) throw MathError("fpmod", "ring mismatch in tensorModule");
  const Field f = m.field();
  const Ring r = m.ring();
  RingMatrix a = RingMatrix::kron(m.relations(), RingMatrix::identity(f, r, n.generators()));
  RingMatrix b = RingMatrix::kron(RingMatrix::identity(f, r, m.generators()), n.relations());
  return FPModule(RingMatrix::hcat(a, b));
}

ModuleMorphism tensorMorphism(const ModuleMorphism& f, const FPModule& t) {
  RingMatrix mat = RingMatrix::kron(f.matrix(), RingMatrix::identity(t.field(), t.ring(), t.generators()));
  return ModuleMorphism(tensorModule(f.source(), t), tensorModule(f.target(), t), mat);
}

SplitResult isSplitMono(const ModuleMorphism& f) {
  if (!isInjective(f)) throw MathError("fpmod", "not a monomorphism");
  const FPModule& m = f.source();
  const FPModule& n = f.target();
  const Field fld = m.field();
  const Ring r = m.ring();
  const NormalForm& a = m.normalForm();
  const NormalForm& b = n.normalForm();
  const int nm = a.size(), nn = b.size();
  RingMatrix fp = b.toNormal * f.matrix() * a.fromNormal;  // nn x nm
  RingMatrix ret(fld, r, nm, nn);
  for (int i = 0; i < nm; ++i) {
    const RingElement d = a.modulus(i);
    std::vector<RingElement> mult(static_cast<std::size_t>(nn));
    for (int j = 0; j < nn; ++j) {
      const RingElement e = b.modulus(j);
      if (e.isZero())
        mult[static_cast<std::size_t>(j)] = RingElement::one(fld, r);
      else if (d.isZero())
        mult[static_cast<std::size_t>(j)] = RingElement::zero(fld, r);
      else
        mult[static_cast<std::size_t>(j)] = exact::exactDiv(d, exact::gcd(d, e));
    }
    const int slack = d.isZero() ? 0 : nm;
    RingMatrix sys(fld, r, nm, nn + slack);
    RingMatrix rhs(fld, r, nm, 1);
    for (int k = 0; k < nm; ++k) {
      for (int j = 0; j < nn; ++j) sys(k, j) = mult[static_cast<std::size_t>(j)] * fp(j, k);
      if (slack) sys(k, nn + k) = d;
    }
    rhs(i, 0) = RingElement::one(fld, r);
    exact::LinearSolution sol = exact::solveLinear(sys, rhs);
    if (!sol.solvable) return {false, std::nullopt};
    for (int j = 0; j < nn; ++j) ret(i, j) = sol.particular(j, 0) * mult[static_cast<std::size_t>(j)];
  }
  RingMatrix orig = a.fromNormal * ret * b.toNormal;
  ModuleMorphism rho(n, m, orig);
  if (!(rho * f).equals(ModuleMorphism::identity(m))) throw MathError("fpmod", "retraction certificate failed");
  return {true, rho};
}

FPModule baseChangeLaurent(const FPModule& m) { return FPModule(m.relations().toLaurent()); }

ModuleMorphism baseChangeLaurent(const ModuleMorphism& f) {
  return ModuleMorphism(baseChangeLaurent(f.source()), baseChangeLaurent(f.target()), f.matrix().toLaurent());
}

FPModule directSum(const FPModule& a, const FPModule& b) {
  return FPModule(RingMatrix::blockDiag(a.relations(), b.relations()));
}

ModuleMorphism directSum(const ModuleMorphism& a, const ModuleMorphism& b) {
  return ModuleMorphism(directSum(a.source(), b.source()), directSum(a.target(), b.target()),
                        RingMatrix::blockDiag(a.matrix(), b.matrix()));
}

}  // namespace purisheaf::fpmod
