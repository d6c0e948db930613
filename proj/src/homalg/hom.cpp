#include <algorithm>
#include <array>
#include <map>

#include "engine.hpp"
#include "purisheaf/error.hpp"
#include "purisheaf/homalg/homalg.hpp"

namespace purisheaf::homalg {

using detail::ChartComplex;
using detail::EngineRun;
using exact::Echelon;
using exact::Ring;
using exact::RingElement;
using exact::SparseVec;
using MorphismKey = std::map<std::array<int, 4>, Scalar>;

struct HomState {
  std::map<std::array<int, 4>, int> keyIndex;
  std::shared_ptr<Echelon> echelon;
};

namespace {

RingMatrix vectorize(const RingMatrix& m) {
  RingMatrix v(m.field(), m.ring(), m.rows() * m.cols(), 1);
  for (int c = 0; c < m.cols(); ++c)
    for (int r = 0; r < m.rows(); ++r) v(c * m.rows() + r, 0) = m(r, c);
  return v;
}

std::vector<RingElement> homModuli(const fpmod::HomData& h, Field f, Ring r) {
  const RingMatrix& rel = h.module.relations();
  std::vector<RingElement> out;
  for (int k = 0; k < rel.rows(); ++k) out.push_back(k < rel.cols() ? rel(k, k) : RingElement::zero(f, r));
  return out;
}

MorphismKey keyOf(const SheafMorphism& f) {
  MorphismKey key;
  auto add = [&](int chart, const RingMatrix& red) {
    for (int i = 0; i < red.rows(); ++i)
      for (int j = 0; j < red.cols(); ++j) {
        const RingElement& e = red(i, j);
        const auto& cs = e.coefficients();
        for (std::size_t k = 0; k < cs.size(); ++k)
          if (!cs[k].isZero()) key[{chart, j, i, e.lowExponent() + static_cast<int>(k)}] = cs[k];
      }
  };
  add(0, f.target().mU().reduce(f.fU()));
  add(1, f.target().mV().reduce(f.fV()));
  return key;
}

std::optional<SparseVec> keyVector(const HomState& st, const MorphismKey& key) {
  SparseVec v;
  for (const auto& [k, c] : key) {
    auto it = st.keyIndex.find(k);
    if (it == st.keyIndex.end()) return std::nullopt;
    v.push_back({it->second, c});
  }
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return v;
}

int maxExponent(const RingMatrix& m) {
  int e = INT32_MIN;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (!m(i, j).isZero()) e = std::max(e, m(i, j).degree());
  return e;
}

int minExponent(const RingMatrix& m) {
  int e = INT32_MAX;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (!m(i, j).isZero()) e = std::min(e, m(i, j).lowExponent());
  return e;
}

}  // namespace

HomSpace globalHom(const CoherentSheaf& f, const CoherentSheaf& g) {
  const Field fld = f.field();
  fpmod::HomData hu = fpmod::homModule(f.mU(), g.mU());
  fpmod::HomData hv = fpmod::homModule(f.mV(), g.mV());
  const fpmod::NormalForm& nfO = g.overlapV().normalForm();
  const int gFU = f.mU().generators();

  ChartComplex c;
  c.field = fld;
  c.modU = homModuli(hu, fld, Ring::PolyU);
  c.modV = homModuli(hv, fld, Ring::PolyV);
  for (int col = 0; col < gFU; ++col)
    for (int r = 0; r < nfO.size(); ++r) c.modO.push_back(nfO.modulus(r));
  const int rowsO = gFU * nfO.size();
  c.tU = RingMatrix(fld, Ring::Laurent, rowsO, static_cast<int>(hu.generators.size()));
  c.tV = RingMatrix(fld, Ring::Laurent, rowsO, static_cast<int>(hv.generators.size()));
  for (int k = 0; k < c.tU.cols(); ++k) {
    RingMatrix col = vectorize(nfO.toNormal * g.phi() * hu.generators[static_cast<std::size_t>(k)].matrix().toLaurent());
    for (int r = 0; r < rowsO; ++r) c.tU(r, k) = col(r, 0);
  }
  for (int l = 0; l < c.tV.cols(); ++l) {
    RingMatrix col = vectorize(nfO.toNormal * hv.generators[static_cast<std::size_t>(l)].matrix().toLaurent() * f.phi());
    for (int r = 0; r < rowsO; ++r) c.tV(r, l) = col(r, 0);
  }

  const int start = std::max(f.presentationDegree(), g.presentationDegree()) + 2;
  EngineRun run = detail::stabilize(c, start, false, "homalg");

  HomSpace out;
  auto st = std::make_shared<HomState>();
  std::vector<MorphismKey> keys;
  for (const SparseVec& rel : run.kernel) {
    RingMatrix a(fld, Ring::PolyU, g.mU().generators(), gFU);
    RingMatrix b(fld, Ring::PolyV, g.mV().generators(), f.mV().generators());
    for (const auto& [idx, s] : rel) {
      const auto& src = run.sources[static_cast<std::size_t>(idx)];
      if (src.side == 0)
        a = a + hu.generators[static_cast<std::size_t>(src.coord)].matrix().scaled(
                    RingElement::monomial(s, src.exp, Ring::PolyU));
      else
        b = b + hv.generators[static_cast<std::size_t>(src.coord)].matrix().scaled(
                    RingElement::monomial(s, src.exp, Ring::PolyV));
    }
    out.basis_.emplace_back(f, g, a, b);
    keys.push_back(keyOf(out.basis_.back()));
    for (const auto& [k, v] : keys.back()) st->keyIndex.emplace(k, static_cast<int>(st->keyIndex.size()));
  }
  st->echelon = std::make_shared<Echelon>(fld, static_cast<int>(st->keyIndex.size()));
  for (const auto& key : keys)
    if (st->echelon->insert(*keyVector(*st, key)))
      throw MathError("homalg", "global Hom basis is not independent");
  out.state_ = st;
  return out;
}

std::vector<Scalar> HomSpace::coordinates(const SheafMorphism& f) const {
  const HomState& st = *state_;
  const Field fld = f.source().field();
  auto v = keyVector(st, keyOf(f));
  if (!v) throw MathError("homalg", "morphism is not in the span of the Hom basis");
  Echelon::Reduced red = st.echelon->reduce(*v);
  if (!red.residual.empty()) throw MathError("homalg", "morphism is not in the span of the Hom basis");
  std::vector<Scalar> out(basis_.size(), fld.zero());
  for (const auto& [j, c] : red.combo) out[static_cast<std::size_t>(j)] = c;
  return out;
}

// ---------- Ext ----------

// everything is computed for simplified presentations f, g of the arguments
struct ExtState {
  CoherentSheaf f, g, p, k;
  SheafMorphism iota;
  RingMatrix fU, fV;  ///< P -> F on the charts
  std::vector<SheafMorphism> classes;  ///< K -> g
  sheaf::SimplifiedSheaf sf, sg;
};

ExtData ext1(const CoherentSheaf& original, const CoherentSheaf& target, bool buildExtensions) {
  const Field fld = original.field();
  ExtData out;
  if (original.mU().generators() + original.mV().generators() == 0 || target.isZero()) return out;
  sheaf::SimplifiedSheaf sf = sheaf::simplifyPresentation(original), sg = sheaf::simplifyPresentation(target);
  const CoherentSheaf& f = sf.sheaf;
  const CoherentSheaf& g = sg.sheaf;
  const int gU = f.mU().generators(), gV = f.mV().generators();

  // P = O(-N)^(gU+gV) -> F by sections of F(N) through each chart generator
  // h1(G(N)) is nonincreasing in N and vanishes from some N >= -D - 1
  int n = -g.presentationDegree() - 2;
  if (!f.phi().isZero()) n = std::max(n, maxExponent(f.phi()));
  if (!f.psi().isZero()) n = std::max(n, -minExponent(f.psi()));
  for (;; ++n) {
    if (n > kDefaultDegreeBudget) throw MathError("homalg", "no resolution twist found within the degree budget");
    if (cech(sheaf::twist(g, n)).h1() == 0) break;
  }
  out.resolutionTwist = n;
  out.twistedH1 = 0;

  const RingMatrix& phi = f.phi();
  const RingMatrix& psi = f.psi();
  RingElement shiftDown = RingElement::monomial(fld.one(), -n, Ring::Laurent);
  RingElement shiftUp = RingElement::monomial(fld.one(), n, Ring::Laurent);
  RingMatrix t = phi.scaled(shiftDown).laurentToV();
  RingMatrix s = psi.scaled(shiftUp).withRing(Ring::PolyU);
  RingMatrix fU = RingMatrix::hcat(RingMatrix::identity(fld, Ring::PolyU, gU), s);
  RingMatrix fV = RingMatrix::hcat(t, RingMatrix::identity(fld, Ring::PolyV, gV));
  std::vector<CoherentSheaf> parts(static_cast<std::size_t>(gU + gV), sheaf::lineBundle(fld, -n));
  CoherentSheaf p = sheaf::directSum(parts, fld);
  SheafMorphism pi(p, f, fU, fV);
  sheaf::KerCokerImage kc = sheaf::kernelCokernelImage(pi);
  if (!kc.cokernel.isZero()) throw MathError("homalg", "resolution map is not surjective");
  const CoherentSheaf& k = kc.kernel;
  const SheafMorphism& iota = kc.kernelInclusion;

  HomSpace homKG = globalHom(k, g);
  HomSpace homPG = globalHom(p, g);
  Echelon ech(fld, homKG.dimension());
  auto toSparse = [](const std::vector<Scalar>& c) {
    SparseVec v;
    for (std::size_t i = 0; i < c.size(); ++i)
      if (!c[i].isZero()) v.push_back({static_cast<int>(i), c[i]});
    return v;
  };
  for (const SheafMorphism& h : homPG.basis()) ech.insert(toSparse(homKG.coordinates(h * iota)));
  std::vector<SheafMorphism> classes;
  for (int i = 0; i < homKG.dimension(); ++i)
    if (!ech.insert(SparseVec{{i, fld.one()}})) classes.push_back(homKG.basis()[static_cast<std::size_t>(i)]);
  for (const SheafMorphism& c : classes) out.classes.push_back(sg.toOriginal * c);
  out.dimension = static_cast<int>(classes.size());
  out.state = std::make_shared<ExtState>(ExtState{f, g, p, k, iota, fU, fV, std::move(classes), sf, sg});
  if (!buildExtensions) return out;
  for (int i = 0; i < out.dimension; ++i) {
    std::vector<Scalar> c(static_cast<std::size_t>(out.dimension), fld.zero());
    c[static_cast<std::size_t>(i)] = fld.one();
    out.extensions.push_back(extensionOfClass(out, c));
  }
  return out;
}

ShortExactSeq extensionOfClass(const ExtData& d, const std::vector<Scalar>& coefficients) {
  if (!d.state) throw MathError("homalg", "extension data is missing its resolution");
  if (static_cast<int>(coefficients.size()) != d.dimension) throw MathError("homalg", "class coordinate count mismatch");
  const ExtState& st = *d.state;
  const Field fld = st.f.field();
  const CoherentSheaf& f = st.f;
  const CoherentSheaf& g = st.g;
  const CoherentSheaf& p = st.p;
  const int gU = f.mU().generators(), gV = f.mV().generators();
  SheafMorphism kappa = SheafMorphism::zero(st.k, g);
  for (std::size_t i = 0; i < coefficients.size(); ++i)
    if (!coefficients[i].isZero()) kappa = kappa + st.classes[i].scaled(coefficients[i]);

  // pushout: E = coker(K -> P ⊕ G, k |-> (iota k, -kappa k))
  CoherentSheaf pg = sheaf::directSum(p, g);
  const int pU = p.mU().generators(), pV = p.mV().generators();
  const int gGU = g.mU().generators(), gGV = g.mV().generators();
  SheafMorphism incG(g, pg, RingMatrix::vcat(RingMatrix(fld, Ring::PolyU, pU, gGU), RingMatrix::identity(fld, Ring::PolyU, gGU)),
                     RingMatrix::vcat(RingMatrix(fld, Ring::PolyV, pV, gGV), RingMatrix::identity(fld, Ring::PolyV, gGV)));
  RingMatrix projU = RingMatrix::hcat(st.fU, RingMatrix(fld, Ring::PolyU, gU, gGU));
  RingMatrix projV = RingMatrix::hcat(st.fV, RingMatrix(fld, Ring::PolyV, gV, gGV));
  SheafMorphism m(st.k, pg, RingMatrix::vcat(st.iota.fU(), -kappa.fU()), RingMatrix::vcat(st.iota.fV(), -kappa.fV()));
  sheaf::KerCokerImage push = sheaf::kernelCokernelImage(m);
  SheafMorphism toE = push.cokernelProjection * incG;
  SheafMorphism toF(push.cokernel, f, projU * push.cokernelLiftU, projV * push.cokernelLiftV);
  // the pushout presentation is bulky; later Hom computations on E pay for it
  sheaf::SimplifiedSheaf e = sheaf::simplifyPresentation(push.cokernel);
  return ShortExactSeq(e.fromOriginal * toE * st.sg.fromOriginal, st.sf.toOriginal * toF * e.toOriginal);
}

int extDimension(const CoherentSheaf& f, const CoherentSheaf& g) { return ext1(f, g, false).dimension; }

bool isInD(const CoherentSheaf& f) {
  for (const auto& l : sheaf::decomposeSheaf(f))
    if (l.kind == sheaf::SheafLabel::Kind::LB) return false;
  return true;
}

bool isInDWindowed(const CoherentSheaf& f) {
  const int w = f.presentationDegree() + 2;
  for (int n = -w; n <= w; ++n) {
    CoherentSheaf o = sheaf::lineBundle(f.field(), n);
    if (globalHom(f, o).dimension() != 0 || extDimension(o, f) != 0) return false;
  }
  return true;
}

}  // namespace purisheaf::homalg
