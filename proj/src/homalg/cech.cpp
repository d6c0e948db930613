#include <algorithm>

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

struct CechState {
  ChartComplex complex;
  EngineRun run;
  RingMatrix overlapToNormal;
  fpmod::FPModule mU, mV;
  std::shared_ptr<Echelon> sections;  ///< h0 basis over source indices
};

namespace {

std::vector<RingElement> moduli(const fpmod::NormalForm& nf) {
  std::vector<RingElement> out;
  for (int i = 0; i < nf.size(); ++i) out.push_back(nf.modulus(i));
  return out;
}

RingMatrix normalizedColumn(Field f, Ring r, int n, const std::vector<std::pair<int, std::pair<int, Scalar>>>& terms) {
  RingMatrix v(f, r, n, 1);
  for (const auto& [i, t] : terms) v(i, 0) += RingElement::monomial(t.second, t.first, r);
  return v;
}

}  // namespace

CechDatum cech(const CoherentSheaf& f, int minWindow) {
  const Field fld = f.field();
  const fpmod::NormalForm& nfU = f.mU().normalForm();
  const fpmod::NormalForm& nfV = f.mV().normalForm();
  const fpmod::NormalForm& nfO = f.overlapU().normalForm();
  auto st = std::make_shared<CechState>();
  st->complex.field = fld;
  st->complex.modU = moduli(nfU);
  st->complex.modV = moduli(nfV);
  st->complex.modO = moduli(nfO);
  st->complex.tU = nfO.toNormal * nfU.fromNormal.toLaurent();
  st->complex.tV = nfO.toNormal * f.psi() * nfV.fromNormal.toLaurent();
  st->overlapToNormal = nfO.toNormal;
  st->mU = f.mU();
  st->mV = f.mV();
  st->run = detail::stabilize(st->complex, std::max(f.presentationDegree() + 2, minWindow), true, "homalg");
  const EngineRun& run = st->run;

  CechDatum out;
  out.window_ = run.window;
  st->sections = std::make_shared<Echelon>(fld, static_cast<int>(run.sources.size()));
  for (const SparseVec& rel : run.kernel) {
    st->sections->insert(rel);
    std::vector<std::pair<int, std::pair<int, Scalar>>> uT, vT;
    for (const auto& [idx, c] : rel) {
      const auto& s = run.sources[static_cast<std::size_t>(idx)];
      (s.side == 0 ? uT : vT).push_back({s.coord, {s.exp, c}});
    }
    RingMatrix u = nfU.fromNormal * normalizedColumn(fld, Ring::PolyU, nfU.size(), uT);
    RingMatrix v = nfV.fromNormal * normalizedColumn(fld, Ring::PolyV, nfV.size(), vT);
    out.h0Basis_.push_back({u, v});
  }
  for (int pos : run.h1Positions) {
    auto [j, e] = run.overlapCoord[static_cast<std::size_t>(pos)];
    RingMatrix z(fld, Ring::Laurent, nfO.size(), 1);
    z(j, 0) = RingElement::monomial(fld.one(), e, Ring::Laurent);
    out.h1Basis_.push_back(nfO.fromNormal * z);
  }
  out.state_ = st;
  return out;
}

std::vector<Scalar> CechDatum::h1Coordinates(const RingMatrix& z) const {
  const CechState& st = *state_;
  auto v = detail::overlapVector(st.run, st.complex, st.overlapToNormal * z);
  if (!v) throw MathError("homalg", "overlap element lies outside the computed cohomology window");
  Echelon::Reduced red = st.run.echelon->reduce(*v);
  if (!red.residual.empty() && red.residual.front().first < st.run.outside)
    throw MathError("homalg", "overlap element lies outside the computed cohomology window");
  std::vector<Scalar> out;
  for (int p : st.run.h1Positions) out.push_back(exact::entry(red.residual, p, st.complex.field));
  return out;
}

std::vector<Scalar> CechDatum::h0Coordinates(const SectionPair& s) const {
  const CechState& st = *state_;
  SparseVec v;
  auto add = [&](int side, const RingMatrix& norm) {
    for (int i = 0; i < norm.rows(); ++i) {
      const RingElement& e = norm(i, 0);
      const auto& cs = e.coefficients();
      for (std::size_t k = 0; k < cs.size(); ++k) {
        if (cs[k].isZero()) continue;
        auto it = st.run.sourceIndex.find({side * 100000 + i, e.lowExponent() + static_cast<int>(k)});
        if (it == st.run.sourceIndex.end()) throw MathError("homalg", "section degree exceeds the computed window");
        v.push_back({it->second, cs[k]});
      }
    }
  };
  add(0, st.mU.reduce(s.u));
  add(1, st.mV.reduce(s.v));
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  Echelon::Reduced red = st.sections->reduce(v);
  if (!red.residual.empty()) throw MathError("homalg", "pair is not a global section");
  std::vector<Scalar> out(static_cast<std::size_t>(h0()), st.complex.field.zero());
  for (const auto& [j, c] : red.combo) out[static_cast<std::size_t>(j)] = c;
  return out;
}

int eulerChar(const CoherentSheaf& f) {
  CechDatum d = cech(f);
  return d.h0() - d.h1();
}

}  // namespace purisheaf::homalg
