#include <algorithm>
#include <map>
#include <random>

#include "purisheaf/error.hpp"
#include "purisheaf/exact/factor.hpp"
#include "purisheaf/homalg/homalg.hpp"

// Krull-Schmidt labels of a coherent sheaf: torsion from the chart modules,
// the bundle part from the jumps of h0(F(n)).

namespace purisheaf::sheaf {

std::vector<SheafLabel> decomposeSheaf(const CoherentSheaf& f) {
  const Field fld = f.field();
  const fpmod::NormalForm& nfU = f.mU().normalForm();
  const fpmod::NormalForm& nfV = f.mV().normalForm();
  if (nfU.freeRank != nfV.freeRank) throw MathError("sheafp1", "chart ranks disagree");
  std::vector<SheafLabel> out;
  int torsionLength = 0;
  for (const RingElement& d : nfU.factors)
    for (const auto& fac : exact::factorPolynomial(d)) {
      out.push_back(SheafLabel::tors(ClosedPoint::finite(fac.p), fac.multiplicity));
      torsionLength += fac.multiplicity * fac.p.degree();
    }
  for (const RingElement& d : nfV.factors)
    if (d.lowExponent() > 0) {
      out.push_back(SheafLabel::tors(ClosedPoint::infinity(fld), d.lowExponent()));
      torsionLength += d.lowExponent();
    }

  const int r = nfU.freeRank;
  if (r > 0) {
    std::map<int, int> h;
    auto bundleH0 = [&](int n) {
      auto it = h.find(n);
      if (it != h.end()) return it->second;
      int v = homalg::cech(twist(f, n)).h0() - torsionLength;
      h[n] = v;
      return v;
    };
    // number of summands O(a) with a >= k
    auto atLeast = [&](int k) { return bundleH0(-k) - bundleH0(-k - 1); };
    const int chi = homalg::eulerChar(f) - torsionLength;
    const int start = (chi - r) / r;
    int hi = start;
    while (atLeast(hi) > 0) {
      if (++hi > kDefaultDegreeBudget) throw MathError("sheafp1", "bundle splitting search exceeded the degree budget");
    }
    int lo = start;
    while (atLeast(lo) < r) {
      if (--lo < -kDefaultDegreeBudget) throw MathError("sheafp1", "bundle splitting search exceeded the degree budget");
    }
    for (int k = lo; k < hi; ++k)
      for (int c = atLeast(k) - atLeast(k + 1); c > 0; --c) out.push_back(SheafLabel::lb(k));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace purisheaf::sheaf

namespace purisheaf::homalg {

bool certifyDecomposition(const CoherentSheaf& f, const std::vector<sheaf::SheafLabel>& labels) {
  const Field fld = f.field();
  std::vector<CoherentSheaf> parts;
  for (const auto& l : labels) parts.push_back(sheaf::sheafFromLabel(l, fld));
  CoherentSheaf g = sheaf::directSum(parts, fld);
  if (g.isZero() || f.isZero()) return g.isZero() && f.isZero();
  HomSpace hom = globalHom(g, f);
  if (hom.dimension() == 0) return false;
  std::mt19937_64 rng(0x636572ULL);
  for (int attempt = 0; attempt < 30; ++attempt) {
    SheafMorphism m = SheafMorphism::zero(g, f);
    for (const SheafMorphism& b : hom.basis()) {
      Scalar c = fld.fromInt(static_cast<long>(rng() % 11) - 5);
      if (!c.isZero()) m = m + b.scaled(c);
    }
    sheaf::KerCokerImage k = sheaf::kernelCokernelImage(m);
    if (k.kernel.isZero() && k.cokernel.isZero()) return true;
  }
  return false;
}

}  // namespace purisheaf::homalg
