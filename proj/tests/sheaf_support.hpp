#pragma once

// Random coherent sheaves built from labels, then scrambled by chart automorphisms.

#include <algorithm>
#include <random>
#include <vector>

#include "purisheaf/sheafp1/sheaf.hpp"
#include "support.hpp"

namespace testsupport {

using purisheaf::sheaf::ClosedPoint;
using purisheaf::sheaf::CoherentSheaf;
using purisheaf::sheaf::SheafLabel;

inline RingMatrix randomUnimodular(Field f, Ring r, int n, std::mt19937_64& rng, int maxDeg = 1) {
  RingMatrix u = RingMatrix::identity(f, r, n);
  for (int step = 0; step < 3 * n; ++step) {
    int i = static_cast<int>(rng() % static_cast<unsigned>(n));
    int j = static_cast<int>(rng() % static_cast<unsigned>(n));
    if (i == j) {
      long s = 1 + static_cast<long>(rng() % 3);
      if (f.isRational() || s % static_cast<long>(f.characteristic()) != 0) u.scaleRow(i, f.fromInt(s));
      continue;
    }
    u.addRowMultiple(i, j, randomPoly(f, r, maxDeg, rng, 2));
  }
  return u;
}

inline std::vector<ClosedPoint> samplePoints(Field f) {
  std::vector<ClosedPoint> pts;
  pts.push_back(ClosedPoint::finite(P(f, Ring::PolyU, {0, 1})));
  pts.push_back(ClosedPoint::finite(P(f, Ring::PolyU, {-1, 1})));
  pts.push_back(ClosedPoint::finite(P(f, Ring::PolyU, {2, 1})));
  pts.push_back(ClosedPoint::infinity(f));
  if (f.isRational())
    pts.push_back(ClosedPoint::finite(P(f, Ring::PolyU, {1, 0, 1})));
  else if (f.characteristic() == 5)
    pts.push_back(ClosedPoint::finite(P(f, Ring::PolyU, {2, 0, 1})));
  return pts;
}

inline SheafLabel randomLabel(Field f, std::mt19937_64& rng, int maxDeg = 3, int maxLen = 3, int torsionWeight = 2) {
  if (static_cast<int>(rng() % 5) < torsionWeight) {
    auto pts = samplePoints(f);
    return SheafLabel::tors(pts[rng() % pts.size()], 1 + static_cast<int>(rng() % static_cast<unsigned>(maxLen)));
  }
  return SheafLabel::lb(static_cast<int>(rng() % static_cast<unsigned>(2 * maxDeg + 1)) - maxDeg);
}

inline std::vector<SheafLabel> randomLabels(Field f, std::mt19937_64& rng, int maxSummands, int maxDeg = 3, int maxLen = 3) {
  int k = 1 + static_cast<int>(rng() % static_cast<unsigned>(maxSummands));
  std::vector<SheafLabel> out;
  for (int i = 0; i < k; ++i) out.push_back(randomLabel(f, rng, maxDeg, maxLen));
  std::sort(out.begin(), out.end());
  return out;
}

inline CoherentSheaf sheafOf(const std::vector<SheafLabel>& labels, Field f) {
  std::vector<CoherentSheaf> parts;
  for (const auto& l : labels) parts.push_back(purisheaf::sheaf::sheafFromLabel(l, f));
  return purisheaf::sheaf::directSum(parts, f);
}

/// Random re-presentation by chart automorphisms.
inline CoherentSheaf scramble(const CoherentSheaf& s, std::mt19937_64& rng) {
  const Field f = s.field();
  RingMatrix aU = randomUnimodular(f, Ring::PolyU, s.mU().generators(), rng);
  RingMatrix aV = randomUnimodular(f, Ring::PolyV, s.mV().generators(), rng);
  RingMatrix cU = randomUnimodular(f, Ring::PolyU, s.mU().relations().cols(), rng);
  RingMatrix cV = randomUnimodular(f, Ring::PolyV, s.mV().relations().cols(), rng);
  return purisheaf::sheaf::represent(s, aU, aV, cU, cV);
}

}  // namespace testsupport
