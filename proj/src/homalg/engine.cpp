#include "engine.hpp"

#include <algorithm>
#include <set>

#include "purisheaf/error.hpp"

namespace purisheaf::homalg::detail {

namespace {

int spanOf(const RingMatrix& m) {
  int s = 0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      const RingElement& e = m(i, j);
      if (e.isZero()) continue;
      s = std::max({s, std::abs(e.degree()), std::abs(e.lowExponent())});
    }
  return s;
}

int torsionDim(const RingElement& m) { return m.degree() - m.lowExponent(); }

}  // namespace

int transferSpan(const ChartComplex& c) { return std::max(spanOf(c.tU), spanOf(c.tV)); }

std::vector<std::pair<std::pair<int, int>, Scalar>> imageTerms(const ChartComplex& c, int side, int coord, int exp) {
  std::vector<std::pair<std::pair<int, int>, Scalar>> out;
  const RingMatrix& t = side == 0 ? c.tU : c.tV;
  for (int j = 0; j < t.rows(); ++j) {
    const RingElement& entry = t(j, coord);
    if (entry.isZero()) continue;
    RingElement e = entry.shifted(side == 0 ? exp : -exp);
    if (side == 1) e = -e;
    const RingElement& m = c.modO[static_cast<std::size_t>(j)];
    if (!m.isZero()) e = exact::reduceMod(e, m);
    if (e.isZero()) continue;
    const auto& cs = e.coefficients();
    for (std::size_t k = 0; k < cs.size(); ++k)
      if (!cs[k].isZero()) out.push_back({{j, e.lowExponent() + static_cast<int>(k)}, cs[k]});
  }
  return out;
}

EngineRun runComplex(const ChartComplex& c, int window, int degree, bool withH1) {
  EngineRun r;
  r.window = window;
  r.degree = degree;
  for (int side = 0; side < 2; ++side) {
    const auto& mods = side == 0 ? c.modU : c.modV;
    for (int i = 0; i < static_cast<int>(mods.size()); ++i) {
      const RingElement& m = mods[static_cast<std::size_t>(i)];
      int top = m.isZero() ? degree + 1 : m.degree();
      for (int k = 0; k < top; ++k) {
        r.sourceIndex[{side * 100000 + i, k}] = static_cast<int>(r.sources.size());
        r.sources.push_back({side, i, k});
      }
    }
  }
  std::vector<std::vector<std::pair<std::pair<int, int>, Scalar>>> images;
  images.reserve(r.sources.size());
  std::set<std::pair<int, int>> outsideSet;
  for (const SourceIndex& s : r.sources) {
    images.push_back(imageTerms(c, s.side, s.coord, s.exp));
    for (const auto& term : images.back()) {
      int j = term.first.first;
      bool freeCoord = c.modO[static_cast<std::size_t>(j)].isZero();
      if (freeCoord && (!withH1 || std::abs(term.first.second) > window)) outsideSet.insert(term.first);
    }
  }
  for (const auto& key : outsideSet) {
    r.overlapIndex[key] = static_cast<int>(r.overlapCoord.size());
    r.overlapCoord.push_back(key);
  }
  r.outside = static_cast<int>(r.overlapCoord.size());
  for (int j = 0; j < static_cast<int>(c.modO.size()); ++j) {
    const RingElement& m = c.modO[static_cast<std::size_t>(j)];
    if (m.isZero()) continue;
    for (int k = 0; k < torsionDim(m); ++k) {
      r.overlapIndex[{j, m.lowExponent() + k}] = static_cast<int>(r.overlapCoord.size());
      r.overlapCoord.push_back({j, m.lowExponent() + k});
    }
  }
  if (withH1)
    for (int j = 0; j < static_cast<int>(c.modO.size()); ++j) {
      if (!c.modO[static_cast<std::size_t>(j)].isZero()) continue;
      for (int e = -window; e <= window; ++e) {
        r.overlapIndex[{j, e}] = static_cast<int>(r.overlapCoord.size());
        r.overlapCoord.push_back({j, e});
      }
    }
  const int dim = static_cast<int>(r.overlapCoord.size());
  r.echelon = std::make_shared<Echelon>(c.field, dim);
  for (const auto& terms : images) {
    SparseVec v;
    v.reserve(terms.size());
    for (const auto& [key, val] : terms) v.push_back({r.overlapIndex.at(key), val});
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    if (auto rel = r.echelon->insert(v)) r.kernel.push_back(std::move(*rel));
  }
  r.h0 = static_cast<int>(r.kernel.size());
  if (withH1) {
    for (int i = r.outside; i < dim; ++i)
      if (!r.echelon->isPivot(i)) r.h1Positions.push_back(i);
    r.h1 = static_cast<int>(r.h1Positions.size());
  }
  return r;
}

EngineRun stabilize(const ChartComplex& c, int startWindow, bool withH1, const char* module) {
  const int s = transferSpan(c);
  std::optional<EngineRun> prev;
  for (int w = std::max(startWindow, 0);; w += 4) {
    if (w + 2 * s + 2 > kDefaultDegreeBudget)
      throw MathError(module, "cohomology window did not stabilize within the degree budget");
    EngineRun run = runComplex(c, w, w + 2 * s + 2, withH1);
    if (prev && prev->h0 == run.h0 && prev->h1 == run.h1) return run;
    prev = std::move(run);
  }
}

std::optional<SparseVec> overlapVector(const EngineRun& r, const ChartComplex& c, const RingMatrix& normalized) {
  SparseVec v;
  for (int j = 0; j < normalized.rows(); ++j) {
    RingElement e = normalized(j, 0);
    const RingElement& m = c.modO[static_cast<std::size_t>(j)];
    if (!m.isZero()) e = exact::reduceMod(e, m);
    const auto& cs = e.coefficients();
    for (std::size_t k = 0; k < cs.size(); ++k) {
      if (cs[k].isZero()) continue;
      auto it = r.overlapIndex.find({j, e.lowExponent() + static_cast<int>(k)});
      if (it == r.overlapIndex.end()) return std::nullopt;
      v.push_back({it->second, cs[k]});
    }
  }
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return v;
}

}  // namespace purisheaf::homalg::detail
