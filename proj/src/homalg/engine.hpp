#pragma once

// Two-chart complex  A_U ⊕ A_V -> O,  (s, t) |-> tU s - tV t,
// with A_U a k[x]-module, A_V a k[y]-module and O a Laurent module, all given
// diagonally (modulus 0 = free coordinate). Sections are enumerated on a
// degree window and the cohomology read off by sparse elimination.

#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "purisheaf/exact/klinear.hpp"
#include "purisheaf/exact/matrix.hpp"

namespace purisheaf::homalg::detail {

using exact::Echelon;
using exact::Field;
using exact::RingElement;
using exact::RingMatrix;
using exact::Scalar;
using exact::SparseVec;

struct ChartComplex {
  Field field;
  std::vector<RingElement> modU, modV, modO;
  RingMatrix tU, tV;  ///< Laurent; tV already written in x (y = 1/x)
};

struct SourceIndex {
  int side;  ///< 0 = U, 1 = V
  int coord;
  int exp;
};

struct EngineRun {
  int h0 = 0, h1 = 0;
  int window = 0;  ///< free overlap exponents in [-window, window]
  int degree = 0;  ///< free source exponents in [0, degree]
  std::vector<SourceIndex> sources;
  std::map<std::pair<int, int>, int> sourceIndex;
  std::vector<SparseVec> kernel;  ///< over source indices
  std::map<std::pair<int, int>, int> overlapIndex;  ///< (coord, exp) -> index
  std::vector<std::pair<int, int>> overlapCoord;
  int outside = 0;  ///< indices below this lie outside the window
  std::shared_ptr<Echelon> echelon;
  std::vector<int> h1Positions;
};

/// Largest |exponent| in the transfer matrices.
int transferSpan(const ChartComplex& c);

/// One pass on a fixed window. With `withH1` false no window split is made.
EngineRun runComplex(const ChartComplex& c, int window, int degree, bool withH1);

/// Widen by 4 until two consecutive passes agree on (h0, h1).
EngineRun stabilize(const ChartComplex& c, int startWindow, bool withH1, const char* module);

/// Image of a source element in overlap coordinates: (coord, exp, value).
std::vector<std::pair<std::pair<int, int>, Scalar>> imageTerms(const ChartComplex& c, int side, int coord, int exp);

/// Overlap element (normalized Laurent column) as a sparse vector in the run's indexing.
std::optional<SparseVec> overlapVector(const EngineRun& r, const ChartComplex& c, const RingMatrix& normalized);

}  // namespace purisheaf::homalg::detail
