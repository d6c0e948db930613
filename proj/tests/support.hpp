#pragma once

#include <random>
#include <vector>

#include "purisheaf/exact/matrix.hpp"

namespace testsupport {

using namespace purisheaf::exact;

inline RingElement P(Field f, Ring r, std::vector<long> c, int low = 0) {
  return RingElement::fromInts(f, r, c, low);
}

inline RingElement X(Field f, Ring r = Ring::PolyU) { return RingElement::variable(f, r); }

inline RingMatrix M(Field f, Ring r, const std::vector<std::vector<RingElement>>& rows) {
  RingMatrix m(f, r, static_cast<int>(rows.size()), rows.empty() ? 0 : static_cast<int>(rows[0].size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
  return m;
}

inline RingElement randomPoly(Field f, Ring r, int maxDeg, std::mt19937_64& rng, int range = 4) {
  std::vector<long> c;
  int d = static_cast<int>(rng() % static_cast<unsigned>(maxDeg + 1));
  for (int i = 0; i <= d; ++i) c.push_back(static_cast<long>(rng() % static_cast<unsigned>(2 * range + 1)) - range);
  return RingElement::fromInts(f, r, c);
}

inline RingMatrix randomMatrix(Field f, Ring r, int rows, int cols, int maxDeg, std::mt19937_64& rng) {
  RingMatrix m(f, r, rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = randomPoly(f, r, maxDeg, rng);
  return m;
}

}  // namespace testsupport
