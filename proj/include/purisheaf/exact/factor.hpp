#pragma once

#include <vector>

#include "purisheaf/exact/poly.hpp"

namespace purisheaf::exact {

struct IrreducibleFactor {
  RingElement p;  ///< monic irreducible
  int multiplicity = 1;
};

/// Factor a nonzero polynomial into monic irreducibles over its field.
/// F_p: squarefree split, distinct-degree and Cantor-Zassenhaus.
/// Q: Zassenhaus (Hensel lifting of a modular factorization, then subset recombination).
/// Constants give an empty list. Output is sorted by canonicalLess.
std::vector<IrreducibleFactor> factorPolynomial(const RingElement& f);

bool isIrreducible(const RingElement& f);

/// Total order on polynomials used for canonical output: degree first, then
/// coefficients from the top down.
bool canonicalLess(const RingElement& a, const RingElement& b);

}  // namespace purisheaf::exact
