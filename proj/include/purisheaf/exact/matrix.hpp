#pragma once

#include <string>
#include <vector>

#include "purisheaf/error.hpp"
#include "purisheaf/exact/poly.hpp"

namespace purisheaf::exact {

/// Dense matrix with entries in one of the coordinate rings.
class RingMatrix {
 public:
  RingMatrix() = default;
  RingMatrix(Field f, Ring r, int rows, int cols);

  static RingMatrix identity(Field f, Ring r, int n);
  static RingMatrix zero(Field f, Ring r, int rows, int cols) { return RingMatrix(f, r, rows, cols); }
  static RingMatrix diagonal(Field f, Ring r, const std::vector<RingElement>& d, int rows, int cols);
  /// Single column from a list of entries.
  static RingMatrix column(Field f, Ring r, const std::vector<RingElement>& entries);

  Field field() const noexcept { return field_; }
  Ring ring() const noexcept { return ring_; }
  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }

  const RingElement& operator()(int i, int j) const { return e_[index(i, j)]; }
  RingElement& operator()(int i, int j) { return e_[index(i, j)]; }

  friend RingMatrix operator*(const RingMatrix& a, const RingMatrix& b);
  friend RingMatrix operator+(const RingMatrix& a, const RingMatrix& b);
  friend RingMatrix operator-(const RingMatrix& a, const RingMatrix& b);
  friend bool operator==(const RingMatrix& a, const RingMatrix& b);
  RingMatrix scaled(const RingElement& s) const;
  RingMatrix operator-() const;

  RingMatrix transposed() const;
  RingMatrix block(int r0, int c0, int nr, int nc) const;
  RingMatrix selectRows(const std::vector<int>& rows) const;
  RingMatrix selectCols(const std::vector<int>& cols) const;
  RingMatrix colMatrix(int j) const { return block(0, j, rows_, 1); }
  bool isZero() const;

  static RingMatrix hcat(const RingMatrix& a, const RingMatrix& b);
  static RingMatrix vcat(const RingMatrix& a, const RingMatrix& b);
  static RingMatrix blockDiag(const RingMatrix& a, const RingMatrix& b);
  /// Kronecker product a (x) b.
  static RingMatrix kron(const RingMatrix& a, const RingMatrix& b);

  void swapRows(int i, int j);
  void swapCols(int i, int j);
  /// row_i += c * row_j
  void addRowMultiple(int i, int j, const RingElement& c);
  void addColMultiple(int i, int j, const RingElement& c);
  void scaleRow(int i, const Scalar& s);
  void scaleCol(int j, const Scalar& s);

  /// Convert every entry to Laurent (y -> 1/x for PolyV).
  RingMatrix toLaurent() const;
  /// Reinterpret entries in a different ring (exponents must be legal there).
  RingMatrix withRing(Ring r) const;
  /// Convert a Laurent matrix to PolyV via x -> 1/y (entries must have exponents <= 0).
  RingMatrix laurentToV() const;
  int maxDegree() const;
  int minExponent() const;

  std::string toString() const;

 private:
  std::size_t index(int i, int j) const;

  Field field_;
  Ring ring_ = Ring::PolyU;
  int rows_ = 0;
  int cols_ = 0;
  std::vector<RingElement> e_;
};

/// Result of a Smith normal form computation: u * m * v = s.
struct SmithForm {
  RingMatrix s;
  RingMatrix u;
  RingMatrix v;
  /// The nonzero diagonal entries d_1 | d_2 | ... (monic).
  std::vector<RingElement> diagonal;
  RingMatrix uinv;  ///< inverse of u
  int rank() const { return static_cast<int>(diagonal.size()); }
};

/// Smith normal form over k[x] or k[y]. Throws "unsupported ring" for Laurent.
SmithForm smithNormalForm(const RingMatrix& m, int degreeBudget = kDefaultDegreeBudget);

/// Smith form of a Laurent matrix computed after clearing denominators; the
/// transforms are unimodular over k[x] hence over Laurent, and the diagonal is
/// returned with x-powers stripped (units dropped to 1).
SmithForm laurentSmithForm(const RingMatrix& m, int degreeBudget = kDefaultDegreeBudget);

/// Solutions of a * x = b.
struct LinearSolution {
  bool solvable = false;
  RingMatrix particular;   ///< a.cols() x b.cols()
  RingMatrix homogeneous;  ///< a.cols() x k, columns form a basis of ker a
};

LinearSolution solveLinear(const RingMatrix& a, const RingMatrix& b,
                           int degreeBudget = kDefaultDegreeBudget);

/// Basis (as columns) of the kernel of a over its ring.
RingMatrix kernelBasis(const RingMatrix& a, int degreeBudget = kDefaultDegreeBudget);

/// Inverse of a unimodular matrix (throws if not invertible over the ring).
RingMatrix inverseUnimodular(const RingMatrix& m, int degreeBudget = kDefaultDegreeBudget);

/// Greatest common divisor of all k x k minors (monic; zero if all vanish).
/// Brute force over minors; intended for small test-sized matrices.
RingElement gcdOfMinors(const RingMatrix& m, int k);
RingElement determinant(const RingMatrix& m);

}  // namespace purisheaf::exact
