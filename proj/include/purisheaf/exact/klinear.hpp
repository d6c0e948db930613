#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "purisheaf/exact/scalar.hpp"

namespace purisheaf::exact {

/// Sparse vector over a field: (index, value) pairs sorted by index, no zeros.
using SparseVec = std::vector<std::pair<int, Scalar>>;

SparseVec axpy(const SparseVec& a, const Scalar& s, const SparseVec& b);  // a + s*b
SparseVec scaleVec(const SparseVec& a, const Scalar& s);
Scalar entry(const SparseVec& v, int index, Field f);

/// Incrementally built row-echelon basis with combination tracking. Each stored
/// row remembers which inserted inputs it is a combination of, so the structure
/// answers rank, kernel and solve questions with one elimination pass.
class Echelon {
 public:
  Echelon(Field f, int dim) : field_(f), dim_(dim), rowOf_(static_cast<std::size_t>(dim), -1) {}

  struct Reduced {
    SparseVec residual;  ///< zero at every pivot position
    SparseVec combo;     ///< v = residual + sum combo[j] * input_j
  };

  Reduced reduce(const SparseVec& v) const;
  /// Inserts input number `inputs()`; returns the kernel relation if dependent.
  std::optional<SparseVec> insert(const SparseVec& v);

  int rank() const noexcept { return static_cast<int>(rows_.size()); }
  int inputs() const noexcept { return inputs_; }
  int dim() const noexcept { return dim_; }
  bool isPivot(int i) const { return rowOf_[static_cast<std::size_t>(i)] >= 0; }
  Field field() const noexcept { return field_; }

 private:
  Field field_;
  int dim_;
  int inputs_ = 0;
  std::vector<int> rowOf_;
  std::vector<SparseVec> rows_;
  std::vector<SparseVec> tags_;
};

struct KernelResult {
  std::vector<SparseVec> kernel;  ///< basis of the null space, indexed by column
  int rank = 0;
};

/// Null space of the matrix whose columns are given (each of length `dim`).
KernelResult kernelOfColumns(Field f, int dim, const std::vector<SparseVec>& columns);

/// Coefficients c with sum c_j columns_j = b, or nullopt.
std::optional<SparseVec> solveColumns(Field f, int dim, const std::vector<SparseVec>& columns,
                                      const SparseVec& b);

int rankOfColumns(Field f, int dim, const std::vector<SparseVec>& columns);

/// Dense helpers for small scalar matrices (row-major).
struct ScalarMatrix {
  Field field;
  int rows = 0;
  int cols = 0;
  std::vector<Scalar> data;

  ScalarMatrix() = default;
  ScalarMatrix(Field f, int r, int c) : field(f), rows(r), cols(c), data(static_cast<std::size_t>(r * c), f.zero()) {}
  static ScalarMatrix identity(Field f, int n);

  Scalar& operator()(int i, int j) { return data[static_cast<std::size_t>(i * cols + j)]; }
  const Scalar& operator()(int i, int j) const { return data[static_cast<std::size_t>(i * cols + j)]; }

  std::vector<SparseVec> columns() const;
  friend ScalarMatrix operator*(const ScalarMatrix& a, const ScalarMatrix& b);
  friend ScalarMatrix operator+(const ScalarMatrix& a, const ScalarMatrix& b);
  ScalarMatrix scaled(const Scalar& s) const;
  friend bool operator==(const ScalarMatrix& a, const ScalarMatrix& b);
  int rank() const;
};

}  // namespace purisheaf::exact
