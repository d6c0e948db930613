#include "purisheaf/exact/klinear.hpp"

#include "purisheaf/error.hpp"

namespace purisheaf::exact {

SparseVec axpy(const SparseVec& a, const Scalar& s, const SparseVec& b) {
  if (s.isZero() || b.empty()) return a;
  SparseVec out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, s * b[j].second);
      ++j;
    } else {
      Scalar v = a[i].second + s * b[j].second;
      if (!v.isZero()) out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

SparseVec scaleVec(const SparseVec& a, const Scalar& s) {
  if (s.isZero()) return {};
  SparseVec out = a;
  for (auto& e : out) e.second *= s;
  return out;
}

Scalar entry(const SparseVec& v, int index, Field f) {
  for (const auto& e : v)
    if (e.first == index) return e.second;
  return f.zero();
}

Echelon::Reduced Echelon::reduce(const SparseVec& v) const {
  // dense accumulator over the ambient space; pivots sit at the lowest index of
  // their row, so a single left-to-right sweep reduces completely
  std::vector<Scalar> acc(static_cast<std::size_t>(dim_), field_.zero());
  for (const auto& [i, s] : v) {
    if (i < 0 || i >= dim_) throw MathError("exactlinear", "vector index out of range");
    acc[static_cast<std::size_t>(i)] = s;
  }
  SparseVec combo;
  for (int i = 0; i < dim_; ++i) {
    Scalar c = acc[static_cast<std::size_t>(i)];
    if (c.isZero()) continue;
    int r = rowOf_[static_cast<std::size_t>(i)];
    if (r < 0) continue;
    for (const auto& [k, s] : rows_[static_cast<std::size_t>(r)]) acc[static_cast<std::size_t>(k)] -= c * s;
    combo = axpy(combo, c, tags_[static_cast<std::size_t>(r)]);
  }
  SparseVec residual;
  for (int i = 0; i < dim_; ++i)
    if (!acc[static_cast<std::size_t>(i)].isZero()) residual.emplace_back(i, acc[static_cast<std::size_t>(i)]);
  return {std::move(residual), std::move(combo)};
}

std::optional<SparseVec> Echelon::insert(const SparseVec& v) {
  const int me = inputs_++;
  Reduced red = reduce(v);
  SparseVec tag = axpy(SparseVec{{me, field_.one()}}, -field_.one(), red.combo);
  if (red.residual.empty()) return tag;
  Scalar inv = red.residual.front().second.inverse();
  int pivot = red.residual.front().first;
  rowOf_[static_cast<std::size_t>(pivot)] = static_cast<int>(rows_.size());
  rows_.push_back(scaleVec(red.residual, inv));
  tags_.push_back(scaleVec(tag, inv));
  return std::nullopt;
}

KernelResult kernelOfColumns(Field f, int dim, const std::vector<SparseVec>& columns) {
  Echelon ech(f, dim);
  KernelResult out;
  for (const auto& c : columns)
    if (auto rel = ech.insert(c)) out.kernel.push_back(std::move(*rel));
  out.rank = ech.rank();
  return out;
}

std::optional<SparseVec> solveColumns(Field f, int dim, const std::vector<SparseVec>& columns,
                                      const SparseVec& b) {
  Echelon ech(f, dim);
  for (const auto& c : columns) ech.insert(c);
  Echelon::Reduced red = ech.reduce(b);
  if (!red.residual.empty()) return std::nullopt;
  return red.combo;
}

int rankOfColumns(Field f, int dim, const std::vector<SparseVec>& columns) {
  Echelon ech(f, dim);
  for (const auto& c : columns) ech.insert(c);
  return ech.rank();
}

ScalarMatrix ScalarMatrix::identity(Field f, int n) {
  ScalarMatrix m(f, n, n);
  for (int i = 0; i < n; ++i) m(i, i) = f.one();
  return m;
}

std::vector<SparseVec> ScalarMatrix::columns() const {
  std::vector<SparseVec> out(static_cast<std::size_t>(cols));
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i)
      if (!(*this)(i, j).isZero()) out[static_cast<std::size_t>(j)].emplace_back(i, (*this)(i, j));
  return out;
}

ScalarMatrix operator*(const ScalarMatrix& a, const ScalarMatrix& b) {
  if (a.cols != b.rows) throw MathError("exactlinear", "scalar matrix shape mismatch");
  ScalarMatrix c(a.field, a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int k = 0; k < a.cols; ++k) {
      if (a(i, k).isZero()) continue;
      for (int j = 0; j < b.cols; ++j)
        if (!b(k, j).isZero()) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

ScalarMatrix operator+(const ScalarMatrix& a, const ScalarMatrix& b) {
  if (a.rows != b.rows || a.cols != b.cols) throw MathError("exactlinear", "scalar matrix shape mismatch");
  ScalarMatrix c = a;
  for (std::size_t i = 0; i < c.data.size(); ++i) c.data[i] += b.data[i];
  return c;
}

ScalarMatrix ScalarMatrix::scaled(const Scalar& s) const {
  ScalarMatrix c = *this;
  for (auto& v : c.data) v *= s;
  return c;
}

bool operator==(const ScalarMatrix& a, const ScalarMatrix& b) {
  return a.rows == b.rows && a.cols == b.cols && a.data == b.data;
}

int ScalarMatrix::rank() const { return rankOfColumns(field, rows, columns()); }

}  // namespace purisheaf::exact
