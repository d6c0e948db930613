#include "purisheaf/exact/matrix.hpp"

#include <algorithm>
#include <climits>
#include <sstream>

namespace purisheaf::exact {

RingMatrix::RingMatrix(Field f, Ring r, int rows, int cols)
    : field_(f), ring_(r), rows_(rows), cols_(cols),
      e_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), RingElement(f, r)) {
  if (rows < 0 || cols < 0) throw MathError("exactlinear", "negative matrix dimension");
}

std::size_t RingMatrix::index(int i, int j) const {
  return static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(j);
}

RingMatrix RingMatrix::identity(Field f, Ring r, int n) {
  RingMatrix m(f, r, n, n);
  for (int i = 0; i < n; ++i) m(i, i) = RingElement::one(f, r);
  return m;
}

RingMatrix RingMatrix::diagonal(Field f, Ring r, const std::vector<RingElement>& d, int rows, int cols) {
  RingMatrix m(f, r, rows, cols);
  for (std::size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
  return m;
}

RingMatrix RingMatrix::column(Field f, Ring r, const std::vector<RingElement>& entries) {
  RingMatrix m(f, r, static_cast<int>(entries.size()), 1);
  for (std::size_t i = 0; i < entries.size(); ++i) m(static_cast<int>(i), 0) = entries[i];
  return m;
}

RingMatrix operator*(const RingMatrix& a, const RingMatrix& b) {
  if (a.cols_ != b.rows_) throw MathError("exactlinear", "matrix shape mismatch in product");
  if (a.ring_ != b.ring_) throw MathError("exactlinear", "matrix ring mismatch in product");
  RingMatrix c(a.field_, a.ring_, a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i)
    for (int k = 0; k < a.cols_; ++k) {
      const RingElement& aik = a(i, k);
      if (aik.isZero()) continue;
      for (int j = 0; j < b.cols_; ++j) {
        const RingElement& bkj = b(k, j);
        if (bkj.isZero()) continue;
        c(i, j) += aik * bkj;
      }
    }
  return c;
}

RingMatrix operator+(const RingMatrix& a, const RingMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw MathError("exactlinear", "matrix shape mismatch in sum");
  RingMatrix c = a;
  for (std::size_t i = 0; i < c.e_.size(); ++i) c.e_[i] += b.e_[i];
  return c;
}

RingMatrix operator-(const RingMatrix& a, const RingMatrix& b) { return a + (-b); }

bool operator==(const RingMatrix& a, const RingMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.ring_ == b.ring_ && a.e_ == b.e_;
}

RingMatrix RingMatrix::scaled(const RingElement& s) const {
  RingMatrix c = *this;
  for (auto& e : c.e_) e = e * s;
  return c;
}

RingMatrix RingMatrix::operator-() const {
  RingMatrix c = *this;
  for (auto& e : c.e_) e = -e;
  return c;
}

RingMatrix RingMatrix::transposed() const {
  RingMatrix t(field_, ring_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

RingMatrix RingMatrix::block(int r0, int c0, int nr, int nc) const {
  if (r0 < 0 || c0 < 0 || r0 + nr > rows_ || c0 + nc > cols_)
    throw MathError("exactlinear", "block out of range");
  RingMatrix b(field_, ring_, nr, nc);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

RingMatrix RingMatrix::selectRows(const std::vector<int>& rows) const {
  RingMatrix b(field_, ring_, static_cast<int>(rows.size()), cols_);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < cols_; ++j) b(static_cast<int>(i), j) = (*this)(rows[i], j);
  return b;
}

RingMatrix RingMatrix::selectCols(const std::vector<int>& cols) const {
  RingMatrix b(field_, ring_, rows_, static_cast<int>(cols.size()));
  for (int i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) b(i, static_cast<int>(j)) = (*this)(i, cols[j]);
  return b;
}

bool RingMatrix::isZero() const {
  return std::all_of(e_.begin(), e_.end(), [](const RingElement& e) { return e.isZero(); });
}

RingMatrix RingMatrix::hcat(const RingMatrix& a, const RingMatrix& b) {
  if (a.rows_ != b.rows_) throw MathError("exactlinear", "hcat row mismatch");
  RingMatrix c(a.field_, a.ring_, a.rows_, a.cols_ + b.cols_);
  for (int i = 0; i < a.rows_; ++i) {
    for (int j = 0; j < a.cols_; ++j) c(i, j) = a(i, j);
    for (int j = 0; j < b.cols_; ++j) c(i, a.cols_ + j) = b(i, j);
  }
  return c;
}

RingMatrix RingMatrix::vcat(const RingMatrix& a, const RingMatrix& b) {
  if (a.cols_ != b.cols_) throw MathError("exactlinear", "vcat column mismatch");
  RingMatrix c(a.field_, a.ring_, a.rows_ + b.rows_, a.cols_);
  for (int j = 0; j < a.cols_; ++j) {
    for (int i = 0; i < a.rows_; ++i) c(i, j) = a(i, j);
    for (int i = 0; i < b.rows_; ++i) c(a.rows_ + i, j) = b(i, j);
  }
  return c;
}

RingMatrix RingMatrix::blockDiag(const RingMatrix& a, const RingMatrix& b) {
  RingMatrix c(a.field_, a.ring_, a.rows_ + b.rows_, a.cols_ + b.cols_);
  for (int i = 0; i < a.rows_; ++i)
    for (int j = 0; j < a.cols_; ++j) c(i, j) = a(i, j);
  for (int i = 0; i < b.rows_; ++i)
    for (int j = 0; j < b.cols_; ++j) c(a.rows_ + i, a.cols_ + j) = b(i, j);
  return c;
}

RingMatrix RingMatrix::kron(const RingMatrix& a, const RingMatrix& b) {
  RingMatrix c(a.field_, a.ring_, a.rows_ * b.rows_, a.cols_ * b.cols_);
  for (int i = 0; i < a.rows_; ++i)
    for (int j = 0; j < a.cols_; ++j) {
      if (a(i, j).isZero()) continue;
      for (int k = 0; k < b.rows_; ++k)
        for (int l = 0; l < b.cols_; ++l) c(i * b.rows_ + k, j * b.cols_ + l) = a(i, j) * b(k, l);
    }
  return c;
}

void RingMatrix::swapRows(int i, int j) {
  if (i == j) return;
  for (int c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
}

void RingMatrix::swapCols(int i, int j) {
  if (i == j) return;
  for (int r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
}

void RingMatrix::addRowMultiple(int i, int j, const RingElement& c) {
  if (c.isZero()) return;
  for (int k = 0; k < cols_; ++k)
    if (!(*this)(j, k).isZero()) (*this)(i, k) += c * (*this)(j, k);
}

void RingMatrix::addColMultiple(int i, int j, const RingElement& c) {
  if (c.isZero()) return;
  for (int k = 0; k < rows_; ++k)
    if (!(*this)(k, j).isZero()) (*this)(k, i) += c * (*this)(k, j);
}

void RingMatrix::scaleRow(int i, const Scalar& s) {
  for (int k = 0; k < cols_; ++k) (*this)(i, k) = (*this)(i, k).scaled(s);
}

void RingMatrix::scaleCol(int j, const Scalar& s) {
  for (int k = 0; k < rows_; ++k) (*this)(k, j) = (*this)(k, j).scaled(s);
}

RingMatrix RingMatrix::toLaurent() const {
  RingMatrix c(field_, Ring::Laurent, rows_, cols_);
  for (std::size_t i = 0; i < e_.size(); ++i) c.e_[i] = e_[i].toLaurent();
  return c;
}

RingMatrix RingMatrix::withRing(Ring r) const {
  RingMatrix c(field_, r, rows_, cols_);
  for (std::size_t i = 0; i < e_.size(); ++i) c.e_[i] = e_[i].withRing(r);
  return c;
}

RingMatrix RingMatrix::laurentToV() const {
  RingMatrix c(field_, Ring::PolyV, rows_, cols_);
  for (std::size_t i = 0; i < e_.size(); ++i) c.e_[i] = e_[i].reflected(Ring::PolyV);
  return c;
}

int RingMatrix::maxDegree() const {
  int d = -1;
  for (const auto& e : e_) d = std::max(d, e.degree());
  return d;
}

int RingMatrix::minExponent() const {
  int d = INT_MAX;
  for (const auto& e : e_)
    if (!e.isZero()) d = std::min(d, e.lowExponent());
  return d == INT_MAX ? 0 : d;
}

std::string RingMatrix::toString() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < rows_; ++i) {
    if (i) os << "; ";
    for (int j = 0; j < cols_; ++j) {
      if (j) os << ", ";
      os << (*this)(i, j).toString();
    }
  }
  os << "]";
  return os.str();
}

}  // namespace purisheaf::exact
