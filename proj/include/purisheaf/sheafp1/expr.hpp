#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "purisheaf/sheafp1/sheaf.hpp"

namespace purisheaf::sheaf {

/// Character cursor over description text; errors carry byte offsets.
class TextCursor {
 public:
  explicit TextCursor(std::string_view text, std::size_t base = 0) : s_(text), base_(base) {}

  void skipSpace();
  bool atEnd();
  char peek();
  /// Consumes `tok` (after whitespace) if present.
  bool eat(std::string_view tok);
  void expect(std::string_view tok);
  long parseInt();
  void advance(std::size_t n) { pos_ += n; }
  std::size_t offset() const { return base_ + pos_; }
  std::size_t pos() const { return pos_; }
  std::string_view text() const { return s_; }
  [[noreturn]] void fail(const std::string& msg) const;
  [[noreturn]] void failAt(const std::string& msg, std::size_t pos) const;

 private:
  std::string_view s_;
  std::size_t base_ = 0;
  std::size_t pos_ = 0;
};

/// Polynomial in x with rational coefficients, ascending.
struct PolyExpr {
  std::vector<mpq_class> coeffs;
  std::string toString() const;
  RingElement build(Field f) const;
  friend bool operator==(const PolyExpr& a, const PolyExpr& b) { return a.coeffs == b.coeffs; }
};

struct PointExpr {
  bool infinity = false;
  PolyExpr poly;
  std::string toString() const { return infinity ? "inf" : poly.toString(); }
  friend bool operator==(const PointExpr&, const PointExpr&) = default;
};

PolyExpr parsePoly(TextCursor& c);
/// `inf` or a polynomial.
PointExpr parsePoint(TextCursor& c);
ClosedPoint buildPoint(const PointExpr& p, Field f);
PointExpr pointExpr(const ClosedPoint& p);

struct SheafExpr {
  enum class Kind { Line, Torsion, Sum, Twist, Tensor };
  Kind kind = Kind::Line;
  long n = 0;  ///< O(n) degree, or twist amount
  PointExpr point;
  long length = 0;
  std::vector<SheafExpr> children;
  friend bool operator==(const SheafExpr&, const SheafExpr&) = default;
};

SheafExpr parseSheafExpr(std::string_view text, std::size_t base = 0);
/// Parses one sheaf expression at the cursor, leaving trailing text.
SheafExpr parseSheafExpr(TextCursor& c);
std::string printSheafExpr(const SheafExpr& e);
CoherentSheaf buildSheaf(const SheafExpr& e, Field f);
inline CoherentSheaf parseSheaf(std::string_view text, Field f) { return buildSheaf(parseSheafExpr(text), f); }

}  // namespace purisheaf::sheaf
