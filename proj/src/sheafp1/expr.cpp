#include "purisheaf/sheafp1/expr.hpp"

#include <cctype>
#include <climits>
#include <map>

#include "purisheaf/error.hpp"

namespace purisheaf::sheaf {

void TextCursor::skipSpace() {
  while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
}

bool TextCursor::atEnd() {
  skipSpace();
  return pos_ >= s_.size();
}

char TextCursor::peek() {
  skipSpace();
  return pos_ < s_.size() ? s_[pos_] : '\0';
}

bool TextCursor::eat(std::string_view tok) {
  skipSpace();
  if (s_.substr(pos_, tok.size()) != tok) return false;
  pos_ += tok.size();
  return true;
}

void TextCursor::expect(std::string_view tok) {
  if (!eat(tok)) fail("expected '" + std::string(tok) + "'");
}

long TextCursor::parseInt() {
  skipSpace();
  std::size_t start = pos_;
  bool neg = false;
  if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
    neg = s_[pos_] == '-';
    ++pos_;
    skipSpace();
  }
  if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) failAt("expected integer", start);
  long v = 0;
  while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
    if (v > (INT_MAX - 9) / 10) failAt("integer out of range", start);
    v = v * 10 + (s_[pos_] - '0');
    ++pos_;
  }
  return neg ? -v : v;
}

void TextCursor::fail(const std::string& msg) const { failAt(msg, pos_); }

void TextCursor::failAt(const std::string& msg, std::size_t pos) const {
  throw ParseError(msg + " at offset " + std::to_string(base_ + pos), base_ + pos);
}

// ---------- polynomials ----------

namespace {

bool isDigit(char ch) { return std::isdigit(static_cast<unsigned char>(ch)) != 0; }

mpz_class readDigits(TextCursor& c) {
  c.skipSpace();
  std::string_view s = c.text();
  std::size_t p = c.pos();
  std::string digits;
  while (p + digits.size() < s.size() && isDigit(s[p + digits.size()])) digits += s[p + digits.size()];
  if (digits.empty()) c.fail("expected digits");
  c.advance(digits.size());
  return mpz_class(digits);
}

mpq_class readRational(TextCursor& c) {
  std::size_t at = c.pos();
  mpz_class num = readDigits(c);
  mpz_class den = 1;
  if (c.eat("/")) {
    den = readDigits(c);
    if (den == 0) c.failAt("zero denominator", at);
  }
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace

PolyExpr parsePoly(TextCursor& c) {
  std::map<long, mpq_class> terms;
  bool first = true;
  c.skipSpace();
  std::size_t start = c.pos();
  for (;;) {
    int sign = 1;
    if (c.eat("-")) sign = -1;
    else if (!c.eat("+") && !first) break;
    first = false;
    mpq_class coef = 1;
    bool haveCoef = false;
    if (c.peek() == '(') {
      c.expect("(");
      int inner = c.eat("-") ? -1 : 1;
      coef = inner * readRational(c);
      c.expect(")");
      haveCoef = true;
    } else if (isDigit(c.peek())) {
      coef = readRational(c);
      haveCoef = true;
    }
    long e = 0;
    bool star = haveCoef && c.eat("*");
    if (c.eat("x")) {
      e = 1;
      if (c.eat("^")) {
        e = c.parseInt();
        if (e < 0) c.fail("negative exponent");
      }
    } else if (!haveCoef || star) {
      c.fail("expected polynomial term");
    }
    terms[e] += sign * coef;
  }
  PolyExpr out;
  long top = -1;
  for (auto& [e, q] : terms)
    if (q != 0) top = e;
  if (top < 0) c.failAt("zero polynomial", start);
  out.coeffs.assign(static_cast<std::size_t>(top + 1), mpq_class(0));
  for (auto& [e, q] : terms)
    if (e <= top) out.coeffs[static_cast<std::size_t>(e)] = q;
  return out;
}

std::string PolyExpr::toString() const {
  std::string out;
  bool first = true;
  for (int e = static_cast<int>(coeffs.size()) - 1; e >= 0; --e) {
    mpq_class q = coeffs[static_cast<std::size_t>(e)];
    if (q == 0) continue;
    bool neg = q < 0;
    if (neg) q = -q;
    out += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
    first = false;
    std::string cs = q.get_str();
    if (e == 0) {
      out += cs;
      continue;
    }
    if (q != 1) out += (q.get_den() != 1 ? "(" + cs + ")" : cs) + "*";
    out += "x";
    if (e != 1) out += "^" + std::to_string(e);
  }
  return first ? "0" : out;
}

RingElement PolyExpr::build(Field f) const {
  std::vector<exact::Scalar> c;
  c.reserve(coeffs.size());
  for (const mpq_class& q : coeffs) {
    if (!f.isRational() && mpz_class(q.get_den() % f.characteristic()) == 0)
      throw MathError("sheafp1", "coefficient " + q.get_str() + " is undefined over " + f.name());
    c.push_back(f.fromMpq(q));
  }
  return RingElement::fromCoefficients(f, Ring::PolyU, std::move(c));
}

PointExpr parsePoint(TextCursor& c) {
  PointExpr p;
  if (c.eat("inf")) {
    p.infinity = true;
    return p;
  }
  p.poly = parsePoly(c);
  return p;
}

ClosedPoint buildPoint(const PointExpr& p, Field f) {
  if (p.infinity) return ClosedPoint::infinity(f);
  RingElement q = p.poly.build(f);
  if (q.degree() < 1) throw MathError("sheafp1", "point polynomial must be nonconstant over " + f.name());
  return ClosedPoint::finite(q);
}

PointExpr pointExpr(const ClosedPoint& p) {
  PointExpr out;
  if (p.isInfinity()) {
    out.infinity = true;
    return out;
  }
  TextCursor c(p.toString());
  out.poly = parsePoly(c);
  return out;
}

// ---------- sheaf expressions ----------

namespace {

int checkedInt(TextCursor& c) {
  long v = c.parseInt();
  if (v < -100000 || v > 100000) c.fail("integer out of range");
  return static_cast<int>(v);
}

SheafExpr parseSum(TextCursor& c);

SheafExpr parseAtom(TextCursor& c) {
  SheafExpr e;
  c.skipSpace();
  std::size_t at = c.pos();
  if (c.eat("(")) {
    e = parseSum(c);
    c.expect(")");
    return e;
  }
  if (c.eat("twist")) {
    c.expect("(");
    e.kind = SheafExpr::Kind::Twist;
    e.children.push_back(parseSum(c));
    c.expect(",");
    e.n = checkedInt(c);
    c.expect(")");
    return e;
  }
  if (c.eat("O")) {
    c.expect("(");
    e.kind = SheafExpr::Kind::Line;
    e.n = checkedInt(c);
    c.expect(")");
    return e;
  }
  if (c.eat("T")) {
    c.expect("(");
    e.kind = SheafExpr::Kind::Torsion;
    e.point = parsePoint(c);
    c.expect(",");
    c.skipSpace();
    std::size_t lat = c.pos();
    e.length = checkedInt(c);
    if (e.length < 1) c.failAt("torsion length must be positive", lat);
    c.expect(")");
    return e;
  }
  c.failAt("expected O(n), T(p, m), twist(F, n) or a parenthesized sheaf", at);
}

SheafExpr parseProduct(TextCursor& c) {
  SheafExpr e = parseAtom(c);
  while (c.peek() == '*') {
    c.expect("*");
    SheafExpr t;
    t.kind = SheafExpr::Kind::Tensor;
    t.children.push_back(std::move(e));
    t.children.push_back(parseAtom(c));
    e = std::move(t);
  }
  return e;
}

SheafExpr parseSum(TextCursor& c) {
  SheafExpr e = parseProduct(c);
  if (!c.eat("++")) return e;
  SheafExpr s;
  s.kind = SheafExpr::Kind::Sum;
  s.children.push_back(std::move(e));
  do s.children.push_back(parseProduct(c));
  while (c.eat("++"));
  return s;
}

std::string paren(const SheafExpr& e, bool wrap) {
  std::string s = printSheafExpr(e);
  return wrap ? "(" + s + ")" : s;
}

}  // namespace

SheafExpr parseSheafExpr(TextCursor& c) { return parseSum(c); }

SheafExpr parseSheafExpr(std::string_view text, std::size_t base) {
  TextCursor c(text, base);
  if (c.atEnd()) c.fail("empty sheaf description");
  SheafExpr e = parseSum(c);
  if (!c.atEnd()) c.fail("unexpected trailing input");
  return e;
}

std::string printSheafExpr(const SheafExpr& e) {
  using K = SheafExpr::Kind;
  switch (e.kind) {
    case K::Line:
      return "O(" + std::to_string(e.n) + ")";
    case K::Torsion:
      return "T(" + e.point.toString() + ", " + std::to_string(e.length) + ")";
    case K::Twist:
      return "twist(" + printSheafExpr(e.children[0]) + ", " + std::to_string(e.n) + ")";
    case K::Tensor:
      return paren(e.children[0], e.children[0].kind == K::Sum) + " * " +
             paren(e.children[1], e.children[1].kind == K::Sum || e.children[1].kind == K::Tensor);
    case K::Sum: {
      std::string out;
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        if (i) out += " ++ ";
        out += paren(e.children[i], e.children[i].kind == K::Sum);
      }
      return out;
    }
  }
  return {};
}

CoherentSheaf buildSheaf(const SheafExpr& e, Field f) {
  using K = SheafExpr::Kind;
  switch (e.kind) {
    case K::Line:
      return lineBundle(f, static_cast<int>(e.n));
    case K::Torsion:
      return torsionSheaf(buildPoint(e.point, f), static_cast<int>(e.length));
    case K::Twist:
      return twist(buildSheaf(e.children[0], f), static_cast<int>(e.n));
    case K::Tensor:
      return tensorSheaf(buildSheaf(e.children[0], f), buildSheaf(e.children[1], f));
    case K::Sum: {
      std::vector<CoherentSheaf> parts;
      for (const SheafExpr& c : e.children) parts.push_back(buildSheaf(c, f));
      return directSum(parts, f);
    }
  }
  return CoherentSheaf::zero(f);
}

}  // namespace purisheaf::sheaf
