#include "purisheaf/twopoint/twopoint.hpp"

#include <algorithm>
#include <cstdio>
#include <optional>

#include "purisheaf/error.hpp"

namespace purisheaf::twopoint {

using K = Summand::Kind;

Summand Summand::cyc(int k) {
  if (k < 1) throw MathError("twopoint", "Z/(p^k) needs k >= 1");
  return {K::Cyc, k};
}

Summand Summand::freeFin(int r) {
  if (r < 1) throw MathError("twopoint", "free rank must be at least 1");
  return {K::FreeFin, r};
}

std::string Summand::toString() const {
  switch (kind) {
    case K::Cyc: return "Z_(p)/(p^" + std::to_string(k) + ")";
    case K::PruferZ: return "Z_p^inf";
    case K::RatQ: return "Q";
    case K::Zhat: return "Zhat_(p)";
    case K::Qhat: return "Qhat_(p)";
    case K::FreeFin: return k == 1 ? "Z_(p)" : "Z_(p)^" + std::to_string(k);
  }
  return "?";
}

Species::Species(std::initializer_list<Summand> s) : s_(s) { normalize(); }
Species::Species(std::vector<Summand> s) : s_(std::move(s)) { normalize(); }

void Species::normalize() {
  int rank = 0;
  std::vector<Summand> out;
  for (const Summand& x : s_) {
    if (x.kind == K::FreeFin) rank += x.k;
    else out.push_back(x);
  }
  if (rank > 0) out.push_back(Summand::freeFin(rank));
  std::sort(out.begin(), out.end());
  s_ = std::move(out);
}

bool Species::isQSpace() const {
  return std::all_of(s_.begin(), s_.end(), [](const Summand& x) { return x.kind == K::RatQ || x.kind == K::Qhat; });
}

bool Species::isTorsion() const {
  return std::all_of(s_.begin(), s_.end(), [](const Summand& x) { return x.kind == K::Cyc || x.kind == K::PruferZ; });
}

bool Species::isTorsionFree() const {
  return std::none_of(s_.begin(), s_.end(), [](const Summand& x) { return x.kind == K::Cyc || x.kind == K::PruferZ; });
}

// pure-injective Z_(p)-modules among the species: all but the free ones
bool Species::isPureInjective() const {
  return std::none_of(s_.begin(), s_.end(), [](const Summand& x) { return x.kind == K::FreeFin; });
}

std::string Species::toString() const {
  if (s_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < s_.size(); ++i) out += (i ? " + " : "") + s_[i].toString();
  return out;
}

Species operator+(const Species& a, const Species& b) {
  std::vector<Summand> s = a.s_;
  s.insert(s.end(), b.s_.begin(), b.s_.end());
  return Species(std::move(s));
}

Species tensorWithQ(const Species& s) {
  std::vector<Summand> out;
  for (const Summand& x : s.summands()) {
    switch (x.kind) {
      case K::Cyc:
      case K::PruferZ: break;
      case K::RatQ: out.push_back({K::RatQ, 0}); break;
      case K::Zhat:
      case K::Qhat: out.push_back({K::Qhat, 0}); break;
      case K::FreeFin:
        for (int i = 0; i < x.k; ++i) out.push_back({K::RatQ, 0});
        break;
    }
  }
  return Species(std::move(out));
}

std::string toString(Restriction r) {
  switch (r) {
    case Restriction::ToZero: return "toZero";
    case Restriction::Identity: return "identity";
    case Restriction::Inclusion: return "inclusion";
    case Restriction::LocalizationUnit: return "localizationUnit";
  }
  return "?";
}

namespace {

// multiset inclusion of sorted summand lists
bool isSubSum(const Species& a, const Species& b) {
  return std::includes(b.summands().begin(), b.summands().end(), a.summands().begin(), a.summands().end());
}

}  // namespace

TwoPointSheaf::TwoPointSheaf(Species x, Species y, Restriction res) : x_(std::move(x)), y_(std::move(y)), res_(res) {
  if (!y_.isQSpace()) throw MathError("twopoint", "sections over the open point must form a Q-vector space");
  bool ok = false;
  switch (res_) {
    case Restriction::ToZero: ok = y_.isZero(); break;
    case Restriction::Identity: ok = x_ == y_ && x_.isQSpace(); break;
    case Restriction::Inclusion: ok = x_.isTorsionFree() && isSubSum(tensorWithQ(x_), y_) && !(x_ == y_); break;
    case Restriction::LocalizationUnit: ok = tensorWithQ(x_) == y_; break;
  }
  if (!ok) throw MathError("twopoint", "restriction '" + twopoint::toString(res_) + "' does not fit " + toString());
}

std::string TwoPointSheaf::toString() const { return "(" + x_.toString() + ", " + y_.toString() + ")"; }

bool isQuasicoherent(const TwoPointSheaf& m) {
  // the map must be the localization itself; for Inclusion and Identity that
  // happens exactly when the target is the whole localization
  return tensorWithQ(m.secX()) == m.secY();
}

bool isFlasque(const TwoPointSheaf& m) {
  switch (m.res()) {
    case Restriction::ToZero:
    case Restriction::Identity: return true;
    case Restriction::Inclusion: return false;  // M(X) torsion-free and not a Q-space, or M(Y) strictly larger
    case Restriction::LocalizationUnit: {
      // m |-> m ⊗ 1 is onto iff each summand with nonzero image already is a Q-space
      for (const Summand& s : m.secX().summands())
        if (s.kind == K::Zhat || s.kind == K::FreeFin) return false;
      return true;
    }
  }
  return false;
}

bool restrictionSplits(const TwoPointSheaf& m) {
  switch (m.res()) {
    case Restriction::ToZero:
    case Restriction::Identity: return true;
    case Restriction::Inclusion: return false;
    case Restriction::LocalizationUnit:
      // the Q-space summands of M(X) map identically onto M(Y); that inclusion is the section
      for (const Summand& s : m.secX().summands())
        if (s.kind == K::Zhat || s.kind == K::FreeFin) return false;
      return true;
  }
  return false;
}

bool isGPureInjectiveCandidate(const TwoPointSheaf& m) {
  const bool closedSkyscraper = m.secY().isZero() && m.secX().isPureInjective();
  const bool genericSkyscraper = m.res() == Restriction::Identity && m.secX().isQSpace();
  return closedSkyscraper || genericSkyscraper;
}

std::vector<TableRow> zpTable() {
  const Species prufer{{K::PruferZ, 0}}, q{{K::RatQ, 0}}, zhat{{K::Zhat, 0}}, qhat{{K::Qhat, 0}};
  using R = Restriction;
  std::vector<TableRow> rows = {
      {"Z_p^inf", "0", TwoPointSheaf(prufer, {}, R::ToZero), 1, true, true, true},
      {"Q", "0", TwoPointSheaf(q, {}, R::ToZero), 2, true, true, false},
      {"Q", "Q", TwoPointSheaf(q, q, R::Identity), 1, true, true, true},
      {"Z_(p)/(p^k)", "0", TwoPointSheaf({Summand::cyc(1)}, {}, R::ToZero), 0, false, true, true},
      {"Zhat_(p)", "0", TwoPointSheaf(zhat, {}, R::ToZero), 1, false, true, false},
      {"Zhat_(p)", "Qhat_(p)", TwoPointSheaf(zhat, qhat, R::Inclusion), 0, false, false, true},
      {"0", "Q", TwoPointSheaf({}, q, R::Inclusion), 1, false, false, false},
  };
  for (TableRow& r : rows) {
    r.computedGPureInjective = isGPureInjectiveCandidate(r.sheaf);
    r.computedQuasicoherent = isQuasicoherent(r.sheaf);
    r.flasque = isFlasque(r.sheaf);
    if (r.computedGPureInjective != r.gPureInjective || r.computedQuasicoherent != r.quasicoherent)
      throw MathError("twopoint", "recomputed columns disagree with the table at " + r.sheaf.toString());
    if (r.gPureInjective && !(r.flasque && restrictionSplits(r.sheaf)))
      throw MathError("twopoint", "g-pure-injective row is not flasque: " + r.sheaf.toString());
  }
  for (int k = 1; k <= 6; ++k) {
    TwoPointSheaf c({Summand::cyc(k)}, {}, Restriction::ToZero);
    if (!isGPureInjectiveCandidate(c) || !isQuasicoherent(c))
      throw MathError("twopoint", "Z/(p^k) row fails for k = " + std::to_string(k));
  }
  return rows;
}

std::string formatTable(const std::vector<TableRow>& rows) {
  auto mark = [](bool b) { return b ? "yes" : ""; };
  std::string out;
  char line[160];
  std::snprintf(line, sizeof line, "%-12s %-10s %-8s %-10s %-12s %-9s\n", "N(X)", "N(Y)", "CB rank", "injective",
                "g-pure-inj.", "quasicoh.");
  out += line;
  for (const TableRow& r : rows) {
    std::snprintf(line, sizeof line, "%-12s %-10s %-8d %-10s %-12s %-9s\n", r.xLabel.c_str(), r.yLabel.c_str(), r.cbRank,
                  mark(r.injective), mark(r.computedGPureInjective), mark(r.computedQuasicoherent));
    out += line;
  }
  return out;
}

// ---------- triples ----------

bool inZp(const mpq_class& q, long p) { return mpz_divisible_ui_p(q.get_den().get_mpz_t(), static_cast<unsigned long>(p)) == 0; }

int valuation(const mpq_class& q, long p) {
  if (q == 0) throw MathError("twopoint", "valuation of zero");
  mpz_class num = q.get_num(), den = q.get_den();
  int v = 0;
  const unsigned long up = static_cast<unsigned long>(p);
  while (mpz_divisible_ui_p(num.get_mpz_t(), up)) {
    num /= p;
    ++v;
  }
  while (mpz_divisible_ui_p(den.get_mpz_t(), up)) {
    den /= p;
    --v;
  }
  return v;
}

namespace {

mpq_class power(long p, int e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
  return mpq_class(r);
}

QMatrix zeros(int r, int c) { return QMatrix(static_cast<std::size_t>(r), std::vector<mpq_class>(static_cast<std::size_t>(c), 0)); }

QMatrix mul(const QMatrix& a, const QMatrix& b, int rows, int inner, int cols) {
  QMatrix out = zeros(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < inner; ++k)
      if (a[i][k] != 0)
        for (int j = 0; j < cols; ++j) out[i][j] += a[i][k] * b[k][j];
  return out;
}

void checkShape(const QMatrix& m, int rows, int cols, const char* what) {
  bool ok = static_cast<int>(m.size()) == rows;
  for (const auto& r : m) ok = ok && static_cast<int>(r.size()) == cols;
  if (!ok) throw MathError("twopoint", std::string(what) + " has the wrong shape");
}

// rank over Q by elimination
int rankQ(QMatrix m) {
  int rank = 0;
  const int rows = static_cast<int>(m.size()), cols = rows ? static_cast<int>(m[0].size()) : 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int piv = -1;
    for (int r = rank; r < rows; ++r)
      if (m[r][c] != 0) piv = r;
    if (piv < 0) continue;
    std::swap(m[rank], m[piv]);
    for (int r = 0; r < rows; ++r) {
      if (r == rank || m[r][c] == 0) continue;
      mpq_class f = m[r][c] / m[rank][c];
      for (int j = c; j < cols; ++j) m[r][j] -= f * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

// rank over F_p
int rankFp(std::vector<std::vector<long>> m, long p) {
  auto inv = [p](long a) {
    long r = 1, e = p - 2;
    a %= p;
    while (e) {
      if (e & 1) r = r * a % p;
      a = a * a % p;
      e >>= 1;
    }
    return r;
  };
  int rank = 0;
  const int rows = static_cast<int>(m.size()), cols = rows ? static_cast<int>(m[0].size()) : 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int piv = -1;
    for (int r = rank; r < rows; ++r)
      if (m[r][c] % p != 0) piv = r;
    if (piv < 0) continue;
    std::swap(m[rank], m[piv]);
    long f0 = inv(m[rank][c]);
    for (int r = 0; r < rows; ++r) {
      if (r == rank || m[r][c] % p == 0) continue;
      long f = m[r][c] * f0 % p;
      for (int j = c; j < cols; ++j) m[r][j] = ((m[r][j] - f * m[rank][j]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

long residue(const mpq_class& q, long p) {
  mpz_class n = q.get_num() % p, d = q.get_den() % p;
  if (n < 0) n += p;
  // d invertible mod p
  mpz_class dinv;
  mpz_invert(dinv.get_mpz_t(), d.get_mpz_t(), mpz_class(p).get_mpz_t());
  mpz_class r = (n * dinv) % p;
  return r.get_si();
}

// Linear system over Z_(p) in z with free rational unknowns q:  Cz·z + Cq·q = d.
// Rational row operations eliminate q; the rest is solved over the valuation ring
// by elimination with a pivot of least valuation.
std::optional<std::vector<mpq_class>> solveMixed(long p, QMatrix cz, QMatrix cq, std::vector<mpq_class> d, int nz, int nq,
                                                 std::vector<mpq_class>* qOut) {
  const int rows = static_cast<int>(d.size());
  // 1. eliminate the rational unknowns
  std::vector<int> qPivotRow(static_cast<std::size_t>(nq), -1);
  int top = 0;
  for (int c = 0; c < nq && top < rows; ++c) {
    int piv = -1;
    for (int r = top; r < rows; ++r)
      if (cq[r][c] != 0) piv = r;
    if (piv < 0) continue;
    std::swap(cq[top], cq[piv]);
    std::swap(cz[top], cz[piv]);
    std::swap(d[top], d[piv]);
    for (int r = 0; r < rows; ++r) {
      if (r == top || cq[r][c] == 0) continue;
      mpq_class f = cq[r][c] / cq[top][c];
      for (int j = 0; j < nq; ++j) cq[r][j] -= f * cq[top][j];
      for (int j = 0; j < nz; ++j) cz[r][j] -= f * cz[top][j];
      d[r] -= f * d[top];
    }
    qPivotRow[static_cast<std::size_t>(c)] = top++;
  }
  // 2. rows top.. constrain z alone; scale nothing, valuations do the work
  QMatrix a(cz.begin() + top, cz.end());
  std::vector<mpq_class> b(d.begin() + top, d.end());
  const int m = static_cast<int>(a.size());
  std::vector<int> colOrder(static_cast<std::size_t>(nz));
  for (int j = 0; j < nz; ++j) colOrder[static_cast<std::size_t>(j)] = j;
  int rank = 0;
  for (; rank < std::min(m, nz); ++rank) {
    int pr = -1, pc = -1, best = 0;
    for (int r = rank; r < m; ++r)
      for (int c = rank; c < nz; ++c) {
        const mpq_class& v = a[r][colOrder[static_cast<std::size_t>(c)]];
        if (v == 0) continue;
        int val = valuation(v, p);
        if (pr < 0 || val < best) {
          pr = r;
          pc = c;
          best = val;
        }
      }
    if (pr < 0) break;
    std::swap(a[rank], a[pr]);
    std::swap(b[rank], b[pr]);
    std::swap(colOrder[static_cast<std::size_t>(rank)], colOrder[static_cast<std::size_t>(pc)]);
    const int col = colOrder[static_cast<std::size_t>(rank)];
    for (int r = rank + 1; r < m; ++r) {
      if (a[r][col] == 0) continue;
      mpq_class f = a[r][col] / a[rank][col];  // in Z_(p) by the pivot choice
      for (int j = 0; j < nz; ++j) a[r][j] -= f * a[rank][j];
      b[r] -= f * b[rank];
    }
  }
  for (int r = rank; r < m; ++r)
    if (b[r] != 0) return std::nullopt;
  // back substitution, the pivot block is upper triangular in the column order
  std::vector<mpq_class> z(static_cast<std::size_t>(nz), 0);
  for (int i = rank - 1; i >= 0; --i) {
    const int col = colOrder[static_cast<std::size_t>(i)];
    mpq_class rhs = b[i];
    for (int j = i + 1; j < rank; ++j) rhs -= a[i][colOrder[static_cast<std::size_t>(j)]] * z[colOrder[static_cast<std::size_t>(j)]];
    z[col] = rhs / a[i][col];
    if (!inZp(z[col], p)) return std::nullopt;
  }
  // 3. the rational unknowns from their pivot rows (free ones zero)
  if (qOut) {
    qOut->assign(static_cast<std::size_t>(nq), 0);
    for (int c = nq - 1; c >= 0; --c) {
      int r = qPivotRow[static_cast<std::size_t>(c)];
      if (r < 0) continue;
      mpq_class rhs = d[r];
      for (int j = 0; j < nz; ++j) rhs -= cz[r][j] * z[j];
      for (int j = c + 1; j < nq; ++j) rhs -= cq[r][j] * (*qOut)[j];
      (*qOut)[c] = rhs / cq[r][c];
    }
  }
  return z;
}

}  // namespace

Triple::Triple(long p_, std::vector<int> e, int dy, QMatrix r) : p(p_), exps(std::move(e)), dimY(dy), res(std::move(r)) {
  if (p < 2 || !mpz_probab_prime_p(mpz_class(p).get_mpz_t(), 25)) throw MathError("twopoint", "p must be prime");
  for (int x : exps)
    if (x < 0) throw MathError("twopoint", "negative torsion exponent");
  checkShape(res, dimY, nX(), "res");
  for (int i = 0; i < dimY; ++i)
    for (int j = 0; j < nX(); ++j)
      if (exps[static_cast<std::size_t>(j)] > 0 && res[i][j] != 0)
        throw MathError("twopoint", "res must vanish on torsion generators");
}

TripleMorphism::TripleMorphism(Triple s, Triple t, QMatrix x, QMatrix y)
    : source(std::move(s)), target(std::move(t)), fX(std::move(x)), fY(std::move(y)) {
  const long p = source.p;
  if (target.p != p) throw MathError("twopoint", "triples over different primes");
  checkShape(fX, target.nX(), source.nX(), "fX");
  checkShape(fY, target.dimY, source.dimY, "fY");
  for (int i = 0; i < target.nX(); ++i)
    for (int j = 0; j < source.nX(); ++j) {
      const mpq_class& v = fX[i][j];
      if (!inZp(v, p)) throw MathError("twopoint", "fX entries must lie in Z_(p)");
      const int ej = source.exps[static_cast<std::size_t>(j)], ei = target.exps[static_cast<std::size_t>(i)];
      // p^ej kills generator j, so it must kill its image
      if (ej > 0 && v != 0 && (ei == 0 || valuation(v, p) + ej < ei))
        throw MathError("twopoint", "fX is not well defined on a torsion generator");
    }
  QMatrix lhs = mul(target.res, fX, target.dimY, target.nX(), source.nX());
  QMatrix rhs = mul(fY, source.res, target.dimY, source.dimY, source.nX());
  for (int i = 0; i < target.dimY; ++i)
    for (int j = 0; j < source.nX(); ++j)
      if (source.exps[static_cast<std::size_t>(j)] == 0 && lhs[i][j] != rhs[i][j])
        throw MathError("twopoint", "not a morphism of triples: res∘fX differs from fY∘res");
}

bool isInjective(const TripleMorphism& f) {
  const long p = f.source.p;
  if (rankQ(f.fY) < f.source.dimY) return false;
  // free part through ⊗ Q
  std::vector<int> freeS, freeT, torS;
  for (int j = 0; j < f.source.nX(); ++j) (f.source.exps[static_cast<std::size_t>(j)] ? torS : freeS).push_back(j);
  for (int i = 0; i < f.target.nX(); ++i)
    if (f.target.exps[static_cast<std::size_t>(i)] == 0) freeT.push_back(i);
  QMatrix fq = zeros(static_cast<int>(freeT.size()), static_cast<int>(freeS.size()));
  for (std::size_t i = 0; i < freeT.size(); ++i)
    for (std::size_t j = 0; j < freeS.size(); ++j) fq[i][j] = f.fX[freeT[i]][freeS[j]];
  if (rankQ(fq) < static_cast<int>(freeS.size())) return false;
  // torsion part through the socle: p^(e_j - 1)·gen_j lands in the p-torsion of the target
  std::vector<std::vector<long>> soc;
  for (int i = 0; i < f.target.nX(); ++i) {
    const int ei = f.target.exps[static_cast<std::size_t>(i)];
    if (ei == 0) continue;
    std::vector<long> row;
    for (int j : torS) {
      const int ej = f.source.exps[static_cast<std::size_t>(j)];
      mpq_class v = f.fX[i][j] * power(p, ej - 1) / power(p, ei - 1);
      row.push_back(v != 0 && inZp(v, p) ? residue(v, p) : 0);
    }
    soc.push_back(row);
  }
  return torS.empty() || rankFp(soc, p) == static_cast<int>(torS.size());
}

TripleVerdict isCPureMonoTriple(const TripleMorphism& f) {
  if (!isInjective(f)) throw MathError("twopoint", "the triple morphism is not injective");
  const long p = f.source.p;
  const int a = f.source.nX(), b = f.target.nX(), ay = f.source.dimY, by = f.target.dimY;
  const auto& ea = f.source.exps;
  const auto& eb = f.target.exps;
  // unknowns over Z_(p): R(i, j) = p^s(i,j)·z (well-definedness), slack t(i, l) for torsion rows of R·fX - I
  std::vector<int> shift(static_cast<std::size_t>(a * b), 0);
  std::vector<bool> forcedZero(static_cast<std::size_t>(a * b), false);
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) {
      const int ki = ea[static_cast<std::size_t>(i)], ej = eb[static_cast<std::size_t>(j)];
      if (ej > 0 && ki == 0) forcedZero[static_cast<std::size_t>(i * b + j)] = true;
      if (ej > 0 && ki > ej) shift[static_cast<std::size_t>(i * b + j)] = ki - ej;
    }
  int nSlack = 0;
  std::vector<int> slackBase(static_cast<std::size_t>(a), -1);
  for (int i = 0; i < a; ++i)
    if (ea[static_cast<std::size_t>(i)] > 0) {
      slackBase[static_cast<std::size_t>(i)] = a * b + nSlack;
      nSlack += a;
    }
  const int nz = a * b + nSlack;
  auto run = [&](bool withY, std::vector<mpq_class>* qOut) {
    const int nq = withY ? ay * by : 0;
    QMatrix cz, cq;
    std::vector<mpq_class> d;
    auto row = [&]() {
      cz.push_back(std::vector<mpq_class>(static_cast<std::size_t>(nz), 0));
      cq.push_back(std::vector<mpq_class>(static_cast<std::size_t>(nq), 0));
      d.push_back(0);
    };
    auto rCoef = [&](int i, int j) { return power(p, shift[static_cast<std::size_t>(i * b + j)]); };
    for (int i = 0; i < a; ++i)
      for (int j = 0; j < b; ++j)
        if (forcedZero[static_cast<std::size_t>(i * b + j)]) {
          row();
          cz.back()[i * b + j] = 1;
        }
    // (R·fX)(i, l) = δ(i, l) + p^k_i t(i, l)
    for (int i = 0; i < a; ++i)
      for (int l = 0; l < a; ++l) {
        row();
        for (int j = 0; j < b; ++j) cz.back()[i * b + j] = rCoef(i, j) * f.fX[j][l];
        if (ea[static_cast<std::size_t>(i)] > 0) cz.back()[slackBase[static_cast<std::size_t>(i)] + l] = -power(p, ea[static_cast<std::size_t>(i)]);
        d.back() = i == l ? 1 : 0;
      }
    if (withY) {
      // rY·fY = I
      for (int i = 0; i < ay; ++i)
        for (int l = 0; l < ay; ++l) {
          row();
          for (int j = 0; j < by; ++j) cq.back()[i * by + j] = f.fY[j][l];
          d.back() = i == l ? 1 : 0;
        }
      // resA·R = rY·resB on the generators of B(X)
      for (int i = 0; i < ay; ++i)
        for (int j = 0; j < b; ++j) {
          row();
          for (int k = 0; k < a; ++k)
            if (f.source.res[i][k] != 0) cz.back()[k * b + j] += f.source.res[i][k] * rCoef(k, j);
          for (int k = 0; k < by; ++k) cq.back()[i * by + k] -= f.target.res[k][j];
        }
    }
    return solveMixed(p, cz, cq, d, nz, nq, qOut);
  };
  TripleVerdict v;
  v.gPure = run(false, nullptr).has_value();
  std::vector<mpq_class> q;
  auto z = run(true, &q);
  v.cPure = z.has_value();
  if (v.cPure) {
    v.retractionX = zeros(a, b);
    for (int i = 0; i < a; ++i)
      for (int j = 0; j < b; ++j) v.retractionX[i][j] = (*z)[i * b + j] * power(p, shift[static_cast<std::size_t>(i * b + j)]);
    v.retractionY = zeros(ay, by);
    for (int i = 0; i < ay; ++i)
      for (int j = 0; j < by; ++j) v.retractionY[i][j] = q[i * by + j];
  }
  return v;
}

TripleMorphism witnessFamily(long p, int n, const mpq_class& c) {
  if (n < 1 || c == 0) throw MathError("twopoint", "witness family needs n >= 1 and c != 0");
  QMatrix id = zeros(n, n), cid = zeros(n, n);
  for (int i = 0; i < n; ++i) {
    id[i][i] = 1;
    cid[i][i] = c;
  }
  Triple a(p, {}, n, zeros(n, 0));
  Triple b(p, std::vector<int>(static_cast<std::size_t>(n), 0), n, id);
  return TripleMorphism(a, b, zeros(n, 0), cid);
}

}  // namespace purisheaf::twopoint
