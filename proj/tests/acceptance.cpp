// One PASS/FAIL line per acceptance criterion, each with its time limit.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "purisheaf/cli/cli.hpp"
#include "purisheaf/homalg/homalg.hpp"
#include "purisheaf/kronecker/kronecker.hpp"
#include "purisheaf/purity/purity.hpp"
#include "purisheaf/twopoint/twopoint.hpp"
#include "purisheaf/ziegler/ziegler.hpp"
#include "sheaf_support.hpp"

using namespace purisheaf;
using exact::Field;
using exact::Ring;
using sheaf::ClosedPoint;
using sheaf::CoherentSheaf;
using sheaf::SheafLabel;
using sheaf::ShortExactSeq;
using testsupport::P;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

struct Tally {
  int good = 0, total = 0;
  std::string firstBad;
  void check(bool c, const std::string& what) {
    ++total;
    if (c) ++good;
    else if (firstBad.empty()) firstBad = what;
  }
  Outcome outcome(const std::string& unit) const {
    std::string d = std::to_string(good) + "/" + std::to_string(total) + " " + unit;
    if (!firstBad.empty()) d += "; first failure: " + firstBad;
    return {good == total, d};
  }
};

const Field Q = Field::rationals();
const Field F5 = Field::prime(5);

// monomials of degree d in two variables
int monomialCount(int d) {
  int c = 0;
  for (int i = 0; i <= d; ++i) c += 1;
  return c;
}

// Laurent monomials x^i on the overlap that extend to neither chart of O(k):
// regular on U means i >= 0, regular on V means i <= k
int cechH1LineBundle(int k) {
  int c = 0;
  for (int i = k + 1; i < 0; ++i) ++c;
  return c;
}

CoherentSheaf randomSum(Field f, std::mt19937_64& rng, int maxSummands) {
  return testsupport::scramble(testsupport::sheafOf(testsupport::randomLabels(f, rng, maxSummands, 3, 3), f), rng);
}

bool chiAdditive(const ShortExactSeq& s) {
  return homalg::eulerChar(s.b()) == homalg::eulerChar(s.a()) + homalg::eulerChar(s.c());
}

std::string seqName(int a, int b, int c, int d) {
  std::ostringstream o;
  o << "0 -> O(" << a << ") -> O(" << b << ") ++ O(" << c << ") -> O(" << d << ") -> 0";
  return o.str();
}

// ---------- criteria ----------

Outcome zpTable() {
  struct Row {
    const char *x, *y;
    bool gpi, qc;
  };
  const Row expected[] = {{"Z_p^inf", "0", true, true},        {"Q", "0", true, false},
                          {"Q", "Q", true, true},              {"Z_(p)/(p^k)", "0", true, true},
                          {"Zhat_(p)", "0", true, false},      {"Zhat_(p)", "Qhat_(p)", false, true},
                          {"0", "Q", false, false}};
  auto rows = twopoint::zpTable();
  Tally t;
  std::ostringstream out, err;
  t.check(cli::runMain({"zp-table"}, out, err) == 0, "zp-table command");
  t.check(rows.size() == 7, "row count");
  for (std::size_t i = 0; i < std::min<std::size_t>(rows.size(), 7); ++i) {
    const auto& r = rows[i];
    t.check(r.xLabel == expected[i].x && r.yLabel == expected[i].y && r.computedGPureInjective == expected[i].gpi &&
                r.computedQuasicoherent == expected[i].qc,
            "row " + std::to_string(i + 1));
  }
  return t.outcome("rows and command");
}

Outcome exampleSequences() {
  Tally t;
  for (int a = -3; a <= 3; ++a)
    for (int b = a + 1; b <= 3; ++b)
      for (int c = b; c <= 3; ++c) {
        const int d = b + c - a;
        if (d > 3 || d <= c) continue;
        for (Field f : {Q, F5}) {
          ShortExactSeq s = purity::lineBundleSequence(f, a, b, c, d);
          purity::PurityReport r = purity::purityReport(s);
          t.check(r.gPure && !r.cPure && r.criteriaAgreement, seqName(a, b, c, d) + " over " + f.name());
        }
        cli::Report rep = cli::run(cli::parseCommand({"purity", seqName(a, b, c, d)}));
        t.check(rep.record["result"]["gPure"] == true && rep.record["result"]["cPure"] == false,
                "purity command on " + seqName(a, b, c, d));
      }
  return t.outcome("sequences");
}

Outcome homExt() {
  Tally t;
  for (int m = -4; m <= 4; ++m)
    for (int n = -4; n <= 4; ++n) {
      CoherentSheaf om = sheaf::lineBundle(Q, m), on = sheaf::lineBundle(Q, n);
      const int hom = homalg::globalHom(om, on).dimension();
      const int ext = homalg::ext1(om, on, false).dimension;
      const bool ok = hom == std::max(0, n - m + 1) && hom == (n >= m ? monomialCount(n - m) : 0) &&
                      ext == std::max(0, m - n - 1) && ext == cechH1LineBundle(n - m);
      t.check(ok, "O(" + std::to_string(m) + "), O(" + std::to_string(n) + ")");
    }
  std::mt19937_64 rng(301);
  for (int i = 0; i < 50; ++i) {
    Field f = i % 2 ? F5 : Q;
    CoherentSheaf a = randomSum(f, rng, 3), b = randomSum(f, rng, 3);
    t.check(homalg::ext1(a, b, false).dimension == homalg::globalHom(b, sheaf::twist(a, -2)).dimension(),
            "Serre duality on pair " + std::to_string(i));
  }
  return t.outcome("checks (81 line bundle pairs, 50 Serre pairs)");
}

Outcome tilting() {
  Tally t;
  using kronecker::RepLabel;
  for (Field f : {Q, F5}) {
    for (int n = -4; n <= 4; ++n) {
      kronecker::TiltImage ti = kronecker::tilt(sheaf::lineBundle(f, n));
      const std::string name = "O(" + std::to_string(n) + ") over " + f.name();
      if (n >= 0)
        t.check(ti.deg0.d1 == n && ti.deg0.d0 == n + 1 && ti.deg1.isZero(), name);
      else
        t.check(ti.deg1.d1 == -n && ti.deg1.d0 == -n - 1 && ti.deg0.isZero(), name);
    }
    for (const ClosedPoint& pt : testsupport::samplePoints(f))
      for (int m = 1; m <= 3; ++m) {
        kronecker::TiltImage ti = kronecker::tilt(sheaf::torsionSheaf(pt, m));
        const int d = m * pt.degree();
        auto labels = kronecker::decomposeRep(ti.deg0);
        const bool regular = std::all_of(labels.begin(), labels.end(), [](const RepLabel& l) { return l.kind == RepLabel::Kind::Regular; });
        t.check(ti.deg0.d1 == d && ti.deg0.d0 == d && regular && !labels.empty() && ti.deg1.isZero(),
                "T(" + pt.toString() + ", " + std::to_string(m) + ") over " + f.name());
      }
  }
  return t.outcome("tilts");
}

Outcome krullSchmidt() {
  Tally t;
  std::mt19937_64 rng(501);
  for (int i = 0; i < 100; ++i) {
    Field f = i % 2 ? F5 : Q;
    auto labels = testsupport::randomLabels(f, rng, 5, 3, 3);
    CoherentSheaf s = testsupport::scramble(testsupport::sheafOf(labels, f), rng);
    auto direct = sheaf::decomposeSheaf(s);
    auto viaTilt = kronecker::decomposeViaTilt(s);
    t.check(direct == labels && viaTilt == labels, "sheaf " + std::to_string(i));
  }
  return t.outcome("sheaves");
}

Outcome purityAgreement(std::vector<ShortExactSeq>& exact) {
  Tally t;
  int g = 0, c = 0;
  for (Field f : {Q, F5}) {
    std::mt19937_64 rng(f.isRational() ? 601 : 607);
    for (int i = 0; i < 100; ++i) {
      CoherentSheaf a = randomSum(f, rng, 3), cc = randomSum(f, rng, 3);
      const std::uint64_t seed = rng();
      purity::SampledExtension e = purity::randomExtension(a, cc, seed);
      const bool gp = purity::isGPure(e.seq).pure;
      const bool cp = purity::isCPure(e.seq).pure;
      const bool ok = gp == purity::gPureViaTensor(e.seq).pure && gp == purity::gPureViaTorsionHom(e.seq).pure && (!cp || gp);
      t.check(ok, "extension with seed " + std::to_string(seed) + " over " + f.name());
      g += gp;
      c += cp;
      if (exact.size() < 60) exact.push_back(e.seq);
    }
  }
  Outcome o = t.outcome("extensions");
  o.detail += " (" + std::to_string(g) + " g-pure, " + std::to_string(c) + " c-pure)";
  return o;
}

Outcome cohomology(const std::vector<ShortExactSeq>& extensions) {
  Tally t;
  std::mt19937_64 rng(701);
  for (Field f : {Q, F5}) {
    for (int n = -4; n <= 4; ++n) {
      homalg::CechDatum d = homalg::cech(sheaf::lineBundle(f, n));
      t.check(d.h0() == std::max(0, n + 1) && d.h1() == std::max(0, -n - 1), "O(" + std::to_string(n) + ")");
    }
    for (const ClosedPoint& pt : testsupport::samplePoints(f))
      for (int m = 1; m <= 3; ++m) t.check(homalg::cech(sheaf::torsionSheaf(pt, m)).h1() == 0, "T(" + pt.toString() + ")");
  }
  // random members of D: torsion sums
  for (int i = 0; i < 20; ++i) {
    Field f = i % 2 ? F5 : Q;
    std::vector<SheafLabel> ls;
    for (int k = 0; k < 3; ++k) ls.push_back(testsupport::randomLabel(f, rng, 3, 3, 5));
    std::sort(ls.begin(), ls.end());
    CoherentSheaf s = testsupport::scramble(testsupport::sheafOf(ls, f), rng);
    t.check(homalg::isInD(s) && homalg::cech(s).h1() == 0, "D-member " + std::to_string(i));
  }
  for (std::size_t i = 0; i < extensions.size(); ++i) t.check(chiAdditive(extensions[i]), "extension " + std::to_string(i));
  for (int a = -3; a <= 3; ++a)
    for (int b = a + 1; b <= 3; ++b)
      for (int c = b; c <= 3; ++c)
        if (int d = b + c - a; d <= 3 && d > c) t.check(chiAdditive(purity::lineBundleSequence(Q, a, b, c, d)), seqName(a, b, c, d));
  return t.outcome("checks");
}

Outcome dCharacterization() {
  Tally t;
  std::mt19937_64 rng(801);
  int members = 0;
  for (int i = 0; i < 50; ++i) {
    Field f = i % 2 ? F5 : Q;
    // torsion-heavy labels so both sides of the equivalence occur
    std::vector<SheafLabel> ls;
    for (int k = 1 + static_cast<int>(rng() % 3); k > 0; --k) ls.push_back(testsupport::randomLabel(f, rng, 3, 3, 4));
    std::sort(ls.begin(), ls.end());
    CoherentSheaf s = testsupport::scramble(testsupport::sheafOf(ls, f), rng);
    auto labels = sheaf::decomposeSheaf(s);
    const bool noLB = std::none_of(labels.begin(), labels.end(), [](const SheafLabel& l) { return l.kind == SheafLabel::Kind::LB; });
    const bool inD = homalg::isInD(s);
    t.check(inD == noLB && inD == homalg::isInDWindowed(s), "sheaf " + std::to_string(i));
    members += inD;
  }
  Outcome o = t.outcome("sheaves");
  o.detail += " (" + std::to_string(members) + " in D)";
  return o;
}

Outcome topology() {
  using namespace ziegler;
  Tally t;
  PointSetDescription up = parseDescription("LB(>=0)", Q);
  PointSetDescription expected = up;
  expected.allAdic = true;
  expected.generic = true;
  t.check(closure(up) == expected, "closure of LB(>=0)");
  for (const char* bounded : {"LB(<=0)", "LB(<=-3), LB(5)", "LB(2), LB(7)", "LB(<=4)"})
    t.check(closure(parseDescription(bounded, Q)) == parseDescription(bounded, Q), bounded);

  std::vector<ZgPoint> singletons;
  for (int n = -5; n <= 5; ++n) singletons.push_back(ZgPoint::lb(n));
  for (const ClosedPoint& pt : testsupport::samplePoints(Q)) {
    for (int m = 1; m <= 4; ++m) singletons.push_back(ZgPoint::tors(pt, m));
    singletons.push_back(ZgPoint::prufer(pt));
    singletons.push_back(ZgPoint::adic(pt));
  }
  singletons.push_back(ZgPoint::generic());
  for (const ZgPoint& p : singletons) {
    PointSetDescription s = PointSetDescription::of({p});
    t.check(closure(s) == s, "singleton {" + p.toString() + "} is not closed, its closure is " + printDescription(closure(s)));
  }

  std::mt19937_64 rng(901);
  auto pts = testsupport::samplePoints(Q);
  for (int i = 0; i < 100; ++i) {
    PointSetDescription d;
    if (rng() % 3 == 0) d.lbAtMost = static_cast<int>(rng() % 9) - 4;
    if (rng() % 3 == 0) d.lbAtLeast = static_cast<int>(rng() % 9) - 4;
    for (int k = static_cast<int>(rng() % 4); k > 0; --k) d.lbFinite.insert(static_cast<int>(rng() % 13) - 6);
    for (int k = static_cast<int>(rng() % 3); k > 0; --k) d.tors[pts[rng() % pts.size()]].insert(1 + static_cast<int>(rng() % 4));
    if (rng() % 4 == 0) d.torsAllLengths.insert(pts[rng() % pts.size()]);
    if (rng() % 4 == 0) d.prufer.insert(pts[rng() % pts.size()]);
    if (rng() % 4 == 0) d.adic.insert(pts[rng() % pts.size()]);
    if (rng() % 8 == 0) d.allTorsion = true;
    d.generic = rng() % 5 == 0;
    d.canonicalize();
    PointSetDescription c = closure(d);
    t.check(closure(c) == c && c.includes(d), "random description " + printDescription(d));
  }
  return t.outcome("checks");
}

Outcome witness() {
  Tally t;
  for (long p : {2L, 3L, 5L, 7L, 11L})
    for (int n = 1; n <= 3; ++n)
      for (const mpq_class& c : {mpq_class(1), mpq_class(1, 2), mpq_class(5, 3), mpq_class(-2)}) {
        twopoint::TripleVerdict v = twopoint::isCPureMonoTriple(twopoint::witnessFamily(p, n, c));
        t.check(v.gPure && !v.cPure, "p=" + std::to_string(p) + " n=" + std::to_string(n) + " c=" + c.get_str());
      }
  return t.outcome("triple monomorphisms");
}

}  // namespace

int main() {
  std::vector<ShortExactSeq> extensions;
  struct Criterion {
    int id;
    const char* name;
    double limit;
    std::function<Outcome()> body;
  };
  const std::vector<Criterion> criteria = {
      {1, "Zp table reproduction", 1, zpTable},
      {2, "Example sequence", 10, exampleSequences},
      {3, "Hom/Ext closed forms and Serre duality", 30, homExt},
      {4, "Tilting images", 30, tilting},
      {5, "Krull-Schmidt round trip", 120, krullSchmidt},
      {6, "Purity criteria agreement", 120, [&] { return purityAgreement(extensions); }},
      {7, "Cohomology", 30, [&] { return cohomology(extensions); }},
      {8, "D characterization", 60, dCharacterization},
      {9, "Topology", 10, topology},
      {10, "Two-purities-differ witness", 5, witness},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool pass = o.ok && secs < c.limit;
    failed += !pass;
    std::printf("%s criterion %d (%s): %.2fs / %.0fs limit: %s\n", pass ? "PASS" : "FAIL", c.id, c.name, secs, c.limit,
                o.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
