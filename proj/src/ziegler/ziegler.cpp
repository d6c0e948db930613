#include "purisheaf/ziegler/ziegler.hpp"

#include <algorithm>

#include "purisheaf/error.hpp"
#include "purisheaf/sheafp1/expr.hpp"

namespace purisheaf::ziegler {

ZgPoint ZgPoint::tors(ClosedPoint pt, int m) {
  if (m < 1) throw MathError("ziegler", "torsion length must be at least 1");
  return {Kind::Tors, 0, std::move(pt), m};
}

std::string ZgPoint::toString() const {
  switch (kind) {
    case Kind::LB: return "LB(" + std::to_string(n) + ")";
    case Kind::Tors: return "T(" + pt.toString() + ", " + std::to_string(m) + ")";
    case Kind::Prufer: return "Prufer(" + pt.toString() + ")";
    case Kind::Adic: return "Adic(" + pt.toString() + ")";
    case Kind::Generic: return "Gen";
  }
  return "?";
}

bool operator==(const ZgPoint& a, const ZgPoint& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case ZgPoint::Kind::LB: return a.n == b.n;
    case ZgPoint::Kind::Tors: return a.pt == b.pt && a.m == b.m;
    case ZgPoint::Kind::Prufer:
    case ZgPoint::Kind::Adic: return a.pt == b.pt;
    case ZgPoint::Kind::Generic: return true;
  }
  return false;
}

bool operator<(const ZgPoint& a, const ZgPoint& b) {
  if (a.kind != b.kind) return a.kind < b.kind;
  switch (a.kind) {
    case ZgPoint::Kind::LB: return a.n < b.n;
    case ZgPoint::Kind::Tors:
      if (!(a.pt == b.pt)) return a.pt < b.pt;
      return a.m < b.m;
    case ZgPoint::Kind::Prufer:
    case ZgPoint::Kind::Adic: return a.pt < b.pt;
    case ZgPoint::Kind::Generic: return false;
  }
  return false;
}

// ---------- descriptions ----------

bool PointSetDescription::empty() const {
  return !hasLineBundles() && !allTorsion && tors.empty() && torsAllLengths.empty() && !allPrufer && !allAdic &&
         prufer.empty() && adic.empty() && !generic;
}

bool PointSetDescription::contains(const ZgPoint& p) const {
  switch (p.kind) {
    case ZgPoint::Kind::LB:
      return lbAll() || (lbAtMost && p.n <= *lbAtMost) || (lbAtLeast && p.n >= *lbAtLeast) || lbFinite.count(p.n) > 0;
    case ZgPoint::Kind::Tors: {
      if (allTorsion || torsAllLengths.count(p.pt) > 0) return true;
      auto it = tors.find(p.pt);
      return it != tors.end() && it->second.count(p.m) > 0;
    }
    case ZgPoint::Kind::Prufer: return allPrufer || prufer.count(p.pt) > 0;
    case ZgPoint::Kind::Adic: return allAdic || adic.count(p.pt) > 0;
    case ZgPoint::Kind::Generic: return generic;
  }
  return false;
}

bool PointSetDescription::includes(const PointSetDescription& other) const {
  PointSetDescription a = *this, b = other;
  a.canonicalize();
  b.canonicalize();
  if (!a.lbAll()) {
    if (b.lbAll()) return false;
    if (b.lbAtMost && !(a.lbAtMost && *a.lbAtMost >= *b.lbAtMost)) return false;
    if (b.lbAtLeast && !(a.lbAtLeast && *a.lbAtLeast <= *b.lbAtLeast)) return false;
    for (int n : b.lbFinite)
      if (!a.contains(ZgPoint::lb(n))) return false;
  }
  if (b.allTorsion && !a.allTorsion) return false;
  for (const ClosedPoint& pt : b.torsAllLengths)
    if (!a.allTorsion && a.torsAllLengths.count(pt) == 0) return false;
  for (const auto& [pt, ms] : b.tors)
    for (int m : ms)
      if (!a.contains(ZgPoint::tors(pt, m))) return false;
  if (b.allPrufer && !a.allPrufer) return false;
  if (b.allAdic && !a.allAdic) return false;
  for (const ClosedPoint& pt : b.prufer)
    if (!a.contains(ZgPoint::prufer(pt))) return false;
  for (const ClosedPoint& pt : b.adic)
    if (!a.contains(ZgPoint::adic(pt))) return false;
  return a.generic || !b.generic;
}

void PointSetDescription::canonicalize() {
  // rays first, then the finite values they meet
  if (lbAtMost && lbAtLeast && *lbAtLeast <= *lbAtMost + 1) {
    lbAtMost = 0;
    lbAtLeast = 1;
    lbFinite.clear();
  } else {
    if (lbAtMost)
      while (lbFinite.count(*lbAtMost + 1)) ++*lbAtMost;
    if (lbAtLeast)
      while (lbFinite.count(*lbAtLeast - 1)) --*lbAtLeast;
    std::erase_if(lbFinite, [&](int n) { return (lbAtMost && n <= *lbAtMost) || (lbAtLeast && n >= *lbAtLeast); });
    if (lbAtMost && lbAtLeast && *lbAtLeast <= *lbAtMost + 1) {
      lbAtMost = 0;
      lbAtLeast = 1;
      lbFinite.clear();
    }
  }
  if (allTorsion) {
    tors.clear();
    torsAllLengths.clear();
  }
  std::erase_if(tors, [&](const auto& kv) { return kv.second.empty() || torsAllLengths.count(kv.first) > 0; });
  if (allPrufer) prufer.clear();
  if (allAdic) adic.clear();
}

PointSetDescription PointSetDescription::of(const std::vector<ZgPoint>& pts) {
  PointSetDescription d;
  for (const ZgPoint& p : pts) {
    switch (p.kind) {
      case ZgPoint::Kind::LB: d.lbFinite.insert(p.n); break;
      case ZgPoint::Kind::Tors: d.tors[p.pt].insert(p.m); break;
      case ZgPoint::Kind::Prufer: d.prufer.insert(p.pt); break;
      case ZgPoint::Kind::Adic: d.adic.insert(p.pt); break;
      case ZgPoint::Kind::Generic: d.generic = true; break;
    }
  }
  d.canonicalize();
  return d;
}

PointSetDescription unite(const PointSetDescription& a, const PointSetDescription& b) {
  PointSetDescription u = a;
  auto mergeRay = [](std::optional<int>& into, const std::optional<int>& from, bool upper) {
    if (!from) return;
    into = into ? (upper ? std::max(*into, *from) : std::min(*into, *from)) : *from;
  };
  if (b.lbAll()) {
    u.lbAtMost = 0;
    u.lbAtLeast = 1;
  } else if (!u.lbAll()) {
    mergeRay(u.lbAtMost, b.lbAtMost, true);
    mergeRay(u.lbAtLeast, b.lbAtLeast, false);
    u.lbFinite.insert(b.lbFinite.begin(), b.lbFinite.end());
  }
  u.allTorsion = u.allTorsion || b.allTorsion;
  for (const auto& [pt, ms] : b.tors) u.tors[pt].insert(ms.begin(), ms.end());
  u.torsAllLengths.insert(b.torsAllLengths.begin(), b.torsAllLengths.end());
  u.allPrufer = u.allPrufer || b.allPrufer;
  u.allAdic = u.allAdic || b.allAdic;
  u.prufer.insert(b.prufer.begin(), b.prufer.end());
  u.adic.insert(b.adic.begin(), b.adic.end());
  u.generic = u.generic || b.generic;
  u.canonicalize();
  return u;
}

PointSetDescription closure(const PointSetDescription& s, ClosureTrace& trace) {
  PointSetDescription c = s;
  c.canonicalize();
  trace = {};
  // line bundles: bounded above is closed; unbounded above picks up every adic point and Gen
  if (c.lbAtLeast) {
    trace.lbUnboundedAbove = true;
    c.allAdic = true;
    c.generic = true;
  }
  // finite length points behave as over a Dedekind domain, chart by chart
  if (c.allTorsion) {
    trace.allTorsion = true;
    c.allPrufer = c.allAdic = c.generic = true;
  }
  for (const ClosedPoint& pt : c.torsAllLengths) {
    trace.unboundedTorsion.push_back(pt);
    c.prufer.insert(pt);
    c.adic.insert(pt);
    c.generic = true;
  }
  if (c.allPrufer || c.allAdic || !c.prufer.empty() || !c.adic.empty()) {
    trace.infinitePointsToGeneric = true;
    c.generic = true;
  }
  c.canonicalize();
  return c;
}

PointSetDescription closure(const PointSetDescription& s) {
  ClosureTrace t;
  return closure(s, t);
}

bool isClosed(const PointSetDescription& s) {
  PointSetDescription c = s;
  c.canonicalize();
  return closure(c) == c;
}

PointSetDescription geometricPart() {
  PointSetDescription g;
  g.allTorsion = g.allPrufer = g.allAdic = g.generic = true;
  return g;
}

std::vector<ZgPoint> coherentZgTrace(const CoherentSheaf& f) {
  std::vector<ZgPoint> out;
  for (const auto& l : sheaf::decomposeSheaf(f))
    out.push_back(l.kind == sheaf::SheafLabel::Kind::LB ? ZgPoint::lb(l.n) : ZgPoint::tors(l.pt, l.m));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ZgAttributes attributes(const ZgPoint& p) {
  ZgAttributes a;
  a.isLineBundle = p.kind == ZgPoint::Kind::LB;
  a.gPureInjective = !a.isLineBundle;
  a.closedSingleton = isClosed(PointSetDescription::of({p}));
  switch (p.kind) {
    case ZgPoint::Kind::LB:
      a.isolated = true;
      a.sigmaCPureInjective = true;
      a.source = "topology";
      break;
    case ZgPoint::Kind::Tors:
      // finite length points are isolated in the Dedekind spectrum of either chart
      a.isolated = true;
      a.source = "Dedekind-domain rules";
      break;
    case ZgPoint::Kind::Prufer:
    case ZgPoint::Kind::Adic:
    case ZgPoint::Kind::Generic:
      a.source = p.kind == ZgPoint::Kind::Generic ? "classification" : "Dedekind-domain rules";
      break;
  }
  return a;
}

// ---------- text ----------

namespace {

using sheaf::TextCursor;

ClosedPoint readPoint(TextCursor& c, Field f) { return sheaf::buildPoint(sheaf::parsePoint(c), f); }

int readLength(TextCursor& c) {
  c.skipSpace();
  const std::size_t at = c.pos();
  long m = c.parseInt();
  if (m < 1) c.failAt("torsion length must be at least 1", at);
  return static_cast<int>(m);
}

void parseItem(TextCursor& c, Field f, PointSetDescription& d) {
  if (c.eat("LB(")) {
    if (c.eat("*")) {
      d.lbAtMost = 0;
      d.lbAtLeast = 1;
    } else if (c.eat(">=")) {
      int n = static_cast<int>(c.parseInt());
      d.lbAtLeast = d.lbAtLeast ? std::min(*d.lbAtLeast, n) : n;
    } else if (c.eat("<=")) {
      int n = static_cast<int>(c.parseInt());
      d.lbAtMost = d.lbAtMost ? std::max(*d.lbAtMost, n) : n;
    } else {
      d.lbFinite.insert(static_cast<int>(c.parseInt()));
    }
    c.expect(")");
  } else if (c.eat("T(")) {
    if (c.eat("*")) {
      d.allTorsion = true;
    } else {
      ClosedPoint pt = readPoint(c, f);
      c.expect(",");
      if (c.eat("*")) d.torsAllLengths.insert(pt);
      else d.tors[pt].insert(readLength(c));
    }
    c.expect(")");
  } else if (c.eat("Prufer(")) {
    if (c.eat("*")) d.allPrufer = true;
    else d.prufer.insert(readPoint(c, f));
    c.expect(")");
  } else if (c.eat("Adic(")) {
    if (c.eat("*")) d.allAdic = true;
    else d.adic.insert(readPoint(c, f));
    c.expect(")");
  } else if (c.eat("Gen")) {
    d.generic = true;
  } else {
    c.fail("expected LB(..), T(..), Prufer(..), Adic(..) or Gen");
  }
}

}  // namespace

PointSetDescription parseDescription(std::string_view text, Field f) {
  TextCursor c(text);
  PointSetDescription d;
  const bool braced = c.eat("{");
  bool first = true;
  while (!c.atEnd() && !(braced && c.peek() == '}')) {
    if (!first) c.expect(",");
    parseItem(c, f, d);
    first = false;
  }
  if (braced) c.expect("}");
  if (!c.atEnd()) c.fail("trailing text");
  d.canonicalize();
  return d;
}

ZgPoint parsePoint(std::string_view text, Field f) {
  PointSetDescription d;
  TextCursor c(text);
  parseItem(c, f, d);
  if (!c.atEnd()) c.fail("trailing text");
  if (d.lbFinite.size() == 1) return ZgPoint::lb(*d.lbFinite.begin());
  if (d.tors.size() == 1) return ZgPoint::tors(d.tors.begin()->first, *d.tors.begin()->second.begin());
  if (d.prufer.size() == 1) return ZgPoint::prufer(*d.prufer.begin());
  if (d.adic.size() == 1) return ZgPoint::adic(*d.adic.begin());
  if (d.generic) return ZgPoint::generic();
  throw ParseError("a single point is expected, not a family", 0);
}

std::string printDescription(const PointSetDescription& s) {
  PointSetDescription d = s;
  d.canonicalize();
  std::vector<std::string> items;
  if (d.lbAll()) {
    items.push_back("LB(*)");
  } else {
    if (d.lbAtMost) items.push_back("LB(<=" + std::to_string(*d.lbAtMost) + ")");
    for (int n : d.lbFinite) items.push_back("LB(" + std::to_string(n) + ")");
    if (d.lbAtLeast) items.push_back("LB(>=" + std::to_string(*d.lbAtLeast) + ")");
  }
  if (d.allTorsion) items.push_back("T(*)");
  // points in order, families before single lengths
  std::set<ClosedPoint> pts(d.torsAllLengths);
  for (const auto& kv : d.tors) pts.insert(kv.first);
  for (const ClosedPoint& pt : pts) {
    if (d.torsAllLengths.count(pt)) items.push_back("T(" + pt.toString() + ", *)");
    auto it = d.tors.find(pt);
    if (it != d.tors.end())
      for (int m : it->second) items.push_back(ZgPoint::tors(pt, m).toString());
  }
  if (d.allPrufer) items.push_back("Prufer(*)");
  for (const ClosedPoint& pt : d.prufer) items.push_back(ZgPoint::prufer(pt).toString());
  if (d.allAdic) items.push_back("Adic(*)");
  for (const ClosedPoint& pt : d.adic) items.push_back(ZgPoint::adic(pt).toString());
  if (d.generic) items.push_back("Gen");
  if (items.empty()) return "{}";
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? ", " : "") + items[i];
  return out;
}

}  // namespace purisheaf::ziegler
