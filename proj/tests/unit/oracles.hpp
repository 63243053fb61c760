#pragma once

// Test-side oracles, independent of the kernel implementation paths they
// cross-check.

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "gwt/pasting.hpp"

namespace gwt::oracle {

struct Edge {
  GlobeObject from, to;
  HomClass label; // S or T
};

/// Generating arrows of G_n up to object dimension maxDim, straight from the
/// diagram definition (disc chains plus the mid cluster).
inline std::vector<Edge> generatingArrows(const GlobeContext& ctx, int maxDim) {
  std::vector<Edge> edges;
  auto chain = [&](Family f) {
    for (int d = 0; d < maxDim; ++d) {
      GlobeObject a{f, d}, b{f, d + 1};
      if (legalObject(ctx, a) && legalObject(ctx, b)) {
        edges.push_back({a, b, HomClass::S});
        edges.push_back({a, b, HomClass::T});
      }
    }
  };
  chain(Family::Dom);
  chain(Family::Cod);
  chain(Family::FSer);
  chain(Family::GSer);
  if (ctx.n >= 2) {
    auto midAt = [&](int k) {
      std::vector<GlobeObject> out;
      if (k == 0) {
        out.push_back(GlobeObject{Family::FSer, 0});
        out.push_back(GlobeObject{Family::GSer, 0});
      } else if (k == ctx.n - 1) {
        out.push_back(GlobeObject{Family::Xi, ctx.n - 1});
      } else {
        out.push_back(GlobeObject{Family::Alpha, k});
        out.push_back(GlobeObject{Family::Beta, k});
      }
      return out;
    };
    auto sideOf = [](const GlobeObject& o) {
      return (o.family == Family::GSer || o.family == Family::Beta) ? HomClass::T : HomClass::S;
    };
    for (int k = 0; k < ctx.n - 1; ++k) {
      if (k + 1 > maxDim) break;
      for (const GlobeObject& lo : midAt(k))
        for (const GlobeObject& hi : midAt(k + 1))
          if (legalObject(ctx, lo) && legalObject(ctx, hi)) edges.push_back({lo, hi, sideOf(lo)});
    }
  }
  return edges;
}

inline std::vector<GlobeObject> allObjects(const GlobeContext& ctx, int maxDim) {
  std::vector<GlobeObject> out;
  for (Family f : {Family::Dom, Family::Cod, Family::FSer, Family::GSer, Family::Alpha, Family::Beta, Family::Xi})
    for (int d = 0; d <= maxDim; ++d) {
      GlobeObject o{f, d};
      if (legalObject(ctx, o)) out.push_back(o);
    }
  return out;
}

/// Brute-force reachability over the generating-arrow graph.
inline bool reach(const GlobeContext& ctx, int maxDim, const GlobeObject& a, const GlobeObject& b) {
  if (a == b) return true;
  auto edges = generatingArrows(ctx, maxDim);
  std::set<GlobeObject> seen{a};
  bool grew = true;
  while (grew) {
    grew = false;
    for (const Edge& e : edges) {
      if (seen.count(e.from) && !seen.count(e.to)) {
        seen.insert(e.to);
        grew = true;
      }
    }
  }
  return seen.count(b) > 0;
}

/// Classes of composites a -> b: the label of the first (lowest) step of any
/// path, per the globular equations.
inline std::set<HomClass> homOracle(const GlobeContext& ctx, int maxDim, const GlobeObject& a,
                                    const GlobeObject& b) {
  std::set<HomClass> out;
  if (a == b) {
    out.insert(HomClass::Id);
    return out;
  }
  for (const Edge& e : generatingArrows(ctx, maxDim))
    if (e.from == a && reach(ctx, maxDim, e.to, b)) out.insert(e.label);
  return out;
}

/// Independent colimit computation: explicit disc inclusions, naive repeated
/// merging of equivalence classes until a fixpoint.
struct ColimitOracle {
  struct Local {
    int col, dim, which;
    auto operator<=>(const Local&) const = default;
  };
  std::map<Local, int> classOf;
  std::vector<std::set<Local>> classes;

  explicit ColimitOracle(const Tree& t) {
    std::vector<Local> all;
    for (int col = 0; col < (int)t.columns.size(); ++col) {
      int m = discDim(t.columns[col]);
      for (int d = 0; d <= m; ++d)
        for (int w = 0; w < (d == m ? 1 : 2); ++w) all.push_back({col, d, w});
    }
    for (const Local& l : all) {
      classOf[l] = (int)classes.size();
      classes.push_back({l});
    }
    // inclusion of the glue disc on either side of each junction
    for (int l = 0; l < (int)t.glues.size(); ++l) {
      int gd = discDim(t.glues[l]);
      int dl = discDim(t.columns[l]);
      int dr = discDim(t.columns[l + 1]);
      for (int d = 0; d <= gd; ++d) {
        for (int w = 0; w < (d == gd ? 1 : 2); ++w) {
          // source-side into column l, target-side into column l+1
          Local left{l, d, (d == gd && gd < dl) ? 0 : w};
          Local right{l + 1, d, (d == gd && gd < dr) ? 1 : w};
          merge(left, right);
        }
      }
    }
  }

  void merge(const Local& a, const Local& b) {
    int ca = classOf[a], cb = classOf[b];
    if (ca == cb) return;
    for (const Local& l : classes[cb]) {
      classOf[l] = ca;
      classes[ca].insert(l);
    }
    classes[cb].clear();
  }

  bool same(const Local& a, const Local& b) const { return classOf.at(a) == classOf.at(b); }

  int classCount() const {
    int n = 0;
    for (const auto& c : classes)
      if (!c.empty()) ++n;
    return n;
  }
};

} // namespace gwt::oracle
