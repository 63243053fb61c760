#include "gwt/pasting.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace gwt {

int BiGlobularSet::count(int component) const {
  int total = 0;
  for (const auto& d : comps_[component - 1]) total += (int)d.size();
  return total;
}

int BiGlobularSet::count(int component, int dim) const {
  const auto& c = comps_[component - 1];
  if (dim < 0 || dim >= (int)c.size()) return 0;
  return (int)c[dim].size();
}

int BiGlobularSet::maxDim(int component) const { return (int)comps_[component - 1].size() - 1; }

int BiGlobularSet::totalCells() const { return count(1) + count(2); }

bool BiGlobularSet::hasCell(const CellRef& c) const {
  return (c.component == 1 || c.component == 2) && c.dim >= 0 && c.id >= 0 &&
         c.id < count(c.component, c.dim);
}

CellRef BiGlobularSet::src(const CellRef& c) const {
  if (!hasCell(c) || c.dim == 0) fail(Errc::ZeroDim, "source of a 0-cell");
  return CellRef{c.component, c.dim - 1, comps_[c.component - 1][c.dim][c.id].src};
}

CellRef BiGlobularSet::tgt(const CellRef& c) const {
  if (!hasCell(c) || c.dim == 0) fail(Errc::ZeroDim, "target of a 0-cell");
  return CellRef{c.component, c.dim - 1, comps_[c.component - 1][c.dim][c.id].tgt};
}

std::vector<CellRef> BiGlobularSet::allCells() const {
  std::vector<CellRef> out;
  for (int comp = 1; comp <= 2; ++comp)
    for (int d = 0; d <= maxDim(comp); ++d)
      for (int i = 0; i < count(comp, d); ++i) out.push_back(CellRef{comp, d, i});
  return out;
}

int BiGlobularSet::addCell(int component, int dim, int src, int tgt) {
  auto& c = comps_[component - 1];
  if ((int)c.size() <= dim) c.resize(dim + 1);
  c[dim].push_back(Cell{src, tgt});
  return (int)c[dim].size() - 1;
}

bool BiGlobularSet::globularIdentitiesHold() const {
  for (int comp = 1; comp <= 2; ++comp) {
    for (int d = 2; d <= maxDim(comp); ++d) {
      for (int i = 0; i < count(comp, d); ++i) {
        CellRef c{comp, d, i};
        if (src(src(c)) != src(tgt(c))) return false;
        if (tgt(tgt(c)) != tgt(src(c))) return false;
      }
    }
  }
  return true;
}

std::string BiGlobularSet::toJson() const {
  std::ostringstream os;
  os << "{\"components\":2,\"cells\":[";
  bool first = true;
  for (int comp = 1; comp <= 2; ++comp) {
    for (int d = 0; d <= maxDim(comp); ++d) {
      for (int i = 0; i < count(comp, d); ++i) {
        const Cell& c = comps_[comp - 1][d][i];
        if (!first) os << ",";
        first = false;
        os << "{\"component\":" << comp << ",\"dim\":" << d << ",\"id\":" << i;
        if (d >= 1) os << ",\"src\":" << c.src << ",\"tgt\":" << c.tgt;
        os << "}";
      }
    }
  }
  os << "]}";
  return os.str();
}

std::string BiGlobularSet::toDot() const {
  std::ostringstream os;
  os << "digraph realization {\n";
  for (int comp = 1; comp <= 2; ++comp) {
    if (count(comp) == 0) continue;
    os << "  subgraph cluster_" << comp << " {\n    label=\"component " << comp << "\";\n";
    for (int d = 0; d <= maxDim(comp); ++d)
      for (int i = 0; i < count(comp, d); ++i)
        os << "    \"c" << comp << "_" << d << "_" << i << "\" [label=\"" << cellName(CellRef{comp, d, i})
           << " (d" << d << ")\"];\n";
    os << "  }\n";
  }
  for (int comp = 1; comp <= 2; ++comp) {
    for (int d = 1; d <= maxDim(comp); ++d) {
      for (int i = 0; i < count(comp, d); ++i) {
        const Cell& c = comps_[comp - 1][d][i];
        os << "  \"c" << comp << "_" << d << "_" << i << "\" -> \"c" << comp << "_" << d - 1 << "_"
           << c.src << "\" [label=\"s\"];\n";
        os << "  \"c" << comp << "_" << d << "_" << i << "\" -> \"c" << comp << "_" << d - 1 << "_"
           << c.tgt << "\" [label=\"t\"];\n";
      }
    }
  }
  os << "}\n";
  return os.str();
}

BiGlobularSet makeDisc(int component, int m) {
  BiGlobularSet b;
  for (int d = 0; d < m; ++d) {
    b.addCell(component, d, d ? 0 : -1, d ? 1 : -1);
    b.addCell(component, d, d ? 0 : -1, d ? 1 : -1);
  }
  b.addCell(component, m, m ? 0 : -1, m ? 1 : -1);
  return b;
}

BiGlobularSet discOf(const GlobeContext& ctx, const GlobeObject& o) {
  if (!legalObject(ctx, o)) fail(Errc::IllegalFamily, toText(o) + " not legal in G_" + std::to_string(ctx.n));
  return makeDisc(clusterComponent(o), discDim(o));
}

std::string Tree::table() const {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < columns.size(); ++i) os << (i ? ", " : "") << toText(columns[i]);
  if (!glues.empty()) {
    os << "; ";
    for (size_t i = 0; i < glues.size(); ++i) os << (i ? ", " : "") << toText(glues[i]);
  }
  os << "]";
  return os.str();
}

std::string Tree::str() const {
  std::ostringstream os;
  for (size_t i = 0; i < columns.size(); ++i) {
    if (i) {
      int sup = std::max(columns[i - 1].dim, columns[i].dim);
      os << " *^" << sup << "_" << glues[i - 1].dim << " ";
    }
    os << toText(columns[i]);
  }
  return os.str();
}

Tree validateTree(const GlobeContext& ctx, std::vector<GlobeObject> columns,
                  std::vector<GlobeObject> glues, const ValidateOptions& opt) {
  if (columns.empty()) fail(Errc::ArityMismatch, "a tree needs at least one column");
  if (glues.size() + 1 != columns.size())
    fail(Errc::ArityMismatch, "tree with " + std::to_string(columns.size()) + " columns needs " +
                                  std::to_string(columns.size() - 1) + " glues, got " +
                                  std::to_string(glues.size()));
  for (const auto& c : columns)
    if (!legalObject(ctx, c)) fail(Errc::IllegalFamily, toText(c) + " not legal in G_" + std::to_string(ctx.n));
  for (size_t l = 0; l < glues.size(); ++l) {
    const GlobeObject& g = glues[l];
    if (!legalObject(ctx, g)) fail(Errc::IllegalFamily, toText(g) + " not legal in G_" + std::to_string(ctx.n));
    if (!leq(ctx, g, columns[l]) || !leq(ctx, g, columns[l + 1]))
      fail(Errc::GlueNotBelow, "glue " + toText(g) + " is not below " + toText(columns[l]) + " and " +
                                   toText(columns[l + 1]));
    if (!opt.allowEqualDimGlues && (g.dim >= columns[l].dim || g.dim >= columns[l + 1].dim))
      fail(Errc::GlueNotBelow, "glue " + toText(g) + " must have strictly smaller dimension than its neighbours");
  }
  return Tree{ctx, std::move(columns), std::move(glues)};
}

Tree discTree(const GlobeContext& ctx, const GlobeObject& o) {
  return validateTree(ctx, {o}, {});
}

Tree glueTrees(const Tree& left, const GlobeObject& g, const Tree& right) {
  if (left.ctx.n != right.ctx.n) fail(Errc::TreeMismatch, "gluing trees over different contexts");
  std::vector<GlobeObject> cols = left.columns;
  cols.insert(cols.end(), right.columns.begin(), right.columns.end());
  std::vector<GlobeObject> glues = left.glues;
  glues.push_back(g);
  glues.insert(glues.end(), right.glues.begin(), right.glues.end());
  return validateTree(left.ctx, std::move(cols), std::move(glues));
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

std::vector<LocalCell> discCells(int m) {
  std::vector<LocalCell> out;
  for (int d = 0; d < m; ++d) {
    out.push_back({d, 0});
    out.push_back({d, 1});
  }
  out.push_back({m, 0});
  return out;
}

/// Image of a k-disc cell under the inclusion into an m-disc (k <= m) on the
/// given side (0 = source-side, 1 = target-side).
LocalCell includeInto(int k, int m, const LocalCell& c, int side) {
  if (c.dim < k) return c;
  if (k == m) return c; // top to top
  return LocalCell{k, side};
}

int localIndex(const std::vector<int>& offsets, const std::vector<int>& discDims, int col,
               const LocalCell& c) {
  // cells of an m-disc are indexed (0,0),(0,1),(1,0),(1,1),..,(m,0)
  int idx = 2 * c.dim + c.which;
  (void)discDims;
  return offsets[col] + idx;
}

std::shared_ptr<const Realization> buildRealization(const Tree& t) {
  const int k = (int)t.columns.size();
  std::vector<int> dd(k);
  for (int i = 0; i < k; ++i) dd[i] = discDim(t.columns[i]);

  std::vector<int> offsets(k + 1, 0);
  for (int i = 0; i < k; ++i) offsets[i + 1] = offsets[i] + 2 * dd[i] + 1;
  UnionFind uf(offsets[k]);

  // Glue l joins columns[l]'s source boundary to columns[l+1]'s target
  // boundary (column order is the composition order, outermost first).
  for (int l = 0; l < (int)t.glues.size(); ++l) {
    int gd = discDim(t.glues[l]);
    for (const LocalCell& c : discCells(gd)) {
      LocalCell inL = includeInto(gd, dd[l], c, 0);
      LocalCell inR = includeInto(gd, dd[l + 1], c, 1);
      uf.unite(localIndex(offsets, dd, l, inL), localIndex(offsets, dd, l + 1, inR));
    }
  }

  auto r = std::make_shared<Realization>();
  r->component = clusterComponent(t.columns[0]);
  r->columnCells.resize(k);

  std::map<int, CellRef> rootCell;
  std::array<std::map<int, int>, 2> nextId; // per component, per dim

  bool anyPositive = false;
  for (int i = 0; i < k; ++i) anyPositive = anyPositive || dd[i] > 0;

  auto assign = [&](int col, const LocalCell& c) {
    int root = uf.find(localIndex(offsets, dd, col, c));
    auto it = rootCell.find(root);
    if (it != rootCell.end()) return it->second;
    int comp = clusterComponent(t.columns[col]);
    int id = nextId[comp - 1][c.dim]++;
    CellRef ref{comp, c.dim, id};
    rootCell.emplace(root, ref);
    return ref;
  };

  if (!anyPositive) {
    // All columns are points; the glues identify everything into one point.
    assign(0, LocalCell{0, 0});
  } else {
    for (int col = 0; col < k; ++col) {
      if (dd[col] == 0) continue; // absorbed into a neighbour
      for (const LocalCell& c : discCells(dd[col])) assign(col, c);
    }
  }

  // Resolve every local cell (also of skipped point columns).
  for (int col = 0; col < k; ++col) {
    for (const LocalCell& c : discCells(dd[col])) {
      int root = uf.find(localIndex(offsets, dd, col, c));
      auto it = rootCell.find(root);
      if (it == rootCell.end()) fail(Errc::Internal, "unassigned cell class in realization");
      r->columnCells[col][c] = it->second;
    }
  }

  // Materialize cells with src/tgt maps, checking representatives agree.
  std::map<CellRef, BiGlobularSet::Cell> table;
  for (int col = 0; col < k; ++col) {
    for (const LocalCell& c : discCells(dd[col])) {
      CellRef ref = r->columnCells[col].at(c);
      BiGlobularSet::Cell entry;
      if (c.dim >= 1) {
        entry.src = r->columnCells[col].at(LocalCell{c.dim - 1, 0}).id;
        entry.tgt = r->columnCells[col].at(LocalCell{c.dim - 1, 1}).id;
      }
      auto [it, inserted] = table.emplace(ref, entry);
      if (!inserted && it->second != entry) fail(Errc::Internal, "inconsistent boundaries in colimit");
    }
  }
  for (const auto& [ref, entry] : table) {
    int id = r->cells.addCell(ref.component, ref.dim, entry.src, entry.tgt);
    if (id != ref.id) fail(Errc::Internal, "canonical numbering out of order");
  }

  // Chain positions for the strictification fragment and NF display.
  const BiGlobularSet& b = r->cells;
  int comp = r->component;
  int pts = b.count(comp, 0), arrows = b.count(comp, 1);
  if (b.count(comp) == pts + arrows && arrows == pts - 1 && b.count(3 - comp) == 0) {
    std::vector<int> outdeg(pts, -1), indeg(pts, -1);
    bool linear = true;
    for (int i = 0; i < arrows; ++i) {
      CellRef a{comp, 1, i};
      int s = b.src(a).id, tg = b.tgt(a).id;
      if (outdeg[s] != -1 || indeg[tg] != -1) linear = false;
      outdeg[s] = i;
      indeg[tg] = i;
    }
    if (linear) {
      int start = -1;
      for (int p = 0; p < pts; ++p)
        if (indeg[p] == -1) start = start == -1 ? p : -2;
      if (start >= 0) {
        std::vector<int> pos(pts, -1);
        int cur = start, at = 0;
        while (cur != -1 && at < pts && pos[cur] == -1) {
          pos[cur] = at++;
          cur = outdeg[cur] == -1 ? -1 : b.tgt(CellRef{comp, 1, outdeg[cur]}).id;
        }
        if (at == pts) r->chainPos = pos;
      }
    }
  }
  if (pts == 1 && arrows == 0 && b.count(comp) == 1 && b.count(3 - comp) == 0) r->chainPos = {0};

  return r;
}

std::mutex realizeCacheMu;
std::unordered_map<std::string, std::shared_ptr<const Realization>> realizeCache;

} // namespace

std::shared_ptr<const Realization> realize(const Tree& t) {
  std::string key = std::to_string(t.ctx.n) + t.table();
  {
    std::lock_guard<std::mutex> lock(realizeCacheMu);
    auto it = realizeCache.find(key);
    if (it != realizeCache.end()) return it->second;
  }
  auto r = buildRealization(t);
  std::lock_guard<std::mutex> lock(realizeCacheMu);
  return realizeCache.emplace(key, r).first->second;
}

bool realizationEqual(const Tree& a, const Tree& b) {
  if (a.ctx.n != b.ctx.n) fail(Errc::TreeMismatch, "realizationEqual needs a common context");
  return realize(a)->cells == realize(b)->cells;
}

namespace {

int familyRank(Family f) {
  switch (f) {
    case Family::Dom: return 0;
    case Family::Cod: return 1;
    case Family::FSer: return 2;
    case Family::GSer: return 3;
    case Family::Alpha: return 4;
    case Family::Beta: return 5;
    case Family::Xi: return 6;
  }
  return 7;
}

bool objectLess(const GlobeObject& a, const GlobeObject& b) {
  if (familyRank(a.family) != familyRank(b.family)) return familyRank(a.family) < familyRank(b.family);
  return a.dim < b.dim;
}

} // namespace

std::vector<Tree> enumerateTrees(const GlobeContext& ctx, int maxCols, int maxDim) {
  if (maxCols < 1 || maxDim < 0) fail(Errc::ArityMismatch, "enumerateTrees needs maxCols >= 1, maxDim >= 0");
  std::vector<GlobeObject> objs;
  for (Family f : {Family::Dom, Family::Cod, Family::FSer, Family::GSer, Family::Alpha, Family::Beta, Family::Xi})
    for (int d = 0; d <= maxDim; ++d) {
      GlobeObject o{f, d};
      if (legalObject(ctx, o)) objs.push_back(o);
    }
  std::sort(objs.begin(), objs.end(), objectLess);

  std::vector<Tree> out;
  std::vector<GlobeObject> cols, glues;
  auto extend = [&](auto&& self) -> void {
    out.push_back(Tree{ctx, cols, glues});
    if ((int)cols.size() == maxCols) return;
    for (const GlobeObject& g : objs) {
      if (!leq(ctx, g, cols.back()) || g.dim >= cols.back().dim) continue;
      for (const GlobeObject& c : objs) {
        if (!leq(ctx, g, c) || g.dim >= c.dim) continue;
        cols.push_back(c);
        glues.push_back(g);
        self(self);
        cols.pop_back();
        glues.pop_back();
      }
    }
  };
  for (const GlobeObject& c : objs) {
    cols = {c};
    glues = {};
    extend(extend);
  }
  return out;
}

std::string cellName(const CellRef& c) {
  static const char* d0[] = {"x", "y", "z"};
  static const char* d1[] = {"a", "b", "c"};
  static const char* d2[] = {"m", "n"};
  switch (c.dim) {
    case 0: return c.id < 3 ? d0[c.id] : "x" + std::to_string(c.id);
    case 1: return c.id < 3 ? d1[c.id] : "a" + std::to_string(c.id);
    case 2: return c.id < 2 ? d2[c.id] : "m" + std::to_string(c.id);
    default: return "c" + std::to_string(c.dim) + "_" + std::to_string(c.id);
  }
}

bool cellByName(const Realization& r, const std::string& name, CellRef& out) {
  for (const CellRef& c : r.cells.allCells()) {
    if (cellName(c) == name) {
      out = c;
      return true;
    }
  }
  return false;
}

} // namespace gwt
