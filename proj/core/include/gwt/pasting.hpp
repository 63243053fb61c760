#pragma once

#include <array>
#include <compare>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "gwt/globe.hpp"

namespace gwt {

/// Reference to a cell of a realization, by canonical numbering.
struct CellRef {
  int component = 1; // 1 or 2
  int dim = 0;
  int id = 0;

  auto operator<=>(const CellRef&) const = default;
};

/// A finite pair of globular sets. Cells of dimension d >= 1 carry source
/// and target ids one dimension below, satisfying the globular identities.
class BiGlobularSet {
public:
  struct Cell {
    int src = -1;
    int tgt = -1;
    auto operator<=>(const Cell&) const = default;
  };

  int count(int component) const;
  int count(int component, int dim) const;
  int maxDim(int component) const;
  int totalCells() const;
  bool hasCell(const CellRef& c) const;
  CellRef src(const CellRef& c) const;
  CellRef tgt(const CellRef& c) const;
  std::vector<CellRef> allCells() const;

  /// Appends one cell; used by the builders. Returns its id.
  int addCell(int component, int dim, int src, int tgt);

  bool operator==(const BiGlobularSet&) const = default;

  /// Checks s(s(x)) = s(t(x)) and t(t(x)) = t(s(x)) for all cells of dim >= 2.
  bool globularIdentitiesHold() const;

  std::string toJson() const;
  std::string toDot() const;

private:
  std::array<std::vector<std::vector<Cell>>, 2> comps_;
};

/// The m-disc in the given component: 2m+1 cells, one top cell.
BiGlobularSet makeDisc(int component, int m);

/// Underlying arity of an atomic object: an m-disc for the four disc chains
/// (component 2 for the Cod chain, component 1 otherwise), a single point
/// for Alpha/Beta/Xi.
BiGlobularSet discOf(const GlobeContext& ctx, const GlobeObject& o);

/// A validated G_n-tree table. Columns are listed outermost-first: the
/// column list order is the star/composition order, so columns[l]'s source
/// boundary is glued to columns[l+1]'s target boundary.
struct Tree {
  GlobeContext ctx;
  std::vector<GlobeObject> columns;
  std::vector<GlobeObject> glues;

  bool operator==(const Tree& o) const {
    return ctx.n == o.ctx.n && columns == o.columns && glues == o.glues;
  }

  /// "[xi, f^1, f^1; f^0, f^0]"
  std::string table() const;
  /// "xi *^1_0 f^1 *^1_0 f^1"
  std::string str() const;
};

struct ValidateOptions {
  /// The glue condition demands a strict dimension drop; setting this keeps
  /// only the order condition.  Rejected by default.
  bool allowEqualDimGlues = false;
};

/// Errors: GlueNotBelow, ArityMismatch, IllegalFamily.
Tree validateTree(const GlobeContext& ctx, std::vector<GlobeObject> columns,
                  std::vector<GlobeObject> glues, const ValidateOptions& opt = {});

Tree discTree(const GlobeContext& ctx, const GlobeObject& o);

/// Table concatenation [left.columns, g, right.columns]; the realization is
/// the pushout of the two realizations over discOf(g).
Tree glueTrees(const Tree& left, const GlobeObject& g, const Tree& right);

/// Local cell of a column's disc: (dim, which) with which 0 = source-side,
/// 1 = target-side, and the top cell stored as (discDim, 0).
struct LocalCell {
  int dim = 0;
  int which = 0;
  auto operator<=>(const LocalCell&) const = default;
};

struct Realization {
  BiGlobularSet cells;
  /// Per column: canonical cell of each local disc cell.
  std::vector<std::map<LocalCell, CellRef>> columnCells;
  /// Component every cell lives in (trees are single-cluster).
  int component = 1;
  /// Chain position of each 0-cell id, source end = 0, when the 1-skeleton
  /// is a linear chain; empty otherwise.
  std::vector<int> chainPos;
};

/// Realizes the tree as the colimit of its column discs, with the canonical
/// cell numbering (columns scanned in list order, disc cells boundary-first,
/// point-shaped mid columns absorbed into their neighbours).
std::shared_ptr<const Realization> realize(const Tree& t);

/// True iff the canonically numbered realizations coincide.
bool realizationEqual(const Tree& a, const Tree& b);

/// All valid trees with at most maxCols columns and object dimensions at
/// most maxDim, in a fixed deterministic order.
std::vector<Tree> enumerateTrees(const GlobeContext& ctx, int maxCols, int maxDim);

/// Deterministic cell names used by the surface language:
/// dim 0: x,y,z,x3,..; dim 1: a,b,c,a3,..; dim 2: m,n,m2,..; dim d>=3: c<d>_<i>.
std::string cellName(const CellRef& c);

/// Inverse lookup against a realization; returns false if unknown.
bool cellByName(const Realization& r, const std::string& name, CellRef& out);

} // namespace gwt
