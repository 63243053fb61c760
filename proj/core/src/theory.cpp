#include "gwt/theory.hpp"

#include <sstream>

#include "gwt/coherator.hpp"

namespace gwt {

Term Arrow::at(const CellRef& c) const {
  auto it = assign.find(c);
  if (it == assign.end()) fail(Errc::BoundaryMismatch, "arrow assignment misses cell " + cellName(c));
  return it->second;
}

Arrow makeArrow(Tree dom, Tree cod, std::map<CellRef, Term> assign) {
  if (dom.ctx.n != cod.ctx.n) fail(Errc::TreeMismatch, "arrow between trees of distinct contexts");
  auto domR = realize(dom);
  auto codR = realize(cod);
  for (const CellRef& c : domR->cells.allCells()) {
    auto it = assign.find(c);
    if (it == assign.end()) fail(Errc::BoundaryMismatch, "assignment misses cell " + cellName(c));
    const Term& img = it->second;
    if (img->dim != c.dim)
      fail(Errc::DimMismatch, "cell " + cellName(c) + " of dimension " + std::to_string(c.dim) +
                                  " mapped to a term of dimension " + std::to_string(img->dim));
    if (img->component != c.component)
      fail(Errc::ComponentMismatch, "cell " + cellName(c) + " mapped across components");
    validateOver(img, *codR);
  }
  for (const CellRef& c : domR->cells.allCells()) {
    if (c.dim == 0) continue;
    const Term& img = assign.at(c);
    if (!termEqual(assign.at(domR->cells.src(c)), source(img)))
      fail(Errc::BoundaryMismatch, "assignment not source compatible at " + cellName(c));
    if (!termEqual(assign.at(domR->cells.tgt(c)), target(img)))
      fail(Errc::BoundaryMismatch, "assignment not target compatible at " + cellName(c));
  }
  return Arrow{std::move(dom), std::move(cod), std::move(assign)};
}

Arrow identityArrow(const Tree& t) {
  auto r = realize(t);
  std::map<CellRef, Term> assign;
  for (const CellRef& c : r->cells.allCells()) assign.emplace(c, mkGen(t.ctx, r, c));
  return Arrow{t, t, std::move(assign)};
}

Arrow compose(const Arrow& sigma, const Arrow& f) {
  if (!(f.cod == sigma.dom))
    fail(Errc::TreeMismatch, "compose needs cod(f) = dom(sigma) as tables: " + f.cod.table() +
                                 " vs " + sigma.dom.table());
  std::map<CellRef, Term> assign;
  for (const auto& [c, img] : f.assign) assign.emplace(c, substituteRaw(sigma.assign, sigma.cod, img));
  return Arrow{f.dom, sigma.cod, std::move(assign)};
}

Term substitute(const Arrow& sigma, const Term& u) {
  return substituteRaw(sigma.assign, sigma.cod, u);
}

Term OperationRef::top() const {
  return arrow.at(CellRef{family == Family::Cod ? 2 : 1, dim, 0});
}

OperationRef makeOp(const GlobeContext& ctx, Family family, int m, const Tree& cod, const Term& top) {
  if (family != Family::Dom && family != Family::Cod)
    fail(Errc::IllegalFamily, "operations go out of 1(m) or 2(m) discs");
  Tree dom = discTree(ctx, makeObject(ctx, family, m));
  int comp = family == Family::Cod ? 2 : 1;
  if (top->dim != m) fail(Errc::DimMismatch, "operation top term has wrong dimension");
  if (top->component != comp) fail(Errc::ComponentMismatch, "operation top term has wrong component");
  std::map<CellRef, Term> assign;
  assign.emplace(CellRef{comp, m, 0}, top);
  Term s = top, t = top;
  for (int d = m - 1; d >= 0; --d) {
    s = source(s);
    t = target(t);
    assign.emplace(CellRef{comp, d, 0}, s);
    assign.emplace(CellRef{comp, d, 1}, t);
  }
  return OperationRef{family, m, makeArrow(std::move(dom), cod, std::move(assign))};
}

OperationRef compOp(const GlobeContext& ctx, int component, int m, int p) {
  if (component != 1 && component != 2) fail(Errc::ComponentMismatch, "component must be 1 or 2");
  if (p < 0 || p >= m) fail(Errc::IllegalDim, "compOp needs 0 <= p < m");
  Family fam = component == 1 ? Family::Dom : Family::Cod;
  GlobeObject col = makeObject(ctx, fam, m);
  GlobeObject glue = makeObject(ctx, fam, p);
  Tree cod = validateTree(ctx, {col, col}, {glue});
  Term top = mkComp(ctx, m, p, mkGen(cod, CellRef{component, m, 0}), mkGen(cod, CellRef{component, m, 1}));
  return makeOp(ctx, fam, m, cod, top);
}

OperationRef transportOp(const GlobeContext& ctx, TransportSeries s, int m) {
  Family fam = s == TransportSeries::F ? Family::FSer : Family::GSer;
  Tree cod = discTree(ctx, makeObject(ctx, fam, m));
  Term top = mkTransport(ctx, s, mkGen(cod, CellRef{1, m, 0}));
  return makeOp(ctx, Family::Cod, m, cod, top);
}

OperationRef xiOp(const GlobeContext& ctx) {
  Tree cod = discTree(ctx, xiObject(ctx));
  Term top = mkMid(ctx, Family::Xi, ctx.n - 1, mkGen(cod, CellRef{1, 0, 0}));
  return makeOp(ctx, Family::Cod, ctx.n - 1, cod, top);
}

Arrow treeInclusion(const Tree& whole, int startCol, const Tree& block) {
  auto wholeR = realize(whole);
  auto blockR = realize(block);
  std::map<CellRef, Term> assign;
  for (int j = 0; j < (int)block.columns.size(); ++j) {
    for (const auto& [local, blockCell] : blockR->columnCells[j]) {
      CellRef wholeCell = wholeR->columnCells[startCol + j].at(local);
      Term img = mkGen(whole.ctx, wholeR, wholeCell);
      auto [it, inserted] = assign.emplace(blockCell, img);
      if (!inserted && !termEqual(it->second, img))
        fail(Errc::Internal, "block inclusion is not well defined");
    }
  }
  return makeArrow(block, whole, std::move(assign));
}

namespace {

GlobeObject inferGlue(const GlobeContext& ctx, int p, const GlobeObject& left, const GlobeObject& right) {
  std::vector<GlobeObject> candidates;
  for (Family f : {Family::Dom, Family::Cod, Family::FSer, Family::GSer, Family::Alpha, Family::Beta, Family::Xi}) {
    GlobeObject o{f, p};
    if (!legalObject(ctx, o)) continue;
    if (!leq(ctx, o, left) || !leq(ctx, o, right)) continue;
    if (o.dim >= left.dim || o.dim >= right.dim) continue;
    candidates.push_back(o);
  }
  if (candidates.empty())
    fail(Errc::GlueNotBelow, "no level-" + std::to_string(p) + " glue below " + toText(left) + " and " + toText(right));
  if (candidates.size() > 1)
    fail(Errc::GlueNotBelow, "ambiguous level-" + std::to_string(p) + " glue below " + toText(left) + " and " + toText(right));
  return candidates[0];
}

} // namespace

Arrow starArrows(const Arrow& f, int p, const Arrow& g) {
  const GlobeContext& ctx = f.dom.ctx;
  GlobeObject domGlue = inferGlue(ctx, p, f.dom.columns.back(), g.dom.columns.front());
  GlobeObject codGlue = inferGlue(ctx, p, f.cod.columns.back(), g.cod.columns.front());
  Tree dom = glueTrees(f.dom, domGlue, g.dom);
  Tree cod = glueTrees(f.cod, codGlue, g.cod);

  Arrow incFCod = treeInclusion(cod, 0, f.cod);
  Arrow incGCod = treeInclusion(cod, (int)f.cod.columns.size(), g.cod);

  auto domR = realize(dom);
  auto fDomR = realize(f.dom);
  auto gDomR = realize(g.dom);

  // preimages of glued-domain cells under the two block inclusions
  std::map<CellRef, CellRef> fromF, fromG;
  for (int j = 0; j < (int)f.dom.columns.size(); ++j)
    for (const auto& [local, blockCell] : fDomR->columnCells[j])
      fromF.emplace(domR->columnCells[j].at(local), blockCell);
  int off = (int)f.dom.columns.size();
  for (int j = 0; j < (int)g.dom.columns.size(); ++j)
    for (const auto& [local, blockCell] : gDomR->columnCells[j])
      fromG.emplace(domR->columnCells[off + j].at(local), blockCell);

  std::map<CellRef, Term> assign;
  for (const CellRef& c : domR->cells.allCells()) {
    auto itF = fromF.find(c);
    auto itG = fromG.find(c);
    Term viaF, viaG;
    if (itF != fromF.end()) viaF = substitute(incFCod, f.at(itF->second));
    if (itG != fromG.end()) viaG = substitute(incGCod, g.at(itG->second));
    if (viaF && viaG && !termEqual(viaF, viaG))
      fail(Errc::BoundaryDisagreement, "shared boundary assignment disagrees at " + cellName(c) + ": " +
                                           printTerm(viaF) + " vs " + printTerm(viaG));
    if (!viaF && !viaG) fail(Errc::Internal, "glued-domain cell not covered by either block");
    assign.emplace(c, viaF ? viaF : viaG);
  }
  return makeArrow(std::move(dom), std::move(cod), std::move(assign));
}

bool isParallel(const OperationRef& f, const OperationRef& g) {
  if (f.family != g.family || f.dim != g.dim) return false;
  if (f.dim < 1) return false; // the boundary condition needs a disc below
  if (f.arrow.cod.ctx.n != g.arrow.cod.ctx.n) return false;
  if (!realizationEqual(f.arrow.cod, g.arrow.cod)) return false;
  return termEqual(source(f.top()), source(g.top())) && termEqual(target(f.top()), target(g.top()));
}

OperationRef precomposeBoundary(const OperationRef& k, HomClass which) {
  if (k.dim < 1) fail(Errc::ZeroDim, "precomposeBoundary on a 0-operation");
  Term t = which == HomClass::S ? source(k.top()) : target(k.top());
  return makeOp(k.arrow.dom.ctx, k.family, k.dim - 1, k.arrow.cod, t);
}

bool isBare(const Arrow& f) {
  for (const auto& [c, img] : f.assign)
    if (!isGenTerm(img)) return false;
  return true;
}

Arrow coerceArrow(const Arrow& f, const Tree& newCod) {
  if (!realizationEqual(f.cod, newCod))
    fail(Errc::TreeMismatch, "coercion target is not realization-equal: " + f.cod.table() + " vs " + newCod.table());
  std::map<CellRef, Term> assign;
  for (const auto& [c, img] : f.assign) assign.emplace(c, rehostTerm(img, newCod));
  return Arrow{f.dom, newCod, std::move(assign)};
}

OperationRef coerceOp(const OperationRef& f, const Tree& newCod) {
  return OperationRef{f.family, f.dim, coerceArrow(f.arrow, newCod)};
}

std::map<CellRef, Term> deriveAssignment(const Tree& dom, std::map<CellRef, Term> partial) {
  auto r = realize(dom);
  bool progress = true;
  while (progress) {
    progress = false;
    for (const CellRef& c : r->cells.allCells()) {
      if (c.dim == 0) continue;
      auto it = partial.find(c);
      if (it == partial.end()) continue;
      for (bool srcSide : {true, false}) {
        CellRef b = srcSide ? r->cells.src(c) : r->cells.tgt(c);
        Term want = srcSide ? source(it->second) : target(it->second);
        auto bi = partial.find(b);
        if (bi == partial.end()) {
          partial.emplace(b, want);
          progress = true;
        } else if (!termEqual(bi->second, want)) {
          fail(Errc::SemanticError, "conflicting derived assignment at cell " + cellName(b));
        }
      }
    }
  }
  for (const CellRef& c : r->cells.allCells())
    if (!partial.count(c))
      fail(Errc::SemanticError, "assignment underdetermined: no image for cell " + cellName(c) +
                                    " (assign it explicitly)");
  return partial;
}

namespace {

std::string paperTerm(const Term& t, const CohNameResolver& names) {
  switch (t->kind) {
    case TermKind::Gen: return cellName(t->cell);
    case TermKind::Comp:
      return "(" + paperTerm(t->after, names) + " o^" + std::to_string(t->dim) + "_" +
             std::to_string(t->level) + " " + paperTerm(t->before, names) + ")";
    case TermKind::Transport:
      return std::string(t->series == TransportSeries::F ? "F" : "G") + "(" + paperTerm(t->arg, names) + ")";
    case TermKind::Mid:
      if (t->midFamily == Family::Xi) return "xi(" + paperTerm(t->arg, names) + ")";
      return std::string(t->midFamily == Family::Alpha ? "alpha_" : "beta_") + std::to_string(t->level) +
             "(" + paperTerm(t->arg, names) + ")";
    case TermKind::CohApp: {
      std::ostringstream os;
      os << (names ? names(*t->coh) : t->coh->id) << "(";
      bool first = true;
      auto arity = realize(t->coh->arity);
      for (int col = 0; col < (int)arity->columnCells.size(); ++col) {
        CellRef top = arity->columnCells[col].at(LocalCell{discDim(t->coh->arity.columns[col]), 0});
        if (!first) os << ", ";
        first = false;
        os << paperTerm(t->subst.at(top), names);
      }
      os << ")";
      return os.str();
    }
  }
  return "?";
}

} // namespace

std::string printArrow(const Arrow& a, const CohNameResolver& names) {
  std::ostringstream os;
  os << a.dom.str() << " -> " << a.cod.str() << " : ";
  bool first = true;
  auto r = realize(a.dom);
  int topDim = r->cells.maxDim(1) > r->cells.maxDim(2) ? r->cells.maxDim(1) : r->cells.maxDim(2);
  for (const auto& [c, img] : a.assign) {
    if (c.dim != topDim) continue;
    if (!first) os << ", ";
    first = false;
    os << cellName(c) << " |-> " << paperTerm(img, names);
  }
  return os.str();
}

} // namespace gwt
