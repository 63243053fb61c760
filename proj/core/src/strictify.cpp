#include "gwt/strictify.hpp"

#include <sstream>

#include "gwt/coherator.hpp"

namespace gwt {

std::string StrictNF::str() const {
  auto sideTag = [](Side s) { return s == Side::FSide ? "F" : s == Side::GSide ? "G" : ""; };
  std::ostringstream os;
  if (dim == 0) {
    if (loSide == Side::Plain) os << "x" << lo;
    else os << sideTag(loSide) << "(x" << lo << ")";
    return os.str();
  }
  std::ostringstream body;
  if (crossing()) body << "[x" << lo << "..x" << hi << ", cross@x" << lo << "]";
  else body << sideTag(loSide) << "[x" << lo << "..x" << hi << "]";
  if (dim == 1) return body.str();
  os << "id(" << body.str() << ")";
  return os.str();
}

FragmentChain fragmentCheck(const Tree& t) {
  if (t.ctx.n != 2) fail(Errc::OutsideFragment, "strictification fragment needs n = 2");
  int midCols = 0;
  for (const auto& c : t.columns)
    if (discDim(c) == 0 && (c.family == Family::Xi || c.family == Family::Alpha || c.family == Family::Beta))
      ++midCols;
  if (midCols > 1) fail(Errc::OutsideFragment, "more than one transformation-cell column");
  auto r = realize(t);
  if (r->chainPos.empty())
    fail(Errc::OutsideFragment, "realization is not a linear chain of 1-cells");
  FragmentChain chain;
  chain.component = r->component;
  chain.points = r->cells.count(r->component, 0);
  chain.posOfCell = r->chainPos;
  if (midCols == 1) {
    for (size_t col = 0; col < t.columns.size(); ++col) {
      const auto& o = t.columns[col];
      if (discDim(o) == 0 && (o.family == Family::Xi || o.family == Family::Alpha || o.family == Family::Beta)) {
        CellRef pt = r->columnCells[col].at(LocalCell{0, 0});
        chain.markPos = r->chainPos[pt.id];
      }
    }
  }
  return chain;
}

namespace {

struct Evaluator {
  const FragmentChain& chain;
  GlobeContext ctx;

  StrictNF evalCell(const CellRef& c, const Realization& r) const {
    StrictNF v;
    if (c.dim == 0) {
      v.dim = 0;
      v.lo = v.hi = chain.posOfCell[c.id];
      return v;
    }
    if (c.dim == 1) {
      v.dim = 1;
      v.lo = chain.posOfCell[r.cells.src(c).id];
      v.hi = chain.posOfCell[r.cells.tgt(c).id];
      return v;
    }
    fail(Errc::OutsideFragment, "chain has no cells above dimension 1");
  }

  StrictNF eval(const Term& t, const std::map<CellRef, StrictNF>* env, const Realization& hostR) const {
    switch (t->kind) {
      case TermKind::Gen: {
        if (env) {
          auto it = env->find(t->cell);
          if (it == env->end()) fail(Errc::Internal, "strict environment misses a cell");
          return it->second;
        }
        return evalCell(t->cell, hostR);
      }
      case TermKind::Comp: {
        if (t->dim > 2) fail(Errc::OutsideFragment, "term dimension exceeds 2");
        StrictNF a = eval(t->after, env, hostR);
        StrictNF b = eval(t->before, env, hostR);
        if (t->dim == 1) {
          // pasting of 1-cells end to end
          if (b.hi != a.lo || b.hiSide != a.loSide)
            fail(Errc::Internal, "strict evaluation hit mismatched 1-cell boundaries");
          StrictNF v;
          v.dim = 1;
          v.lo = b.lo;
          v.loSide = b.loSide;
          v.hi = a.hi;
          v.hiSide = a.hiSide;
          return v;
        }
        // dim 2: both factors are identities; paste their underlying 1-values
        StrictNF v = a;
        if (t->level == 1) {
          if (!(a == b)) fail(Errc::Internal, "strict evaluation hit a non-matching vertical pasting");
          return v;
        }
        if (b.hi != a.lo || b.hiSide != a.loSide)
          fail(Errc::Internal, "strict evaluation hit mismatched horizontal boundaries");
        v.lo = b.lo;
        v.loSide = b.loSide;
        return v;
      }
      case TermKind::Transport: {
        StrictNF u = eval(t->arg, env, hostR);
        Side s = t->series == TransportSeries::F ? Side::FSide : Side::GSide;
        if (u.loSide != Side::Plain || u.hiSide != Side::Plain)
          fail(Errc::OutsideFragment, "transport of a component-2 value");
        u.loSide = u.hiSide = s;
        return u;
      }
      case TermKind::Mid: {
        if (t->midFamily != Family::Xi) fail(Errc::OutsideFragment, "alpha/beta cells are outside the fragment");
        StrictNF x = eval(t->arg, env, hostR);
        StrictNF v;
        v.dim = 1;
        v.lo = v.hi = x.lo;
        v.loSide = Side::FSide;
        v.hiSide = Side::GSide;
        return v;
      }
      case TermKind::CohApp: {
        if (t->dim > 2) fail(Errc::OutsideFragment, "term dimension exceeds 2");
        // evaluate the substitution, then both sides of the defining pair in
        // that environment; strictly they must agree and the cell denotes
        // the identity on that value
        std::map<CellRef, StrictNF> inner;
        for (const auto& [c, img] : t->subst) inner.emplace(c, eval(img, env, hostR));
        StrictNF fv = eval(t->coh->f.top(), &inner, hostR);
        StrictNF gv = eval(t->coh->g.top(), &inner, hostR);
        if (!(fv == gv)) fail(Errc::OutsideFragment, "coherence cell with strictly distinct sides");
        if (t->dim == 2) fv.dim = 2;
        return fv;
      }
    }
    fail(Errc::Internal, "unknown term kind");
  }
};

} // namespace

StrictNF strictNormalize(const Tree& host, const Term& u) {
  FragmentChain chain = fragmentCheck(host);
  if (u->dim > 2) fail(Errc::OutsideFragment, "term dimension exceeds 2");
  Evaluator ev{chain, host.ctx};
  return ev.eval(u, nullptr, *realize(host));
}

bool strictEqual(const Tree& host, const Term& u, const Term& v) {
  return strictNormalize(host, u) == strictNormalize(host, v);
}

bool strictEqual(const Tree& hostU, const Term& u, const Tree& hostV, const Term& v) {
  if (!(hostU == hostV) && !realizationEqual(hostU, hostV))
    fail(Errc::OutsideFragment, "strict comparison across unrelated arities");
  return strictNormalize(hostU, u) == strictNormalize(hostV, v);
}

} // namespace gwt
