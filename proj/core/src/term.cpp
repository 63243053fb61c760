#include "gwt/term.hpp"

#include <sstream>

#include "gwt/coherator.hpp"

namespace gwt {

namespace {

Term node(TermNode&& n) { return std::make_shared<const TermNode>(std::move(n)); }

} // namespace

Term mkGen(const GlobeContext& ctx, std::shared_ptr<const Realization> host, const CellRef& c) {
  if (!host || !host->cells.hasCell(c))
    fail(Errc::BoundaryMismatch, "generator " + cellName(c) + " is not a cell of the host realization");
  TermNode n;
  n.kind = TermKind::Gen;
  n.n = ctx.n;
  n.dim = c.dim;
  n.component = c.component;
  n.cell = c;
  n.genHost = std::move(host);
  return node(std::move(n));
}

Term mkGen(const Tree& host, const CellRef& c) { return mkGen(host.ctx, realize(host), c); }

Term mkComp(const GlobeContext& ctx, int m, int p, Term after, Term before) {
  if (!after || !before) fail(Errc::Internal, "null factor in comp");
  if (p < 0 || p >= m) fail(Errc::DimMismatch, "comp{" + std::to_string(m) + "," + std::to_string(p) + "}: need 0 <= p < m");
  if (after->dim != m || before->dim != m)
    fail(Errc::DimMismatch, "comp{" + std::to_string(m) + "," + std::to_string(p) + "} on terms of dimension " +
                                std::to_string(after->dim) + " and " + std::to_string(before->dim));
  if (after->component != before->component)
    fail(Errc::ComponentMismatch, "comp factors must live in one component");
  auto [sa, ta] = boundaryIter(after, p);
  auto [sb, tb] = boundaryIter(before, p);
  (void)ta;
  (void)sb;
  if (!termEqual(sa, tb))
    fail(Errc::BoundaryMismatch, "comp{" + std::to_string(m) + "," + std::to_string(p) +
                                     "}: p-source of `after` differs from p-target of `before`: " +
                                     printTerm(sa) + " vs " + printTerm(tb));
  TermNode n;
  n.kind = TermKind::Comp;
  n.n = ctx.n;
  n.dim = m;
  n.component = after->component;
  n.level = p;
  n.after = std::move(after);
  n.before = std::move(before);
  return node(std::move(n));
}

Term mkTransport(const GlobeContext& ctx, TransportSeries s, Term u) {
  if (!u) fail(Errc::Internal, "null transport argument");
  if (s == TransportSeries::F && ctx.n < 1) fail(Errc::IllegalFamily, "F needs n >= 1");
  if (s == TransportSeries::G && ctx.n < 2) fail(Errc::IllegalFamily, "G needs n >= 2");
  if (u->component != 1) fail(Errc::ComponentMismatch, "transport applies to component-1 terms");
  TermNode n;
  n.kind = TermKind::Transport;
  n.n = ctx.n;
  n.dim = u->dim;
  n.component = 2;
  n.series = s;
  n.arg = std::move(u);
  return node(std::move(n));
}

Term mkMid(const GlobeContext& ctx, Family midFamily, int k, Term x) {
  if (!x) fail(Errc::Internal, "null mid-cell argument");
  if (x->component != 1 || x->dim != 0)
    fail(Errc::ComponentMismatch, "mid cells apply to component-1 terms of dimension 0");
  TermNode n;
  n.kind = TermKind::Mid;
  n.n = ctx.n;
  n.component = 2;
  n.midFamily = midFamily;
  n.arg = std::move(x);
  switch (midFamily) {
    case Family::Xi:
      if (ctx.n < 2) fail(Errc::IllegalFamily, "xi needs n >= 2");
      n.dim = ctx.n - 1;
      n.level = ctx.n - 1;
      break;
    case Family::Alpha:
    case Family::Beta:
      if (ctx.n < 3) fail(Errc::IllegalFamily, "alpha/beta need n >= 3");
      if (k < 1 || k > ctx.n - 2) fail(Errc::IllegalDim, "alpha/beta level must satisfy 1 <= k <= n-2");
      n.dim = k;
      n.level = k;
      break;
    default: fail(Errc::IllegalFamily, "mid cell family must be alpha, beta or xi");
  }
  return node(std::move(n));
}

Term mkCohApp(std::shared_ptr<const CohCell> coh, std::map<CellRef, Term> assign, Tree host) {
  if (!coh) fail(Errc::Internal, "null coherence cell");
  auto arity = realize(coh->arity);
  auto hostR = realize(host);
  GlobeContext ctx = host.ctx;
  for (const CellRef& c : arity->cells.allCells()) {
    auto it = assign.find(c);
    if (it == assign.end())
      fail(Errc::BoundaryMismatch, "coherence application misses arity cell " + cellName(c));
    const Term& img = it->second;
    if (img->dim != c.dim) fail(Errc::DimMismatch, "coherence application is not dimension preserving at " + cellName(c));
    if (img->component != c.component)
      fail(Errc::ComponentMismatch, "coherence application is not component preserving at " + cellName(c));
    validateOver(img, *hostR);
  }
  for (const CellRef& c : arity->cells.allCells()) {
    if (c.dim == 0) continue;
    if (!termEqual(assign.at(arity->cells.src(c)), source(assign.at(c))) ||
        !termEqual(assign.at(arity->cells.tgt(c)), target(assign.at(c))))
      fail(Errc::BoundaryMismatch, "coherence application not boundary compatible at " + cellName(c));
  }
  TermNode n;
  n.kind = TermKind::CohApp;
  n.n = ctx.n;
  n.dim = coh->dim;
  n.component = coh->family == Family::Cod ? 2 : 1;
  n.coh = std::move(coh);
  n.subst = std::move(assign);
  n.host = std::move(host);
  return node(std::move(n));
}

Term source(const Term& t) {
  if (!t) fail(Errc::Internal, "null term");
  if (t->dim == 0) fail(Errc::ZeroDim, "source of a 0-dimensional term");
  GlobeContext ctx{t->n};
  switch (t->kind) {
    case TermKind::Gen: return mkGen(ctx, t->genHost, t->genHost->cells.src(t->cell));
    case TermKind::Comp: {
      int m = t->dim, p = t->level;
      if (p == m - 1) return source(t->before);
      return mkComp(ctx, m - 1, p, source(t->after), source(t->before));
    }
    case TermKind::Transport: return mkTransport(ctx, t->series, source(t->arg));
    case TermKind::Mid:
      switch (t->midFamily) {
        case Family::Xi:
          if (t->n == 2) return mkTransport(ctx, TransportSeries::F, t->arg);
          return mkMid(ctx, Family::Alpha, t->n - 2, t->arg);
        default:
          if (t->level == 1) return mkTransport(ctx, TransportSeries::F, t->arg);
          return mkMid(ctx, Family::Alpha, t->level - 1, t->arg);
      }
    case TermKind::CohApp: return substituteRaw(t->subst, t->host, t->coh->f.top());
  }
  fail(Errc::Internal, "unknown term kind");
}

Term target(const Term& t) {
  if (!t) fail(Errc::Internal, "null term");
  if (t->dim == 0) fail(Errc::ZeroDim, "target of a 0-dimensional term");
  GlobeContext ctx{t->n};
  switch (t->kind) {
    case TermKind::Gen: return mkGen(ctx, t->genHost, t->genHost->cells.tgt(t->cell));
    case TermKind::Comp: {
      int m = t->dim, p = t->level;
      if (p == m - 1) return target(t->after);
      return mkComp(ctx, m - 1, p, target(t->after), target(t->before));
    }
    case TermKind::Transport: return mkTransport(ctx, t->series, target(t->arg));
    case TermKind::Mid:
      switch (t->midFamily) {
        case Family::Xi:
          if (t->n == 2) return mkTransport(ctx, TransportSeries::G, t->arg);
          return mkMid(ctx, Family::Beta, t->n - 2, t->arg);
        default:
          if (t->level == 1) return mkTransport(ctx, TransportSeries::G, t->arg);
          return mkMid(ctx, Family::Beta, t->level - 1, t->arg);
      }
    case TermKind::CohApp: return substituteRaw(t->subst, t->host, t->coh->g.top());
  }
  fail(Errc::Internal, "unknown term kind");
}

std::pair<Term, Term> boundaryIter(const Term& t, int q) {
  if (q < 0 || q >= t->dim) fail(Errc::ZeroDim, "boundaryIter needs 0 <= q < dim");
  Term s = t, tg = t;
  for (int d = t->dim; d > q; --d) {
    s = source(s);
    tg = target(tg);
  }
  return {s, tg};
}

Term substituteRaw(const std::map<CellRef, Term>& assign, const Tree& cod, const Term& u) {
  GlobeContext ctx{u->n};
  switch (u->kind) {
    case TermKind::Gen: {
      auto it = assign.find(u->cell);
      if (it == assign.end()) fail(Errc::BoundaryMismatch, "substitution misses cell " + cellName(u->cell));
      return it->second;
    }
    case TermKind::Comp:
      return mkComp(ctx, u->dim, u->level, substituteRaw(assign, cod, u->after),
                    substituteRaw(assign, cod, u->before));
    case TermKind::Transport: return mkTransport(ctx, u->series, substituteRaw(assign, cod, u->arg));
    case TermKind::Mid: return mkMid(ctx, u->midFamily, u->level, substituteRaw(assign, cod, u->arg));
    case TermKind::CohApp: {
      std::map<CellRef, Term> composed;
      for (const auto& [c, img] : u->subst) composed.emplace(c, substituteRaw(assign, cod, img));
      return mkCohApp(u->coh, std::move(composed), cod);
    }
  }
  fail(Errc::Internal, "unknown term kind");
}

bool termEqual(const Term& u, const Term& v) {
  if (u == v) return true;
  if (!u || !v) return false;
  return serCanonical(u) == serCanonical(v);
}

int stage(const Term& t) {
  if (t->stageCache >= 0) return t->stageCache;
  int s = 0;
  switch (t->kind) {
    case TermKind::Gen: s = 0; break;
    case TermKind::Comp: s = std::max(stage(t->after), stage(t->before)); break;
    case TermKind::Transport:
    case TermKind::Mid: s = stage(t->arg); break;
    case TermKind::CohApp: {
      s = t->coh->stage;
      for (const auto& [c, img] : t->subst) s = std::max(s, stage(img));
      break;
    }
  }
  t->stageCache = s;
  return s;
}

int termSize(const Term& t) {
  switch (t->kind) {
    case TermKind::Gen: return 1;
    case TermKind::Comp: return 1 + termSize(t->after) + termSize(t->before);
    case TermKind::Transport:
    case TermKind::Mid: return 1 + termSize(t->arg);
    case TermKind::CohApp: {
      int s = 1;
      auto arity = realize(t->coh->arity);
      // count only column-top images; derived boundary images are implied
      for (int col = 0; col < (int)arity->columnCells.size(); ++col) {
        const auto& cc = arity->columnCells[col];
        CellRef top = cc.at(LocalCell{discDim(t->coh->arity.columns[col]), 0});
        s += termSize(t->subst.at(top));
      }
      return s;
    }
  }
  return 1;
}

bool isGenTerm(const Term& t) { return t->kind == TermKind::Gen; }

void validateOver(const Term& t, const Realization& r) {
  switch (t->kind) {
    case TermKind::Gen:
      if (!r.cells.hasCell(t->cell))
        fail(Errc::BoundaryMismatch, "generator " + cellName(t->cell) + " is not a cell of the host tree");
      return;
    case TermKind::Comp:
      validateOver(t->after, r);
      validateOver(t->before, r);
      return;
    case TermKind::Transport:
    case TermKind::Mid: validateOver(t->arg, r); return;
    case TermKind::CohApp:
      for (const auto& [c, img] : t->subst) validateOver(img, r);
      return;
  }
}

const std::string& serCanonical(const Term& t) {
  if (!t->serialCache.empty()) return t->serialCache;
  std::ostringstream os;
  switch (t->kind) {
    case TermKind::Gen:
      os << "g(" << t->cell.component << "," << t->cell.dim << "," << t->cell.id << ")";
      break;
    case TermKind::Comp:
      os << "c{" << t->dim << "," << t->level << "}(" << serCanonical(t->after) << ";"
         << serCanonical(t->before) << ")";
      break;
    case TermKind::Transport:
      os << (t->series == TransportSeries::F ? "F(" : "G(") << serCanonical(t->arg) << ")";
      break;
    case TermKind::Mid:
      if (t->midFamily == Family::Xi) os << "X(";
      else if (t->midFamily == Family::Alpha) os << "A{" << t->level << "}(";
      else os << "B{" << t->level << "}(";
      os << serCanonical(t->arg) << ")";
      break;
    case TermKind::CohApp: {
      os << "K[" << t->coh->key << "]{";
      bool first = true;
      for (const auto& [c, img] : t->subst) {
        if (!first) os << ";";
        first = false;
        os << c.component << "," << c.dim << "," << c.id << "=" << serCanonical(img);
      }
      os << "}";
      break;
    }
  }
  t->serialCache = os.str();
  return t->serialCache;
}

std::string printTerm(const Term& t, const CohNameResolver& names) {
  std::ostringstream os;
  switch (t->kind) {
    case TermKind::Gen: os << "gen(" << cellName(t->cell) << ")"; break;
    case TermKind::Comp:
      os << "comp{" << t->dim << "," << t->level << "}(" << printTerm(t->after, names) << ", "
         << printTerm(t->before, names) << ")";
      break;
    case TermKind::Transport:
      os << (t->series == TransportSeries::F ? "F(" : "G(") << printTerm(t->arg, names) << ")";
      break;
    case TermKind::Mid:
      if (t->midFamily == Family::Xi) os << "xi(";
      else if (t->midFamily == Family::Alpha) os << "alpha{" << t->level << "}(";
      else os << "beta{" << t->level << "}(";
      os << printTerm(t->arg, names) << ")";
      break;
    case TermKind::CohApp: {
      os << "coh[" << (names ? names(*t->coh) : t->coh->id) << "]{";
      bool first = true;
      for (const auto& [c, img] : t->subst) {
        if (!first) os << ", ";
        first = false;
        os << cellName(c) << ": " << printTerm(img, names);
      }
      os << "}";
      break;
    }
  }
  return os.str();
}

Term rehostTerm(const Term& t, const Tree& newHost) {
  GlobeContext ctx{t->n};
  switch (t->kind) {
    case TermKind::Gen: return mkGen(ctx, realize(newHost), t->cell);
    case TermKind::Comp:
      return mkComp(ctx, t->dim, t->level, rehostTerm(t->after, newHost), rehostTerm(t->before, newHost));
    case TermKind::Transport: return mkTransport(ctx, t->series, rehostTerm(t->arg, newHost));
    case TermKind::Mid: return mkMid(ctx, t->midFamily, t->level, rehostTerm(t->arg, newHost));
    case TermKind::CohApp: {
      std::map<CellRef, Term> assign;
      for (const auto& [c, img] : t->subst) assign.emplace(c, rehostTerm(img, newHost));
      return mkCohApp(t->coh, std::move(assign), newHost);
    }
  }
  fail(Errc::Internal, "unknown term kind");
}

} // namespace gwt
