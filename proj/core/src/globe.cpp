#include "gwt/globe.hpp"

namespace gwt {

const char* errcName(Errc c) noexcept {
  switch (c) {
    case Errc::IllegalFamily: return "IllegalFamily";
    case Errc::IllegalDim: return "IllegalDim";
    case Errc::GlueNotBelow: return "GlueNotBelow";
    case Errc::ArityMismatch: return "ArityMismatch";
    case Errc::BoundaryMismatch: return "BoundaryMismatch";
    case Errc::BoundaryDisagreement: return "BoundaryDisagreement";
    case Errc::ComponentMismatch: return "ComponentMismatch";
    case Errc::DimMismatch: return "DimMismatch";
    case Errc::TreeMismatch: return "TreeMismatch";
    case Errc::ZeroDim: return "ZeroDim";
    case Errc::NotAdmissible: return "NotAdmissible";
    case Errc::NotParallel: return "NotParallel";
    case Errc::OutsideFragment: return "OutsideFragment";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::SemanticError: return "SemanticError";
    case Errc::Internal: return "Internal";
  }
  return "Unknown";
}

bool legalObject(const GlobeContext& ctx, const GlobeObject& o) noexcept {
  if (o.dim < 0) return false;
  switch (o.family) {
    case Family::Dom: return true;
    case Family::Cod:
    case Family::FSer: return ctx.n >= 1;
    case Family::GSer: return ctx.n >= 2;
    case Family::Xi: return ctx.n >= 2 && o.dim == ctx.n - 1;
    case Family::Alpha:
    case Family::Beta: return ctx.n >= 3 && o.dim >= 1 && o.dim <= ctx.n - 2;
  }
  return false;
}

GlobeObject makeObject(const GlobeContext& ctx, Family family, int dim) {
  GlobeObject o{family, dim};
  if (legalObject(ctx, o)) return o;
  switch (family) {
    case Family::Cod:
    case Family::FSer:
      if (ctx.n < 1) fail(Errc::IllegalFamily, toText(o) + " needs n >= 1, have n = " + std::to_string(ctx.n));
      break;
    case Family::GSer:
      if (ctx.n < 2) fail(Errc::IllegalFamily, toText(o) + " needs n >= 2, have n = " + std::to_string(ctx.n));
      break;
    case Family::Xi:
      if (ctx.n < 2) fail(Errc::IllegalFamily, "xi needs n >= 2, have n = " + std::to_string(ctx.n));
      fail(Errc::IllegalDim, "xi has dimension n-1 = " + std::to_string(ctx.n - 1) + ", not " + std::to_string(dim));
    case Family::Alpha:
    case Family::Beta:
      if (ctx.n < 3) fail(Errc::IllegalFamily, toText(o) + " needs n >= 3, have n = " + std::to_string(ctx.n));
      fail(Errc::IllegalDim, toText(o) + " needs 1 <= k <= n-2 = " + std::to_string(ctx.n - 2));
    default: break;
  }
  fail(Errc::IllegalDim, "illegal dimension " + std::to_string(dim) + " for " + toText(o));
}

GlobeObject xiObject(const GlobeContext& ctx) { return makeObject(ctx, Family::Xi, ctx.n - 1); }

int clusterComponent(const GlobeObject& o) noexcept { return o.family == Family::Cod ? 2 : 1; }

int discDim(const GlobeObject& o) noexcept {
  switch (o.family) {
    case Family::Alpha:
    case Family::Beta:
    case Family::Xi: return 0;
    default: return o.dim;
  }
}

namespace {

bool isMid(Family f) { return f == Family::Alpha || f == Family::Beta || f == Family::Xi; }
bool isDiscChain(Family f) {
  return f == Family::Dom || f == Family::Cod || f == Family::FSer || f == Family::GSer;
}

} // namespace

bool leq(const GlobeContext& ctx, const GlobeObject& a, const GlobeObject& b) {
  if (!legalObject(ctx, a) || !legalObject(ctx, b))
    fail(Errc::IllegalFamily, "leq on objects not legal in G_" + std::to_string(ctx.n));
  if (a == b) return true;
  if (a.family == b.family && isDiscChain(a.family)) return a.dim < b.dim;
  if (isMid(a.family) && isMid(b.family)) return a.dim < b.dim;
  // The mid cluster is entered from below only at f^0 / g^0.
  if ((a.family == Family::FSer || a.family == Family::GSer) && a.dim == 0 && isMid(b.family))
    return true;
  return false;
}

std::set<HomClass> homClasses(const GlobeContext& ctx, const GlobeObject& a, const GlobeObject& b) {
  std::set<HomClass> out;
  if (a == b) {
    out.insert(HomClass::Id);
    return out;
  }
  if (!leq(ctx, a, b)) return out;
  // Every composite collapses to the class of its lowest step.  Out of a
  // disc-chain object both an s- and a t-arrow exist; out of f^0 / alpha_k
  // only s-arrows lead upward into the mid cluster, out of g^0 / beta_k
  // only t-arrows.
  if (isMid(b.family) && !isMid(a.family)) {
    if (a.family == Family::FSer) out.insert(HomClass::S);
    else out.insert(HomClass::T);
    return out;
  }
  if (isMid(a.family)) {
    out.insert(a.family == Family::Beta ? HomClass::T : HomClass::S);
    return out;
  }
  out.insert(HomClass::S);
  out.insert(HomClass::T);
  return out;
}

namespace {

GlobeObject filtMap(int level, const GlobeObject& o, bool targetSide) {
  if (level < 1) fail(Errc::IllegalDim, "filtration map needs target level >= 1");
  GlobeContext lower{level - 1};
  GlobeContext upper{level};
  if (!legalObject(lower, o))
    fail(Errc::IllegalFamily, toText(o) + " is not an object of G_" + std::to_string(level - 1));
  GlobeObject res = o;
  if (level == 1 && o.family == Family::Dom && targetSide) res.family = Family::Cod;
  if (level == 2 && o.family == Family::FSer && targetSide) res.family = Family::GSer;
  if (o.family == Family::Xi) res.family = targetSide ? Family::Beta : Family::Alpha;
  if (!legalObject(upper, res)) fail(Errc::Internal, "filtration image not legal");
  return res;
}

} // namespace

GlobeObject filtMapS(int level, const GlobeObject& o) { return filtMap(level, o, false); }
GlobeObject filtMapT(int level, const GlobeObject& o) { return filtMap(level, o, true); }

std::string toText(const GlobeObject& o) {
  switch (o.family) {
    case Family::Dom: return "1(" + std::to_string(o.dim) + ")";
    case Family::Cod: return "2(" + std::to_string(o.dim) + ")";
    case Family::FSer: return "f^" + std::to_string(o.dim);
    case Family::GSer: return "g^" + std::to_string(o.dim);
    case Family::Alpha: return "alpha_" + std::to_string(o.dim);
    case Family::Beta: return "beta_" + std::to_string(o.dim);
    case Family::Xi: return "xi";
  }
  return "?";
}

GlobeObject objectFromText(const GlobeContext& ctx, const std::string& s) {
  auto num = [&](size_t from, size_t to) {
    if (from >= to) fail(Errc::SyntaxError, "bad object text: " + s);
    return std::stoi(s.substr(from, to - from));
  };
  if (s == "xi") return xiObject(ctx);
  if (s.size() >= 4 && (s[0] == '1' || s[0] == '2') && s[1] == '(' && s.back() == ')')
    return makeObject(ctx, s[0] == '1' ? Family::Dom : Family::Cod, num(2, s.size() - 1));
  if (s.size() >= 3 && (s[0] == 'f' || s[0] == 'g') && s[1] == '^')
    return makeObject(ctx, s[0] == 'f' ? Family::FSer : Family::GSer, num(2, s.size()));
  if (s.rfind("alpha_", 0) == 0) return makeObject(ctx, Family::Alpha, num(6, s.size()));
  if (s.rfind("beta_", 0) == 0) return makeObject(ctx, Family::Beta, num(5, s.size()));
  fail(Errc::SyntaxError, "bad object text: " + s);
}

std::string toTextFull(const GlobeContext& ctx, const GlobeObject& o) {
  switch (o.family) {
    case Family::Dom:
    case Family::Cod: return toText(o);
    case Family::FSer: return "f^" + std::to_string(o.dim) + "(1(" + std::to_string(o.dim) + "))";
    case Family::GSer: return "g^" + std::to_string(o.dim) + "(1(" + std::to_string(o.dim) + "))";
    case Family::Alpha: return "alpha_" + std::to_string(o.dim) + "(1(0))";
    case Family::Beta: return "beta_" + std::to_string(o.dim) + "(1(0))";
    case Family::Xi: return "xi_" + std::to_string(ctx.n - 1) + "(1(0))";
  }
  return "?";
}

} // namespace gwt
