#include "gwt/coherator.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace gwt {

namespace {

const char* famToken(Family f) { return f == Family::Cod ? "two" : "one"; }

uint64_t fnv1a64(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hexId(uint64_t h) {
  static const char* digits = "0123456789abcdef";
  std::string out = "c";
  for (int i = 15; i >= 0; --i) out.push_back(digits[(h >> (4 * i)) & 0xf]);
  return out;
}

} // namespace

std::string realizationKey(const Tree& t) {
  auto r = realize(t);
  std::ostringstream os;
  for (int comp = 1; comp <= 2; ++comp) {
    os << "C" << comp << "[";
    for (int d = 0; d <= r->cells.maxDim(comp); ++d) {
      os << "d" << d << ":";
      for (int i = 0; i < r->cells.count(comp, d); ++i) {
        CellRef c{comp, d, i};
        if (d == 0) os << ".";
        else os << r->cells.src(c).id << "-" << r->cells.tgt(c).id << ".";
      }
      os << ";";
    }
    os << "]";
  }
  return os.str();
}

std::string liftKey(const OperationRef& f, const OperationRef& g) {
  std::ostringstream os;
  os << "lift[" << famToken(f.family) << f.dim << "|" << realizationKey(f.arrow.cod) << "|"
     << serCanonical(f.top()) << "|" << serCanonical(g.top()) << "]";
  return os.str();
}

bool Registry::isAdmissible(const OperationRef& f, const OperationRef& g) const {
  if (!isParallel(f, g)) return false;
  switch (policy_) {
    case Policy::PairNotBare: return !(isBare(f.arrow) && isBare(g.arrow));
    case Policy::BothNotBare: return !isBare(f.arrow) && !isBare(g.arrow);
    case Policy::AllParallel: return true;
  }
  return false;
}

CohCellPtr Registry::requestLift(const OperationRef& f, const OperationRef& g) {
  if (!isParallel(f, g))
    fail(Errc::NotParallel, "lift requested for a non-parallel pair");
  if (!isAdmissible(f, g))
    fail(Errc::NotAdmissible, "lift requested for a pair rejected by the admissibility policy");
  std::string key = liftKey(f, g);
  std::lock_guard<std::mutex> lock(mu_);
  auto it = cells_.find(key);
  if (it != cells_.end()) return it->second;
  auto cell = std::make_shared<CohCell>();
  cell->key = key;
  cell->id = hexId(fnv1a64(key));
  cell->family = f.family;
  cell->dim = f.dim + 1;
  cell->stage = std::max(stage(f.top()), stage(g.top())) + 1;
  cell->arity = f.arrow.cod;
  cell->f = f;
  cell->g = g;
  cells_.emplace(key, cell);
  return cell;
}

CohCellPtr Registry::byKey(const std::string& key) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = cells_.find(key);
  return it == cells_.end() ? nullptr : it->second;
}

CohCellPtr Registry::byId(const std::string& id) const {
  std::lock_guard<std::mutex> lock(mu_);
  for (const auto& [k, c] : cells_)
    if (c->id == id) return c;
  return nullptr;
}

std::vector<CohCellPtr> Registry::all() const {
  std::lock_guard<std::mutex> lock(mu_);
  std::vector<CohCellPtr> out;
  for (const auto& [k, c] : cells_) out.push_back(c);
  std::sort(out.begin(), out.end(), [](const CohCellPtr& a, const CohCellPtr& b) {
    return a->stage != b->stage ? a->stage < b->stage : a->key < b->key;
  });
  return out;
}

size_t Registry::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return cells_.size();
}

OperationRef liftArrow(const GlobeContext& ctx, const CohCellPtr& cell) {
  auto r = realize(cell->arity);
  std::map<CellRef, Term> ident;
  for (const CellRef& c : r->cells.allCells()) ident.emplace(c, mkGen(ctx, r, c));
  Term top = mkCohApp(cell, std::move(ident), cell->arity);
  return makeOp(ctx, cell->family, cell->dim, cell->arity, top);
}

std::vector<Term> enumerateTerms(const Registry& reg, const Tree& host, int component, int dim,
                                 int maxSize, int maxStage) {
  auto hostR = realize(host);
  GlobeContext ctx = host.ctx;
  std::map<std::tuple<int, int, int>, std::vector<Term>> memo;

  std::function<const std::vector<Term>&(int, int, int)> gen =
      [&](int comp, int d, int budget) -> const std::vector<Term>& {
    auto key = std::make_tuple(comp, d, budget);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    std::vector<Term> out;
    if (budget >= 1) {
      for (int i = 0; i < hostR->cells.count(comp, d); ++i)
        out.push_back(mkGen(ctx, hostR, CellRef{comp, d, i}));
      if (comp == 2 && d <= hostR->cells.maxDim(1) + 0 && budget >= 2) {
        for (const Term& u : gen(1, d, budget - 1)) {
          if (ctx.n >= 1) out.push_back(mkTransport(ctx, TransportSeries::F, u));
          if (ctx.n >= 2) out.push_back(mkTransport(ctx, TransportSeries::G, u));
        }
      }
      if (comp == 2 && budget >= 2) {
        if (ctx.n >= 2 && d == ctx.n - 1)
          for (const Term& x : gen(1, 0, budget - 1)) out.push_back(mkMid(ctx, Family::Xi, d, x));
        if (ctx.n >= 3 && d >= 1 && d <= ctx.n - 2)
          for (const Term& x : gen(1, 0, budget - 1)) {
            out.push_back(mkMid(ctx, Family::Alpha, d, x));
            out.push_back(mkMid(ctx, Family::Beta, d, x));
          }
      }
      if (d >= 1 && budget >= 3) {
        for (int p = 0; p < d; ++p) {
          for (const Term& after : gen(comp, d, budget - 2)) {
            int rem = budget - 1 - termSize(after);
            for (const Term& before : gen(comp, d, rem)) {
              auto sa = boundaryIter(after, p).first;
              auto tb = boundaryIter(before, p).second;
              if (!termEqual(sa, tb)) continue;
              out.push_back(mkComp(ctx, d, p, after, before));
            }
          }
        }
      }
      // coherence-cell applications
      for (const CohCellPtr& cell : reg.all()) {
        if (cell->stage > maxStage || cell->dim != d) continue;
        if ((cell->family == Family::Cod ? 2 : 1) != comp) continue;
        auto arity = realize(cell->arity);
        std::vector<CellRef> tops;
        for (int col = 0; col < (int)arity->columnCells.size(); ++col) {
          CellRef top = arity->columnCells[col].at(LocalCell{discDim(cell->arity.columns[col]), 0});
          if (std::find(tops.begin(), tops.end(), top) == tops.end()) tops.push_back(top);
        }
        std::vector<std::map<CellRef, Term>> partials{{}};
        int budgetLeft = budget - 1;
        for (const CellRef& topCell : tops) {
          std::vector<std::map<CellRef, Term>> next;
          for (const auto& partial : partials) {
            int used = 0;
            for (const auto& [c, img] : partial) used += termSize(img);
            for (const Term& cand : gen(topCell.component, topCell.dim, budgetLeft - used)) {
              auto ext = partial;
              ext.emplace(topCell, cand);
              next.push_back(std::move(ext));
            }
          }
          partials = std::move(next);
        }
        for (auto& partial : partials) {
          try {
            auto full = deriveAssignment(cell->arity, partial);
            out.push_back(mkCohApp(cell, std::move(full), host));
          } catch (const Error&) {
            // boundary-incompatible candidate, skip
          }
        }
      }
    }
    std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) {
      return serCanonical(a) < serCanonical(b);
    });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const Term& a, const Term& b) { return termEqual(a, b); }),
              out.end());
    return memo.emplace(std::move(key), std::move(out)).first->second;
  };

  return gen(component, dim, maxSize);
}

std::vector<AdmissiblePair> enumerateAdmissible(const Registry& reg, const EnumBounds& bounds) {
  std::map<std::string, AdmissiblePair> found;
  for (const Tree& t : enumerateTrees(reg.ctx(), bounds.maxTreeCols, bounds.maxDim)) {
    std::string treeKey = realizationKey(t);
    for (Family fam : {Family::Dom, Family::Cod}) {
      if (fam == Family::Cod && reg.ctx().n < 1) continue;
      for (int m = 1; m <= bounds.maxDim; ++m) {
        int comp = fam == Family::Cod ? 2 : 1;
        std::vector<Term> terms = enumerateTerms(reg, t, comp, m, bounds.maxTermSize, bounds.stage);

        struct Entry {
          OperationRef op;
          int stage = 0;
          bool bare = false;
          std::string topSer;
        };
        // parallel pairs live in a common boundary bucket
        std::map<std::string, std::vector<Entry>> buckets;
        for (const Term& u : terms) {
          Entry e{makeOp(reg.ctx(), fam, m, t, u), stage(u), false, serCanonical(u)};
          e.bare = isBare(e.op.arrow);
          std::string boundary = serCanonical(source(u)) + "|" + serCanonical(target(u));
          buckets[boundary].push_back(std::move(e));
        }
        for (const auto& [boundary, entries] : buckets) {
          for (const Entry& f : entries) {
            for (const Entry& g : entries) {
              if (std::max(f.stage, g.stage) != bounds.stage) continue;
              bool admissible = reg.policy() == Policy::AllParallel ||
                                (reg.policy() == Policy::PairNotBare ? !(f.bare && g.bare)
                                                                     : !f.bare && !g.bare);
              if (!admissible) continue;
              std::string key = "lift[" + std::string(fam == Family::Cod ? "two" : "one") +
                                std::to_string(m) + "|" + treeKey + "|" + f.topSer + "|" + g.topSer + "]";
              found.emplace(key, AdmissiblePair{key, t, f.op, g.op});
            }
          }
        }
      }
    }
  }
  std::vector<AdmissiblePair> out;
  for (auto& [k, p] : found) out.push_back(std::move(p));
  return out;
}

ModelEq equalInDimModels(const Registry& reg, int p, const OperationRef& f, const OperationRef& g) {
  if (f.family == g.family && f.dim == g.dim && f.arrow.cod.ctx.n == g.arrow.cod.ctx.n &&
      realizationEqual(f.arrow.cod, g.arrow.cod) && termEqual(f.top(), g.top()))
    return ModelEq::Equal;
  if (reg.isAdmissible(f, g) && f.dim >= p) return ModelEq::ForcedByLift;
  return ModelEq::Unknown;
}

std::string modelEqName(ModelEq v) {
  switch (v) {
    case ModelEq::Equal: return "Equal";
    case ModelEq::ForcedByLift: return "ForcedByLift";
    case ModelEq::Unknown: return "Unknown";
  }
  return "?";
}

namespace {

using json = nlohmann::ordered_json;

json treeToJson(const Tree& t) {
  json j;
  j["n"] = t.ctx.n;
  j["columns"] = json::array();
  for (const auto& c : t.columns) j["columns"].push_back(toText(c));
  j["glues"] = json::array();
  for (const auto& g : t.glues) j["glues"].push_back(toText(g));
  return j;
}

Tree treeFromJson(const json& j) {
  GlobeContext ctx{j.at("n").get<int>()};
  std::vector<GlobeObject> cols, glues;
  for (const auto& c : j.at("columns")) cols.push_back(objectFromText(ctx, c.get<std::string>()));
  for (const auto& g : j.at("glues")) glues.push_back(objectFromText(ctx, g.get<std::string>()));
  return validateTree(ctx, std::move(cols), std::move(glues));
}

json termToJson(const Term& t) {
  json j;
  switch (t->kind) {
    case TermKind::Gen:
      j["gen"] = {t->cell.component, t->cell.dim, t->cell.id};
      break;
    case TermKind::Comp:
      j["comp"] = {t->dim, t->level};
      j["after"] = termToJson(t->after);
      j["before"] = termToJson(t->before);
      break;
    case TermKind::Transport:
      j[t->series == TransportSeries::F ? "F" : "G"] = termToJson(t->arg);
      break;
    case TermKind::Mid:
      if (t->midFamily == Family::Xi) j["xi"] = termToJson(t->arg);
      else {
        j[t->midFamily == Family::Alpha ? "alpha" : "beta"] = t->level;
        j["arg"] = termToJson(t->arg);
      }
      break;
    case TermKind::CohApp: {
      j["coh"] = t->coh->id;
      json assigns = json::array();
      for (const auto& [c, img] : t->subst)
        assigns.push_back(json::array({json::array({c.component, c.dim, c.id}), termToJson(img)}));
      j["assign"] = assigns;
      break;
    }
  }
  return j;
}

Term termFromJson(const Registry& reg, const Tree& host, const json& j) {
  GlobeContext ctx = host.ctx;
  if (j.contains("gen")) {
    auto a = j.at("gen");
    return mkGen(host, CellRef{a.at(0).get<int>(), a.at(1).get<int>(), a.at(2).get<int>()});
  }
  if (j.contains("comp")) {
    auto mp = j.at("comp");
    return mkComp(ctx, mp.at(0).get<int>(), mp.at(1).get<int>(), termFromJson(reg, host, j.at("after")),
                  termFromJson(reg, host, j.at("before")));
  }
  if (j.contains("F")) return mkTransport(ctx, TransportSeries::F, termFromJson(reg, host, j.at("F")));
  if (j.contains("G")) return mkTransport(ctx, TransportSeries::G, termFromJson(reg, host, j.at("G")));
  if (j.contains("xi")) return mkMid(ctx, Family::Xi, ctx.n - 1, termFromJson(reg, host, j.at("xi")));
  if (j.contains("alpha"))
    return mkMid(ctx, Family::Alpha, j.at("alpha").get<int>(), termFromJson(reg, host, j.at("arg")));
  if (j.contains("beta"))
    return mkMid(ctx, Family::Beta, j.at("beta").get<int>(), termFromJson(reg, host, j.at("arg")));
  if (j.contains("coh")) {
    CohCellPtr cell = reg.byId(j.at("coh").get<std::string>());
    if (!cell) fail(Errc::SemanticError, "registry load references unknown cell " + j.at("coh").get<std::string>());
    std::map<CellRef, Term> assign;
    for (const auto& entry : j.at("assign")) {
      auto c = entry.at(0);
      assign.emplace(CellRef{c.at(0).get<int>(), c.at(1).get<int>(), c.at(2).get<int>()},
                     termFromJson(reg, host, entry.at(1)));
    }
    return mkCohApp(cell, std::move(assign), host);
  }
  fail(Errc::SyntaxError, "bad term json: " + j.dump());
}

json opToJson(const OperationRef& op) {
  json j;
  j["family"] = famToken(op.family);
  j["dim"] = op.dim;
  j["cod"] = treeToJson(op.arrow.cod);
  j["top"] = termToJson(op.top());
  return j;
}

OperationRef opFromJson(const Registry& reg, const json& j) {
  Tree cod = treeFromJson(j.at("cod"));
  Family fam = j.at("family").get<std::string>() == "two" ? Family::Cod : Family::Dom;
  Term top = termFromJson(reg, cod, j.at("top"));
  return makeOp(reg.ctx(), fam, j.at("dim").get<int>(), cod, top);
}

} // namespace

std::string dumpRegistryJson(const Registry& reg) {
  json out = json::array();
  for (const CohCellPtr& c : reg.all()) {
    json j;
    j["id"] = c->id;
    j["family"] = famToken(c->family);
    j["dim"] = c->dim;
    j["stage"] = c->stage;
    j["arity"] = treeToJson(c->arity);
    j["pair"] = json{{"f", opToJson(c->f)}, {"g", opToJson(c->g)}};
    out.push_back(j);
  }
  return out.dump(2) + "\n";
}

void loadRegistryJson(Registry& reg, const std::string& text) {
  json in = json::parse(text);
  std::vector<json> cells(in.begin(), in.end());
  std::stable_sort(cells.begin(), cells.end(),
                   [](const json& a, const json& b) { return a.at("stage") < b.at("stage"); });
  for (const json& j : cells) {
    OperationRef f = opFromJson(reg, j.at("pair").at("f"));
    OperationRef g = opFromJson(reg, j.at("pair").at("g"));
    CohCellPtr cell = reg.requestLift(f, g);
    if (cell->id != j.at("id").get<std::string>())
      fail(Errc::SemanticError, "registry load produced a different canonical id for " +
                                    j.at("id").get<std::string>());
  }
}

} // namespace gwt
