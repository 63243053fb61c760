#include "gwt/surface.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "json.hpp"

namespace gwt {

namespace {

struct Token {
  enum class Kind { Ident, Int, Punct, End } kind = Kind::End;
  std::string text;
  int value = 0;
  SourcePos pos;
};

struct Lexer {
  std::string src;
  std::string file;
  size_t at = 0;
  int line = 1, col = 1;

  explicit Lexer(std::string text, std::string filename) : src(std::move(text)), file(std::move(filename)) {}

  void advance(char c) {
    ++at;
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }

  Token next() {
    while (at < src.size()) {
      char c = src[at];
      if (c == '#') {
        while (at < src.size() && src[at] != '\n') advance(src[at]);
        continue;
      }
      if (std::isspace((unsigned char)c)) {
        advance(c);
        continue;
      }
      break;
    }
    Token t;
    t.pos = SourcePos{file, line, col};
    if (at >= src.size()) return t;
    char c = src[at];
    if (std::isalpha((unsigned char)c) || c == '_') {
      std::string id;
      while (at < src.size() && (std::isalnum((unsigned char)src[at]) || src[at] == '_')) {
        id.push_back(src[at]);
        advance(src[at]);
      }
      t.kind = Token::Kind::Ident;
      t.text = id;
      return t;
    }
    if (std::isdigit((unsigned char)c)) {
      std::string num;
      while (at < src.size() && std::isdigit((unsigned char)src[at])) {
        num.push_back(src[at]);
        advance(src[at]);
      }
      t.kind = Token::Kind::Int;
      t.text = num;
      t.value = std::stoi(num);
      return t;
    }
    if (c == '-' && at + 1 < src.size() && src[at + 1] == '>') {
      advance('-');
      advance('>');
      t.kind = Token::Kind::Punct;
      t.text = "->";
      return t;
    }
    advance(c);
    t.kind = Token::Kind::Punct;
    t.text = std::string(1, c);
    return t;
  }
};

struct Parser {
  std::vector<Token> toks;
  size_t at = 0;

  explicit Parser(const std::string& text, const std::string& file) {
    Lexer lex(text, file);
    for (;;) {
      Token t = lex.next();
      bool end = t.kind == Token::Kind::End;
      toks.push_back(std::move(t));
      if (end) break;
    }
  }

  const Token& peek() const { return toks[at]; }
  const Token& get() { return toks[at + 1 < toks.size() ? at++ : at]; }

  [[noreturn]] void err(const std::string& msg, const SourcePos& pos) {
    fail(Errc::SyntaxError, pos.str() + ": " + msg);
  }

  bool accept(const std::string& punct) {
    if (peek().kind == Token::Kind::Punct && peek().text == punct) {
      ++at;
      return true;
    }
    return false;
  }

  void expect(const std::string& punct) {
    if (!accept(punct)) err("expected '" + punct + "', found '" + peek().text + "'", peek().pos);
  }

  bool acceptIdent(const std::string& word) {
    if (peek().kind == Token::Kind::Ident && peek().text == word) {
      ++at;
      return true;
    }
    return false;
  }

  std::string expectIdent() {
    if (peek().kind != Token::Kind::Ident) err("expected identifier, found '" + peek().text + "'", peek().pos);
    return get().text;
  }

  int expectInt() {
    if (peek().kind != Token::Kind::Int) err("expected integer, found '" + peek().text + "'", peek().pos);
    return get().value;
  }

  ObjAst parseObj() {
    ObjAst o;
    o.pos = peek().pos;
    std::string kw = expectIdent();
    static const std::set<std::string> known{"one", "two", "f", "g", "alpha", "beta", "xi"};
    if (!known.count(kw)) err("unknown object keyword '" + kw + "'", o.pos);
    o.keyword = kw;
    if (kw != "xi") {
      expect("(");
      o.dim = expectInt();
      expect(")");
    }
    return o;
  }

  TermAstPtr parseTerm() {
    auto t = std::make_shared<TermAst>();
    t->pos = peek().pos;
    if (accept("@")) {
      t->kind = TermAst::Kind::Splice;
      t->name = expectIdent();
      return t;
    }
    std::string head = expectIdent();
    if (head == "gen") {
      expect("(");
      t->kind = TermAst::Kind::Gen;
      t->name = expectIdent();
      expect(")");
      return t;
    }
    if (head == "comp") {
      expect("{");
      t->m = expectInt();
      expect(",");
      t->p = expectInt();
      expect("}");
      expect("(");
      t->kind = TermAst::Kind::Comp;
      t->a = parseTerm();
      expect(",");
      t->b = parseTerm();
      expect(")");
      return t;
    }
    if (head == "F" || head == "G") {
      expect("(");
      t->kind = TermAst::Kind::Transport;
      t->series = head == "F" ? TransportSeries::F : TransportSeries::G;
      t->a = parseTerm();
      expect(")");
      return t;
    }
    if (head == "xi") {
      expect("(");
      t->kind = TermAst::Kind::Xi;
      t->a = parseTerm();
      expect(")");
      return t;
    }
    if (head == "alpha" || head == "beta") {
      expect("{");
      t->k = expectInt();
      expect("}");
      expect("(");
      t->kind = TermAst::Kind::AlphaBeta;
      t->isAlpha = head == "alpha";
      t->a = parseTerm();
      expect(")");
      return t;
    }
    if (head == "coh") {
      expect("[");
      t->kind = TermAst::Kind::CohApp;
      t->name = expectIdent();
      expect("]");
      expect("{");
      if (!accept("}")) {
        do {
          std::string cell = expectIdent();
          expect(":");
          t->assigns.emplace_back(cell, parseTerm());
        } while (accept(","));
        expect("}");
      }
      return t;
    }
    err("unknown term head '" + head + "'", t->pos);
  }

  std::vector<ObjAst> parseObjList() {
    std::vector<ObjAst> out;
    do {
      out.push_back(parseObj());
    } while (accept(","));
    return out;
  }

  std::vector<Declaration> parseFile() {
    std::vector<Declaration> out;
    while (peek().kind != Token::Kind::End) {
      Declaration d;
      d.pos = peek().pos;
      std::string kw = expectIdent();
      if (kw == "context") {
        if (!acceptIdent("n")) err("expected 'n' after 'context'", peek().pos);
        expect("=");
        d.node = ContextDecl{expectInt()};
      } else if (kw == "tree") {
        TreeDecl td;
        td.name = expectIdent();
        expect("=");
        expect("[");
        td.columns = parseObjList();
        if (accept(";")) td.glues = parseObjList();
        expect("]");
        d.node = std::move(td);
      } else if (kw == "arrow") {
        ArrowDecl ad;
        ad.name = expectIdent();
        expect(":");
        if (peek().kind == Token::Kind::Ident && (peek().text == "one" || peek().text == "two")) {
          ad.domIsDisc = true;
          ad.domDisc = parseObj();
        } else {
          ad.domName = expectIdent();
        }
        expect("->");
        ad.codName = expectIdent();
        expect("=");
        if (accept("{")) {
          if (!accept("}")) {
            do {
              std::string cell = expectIdent();
              expect(":");
              ad.assigns.emplace_back(cell, parseTerm());
            } while (accept(","));
            expect("}");
          }
        } else {
          ad.top = parseTerm();
        }
        d.node = std::move(ad);
      } else if (kw == "coh") {
        CohDecl cd;
        cd.name = expectIdent();
        expect("=");
        expect("(");
        cd.left = parseTerm();
        expect(",");
        cd.right = parseTerm();
        expect(")");
        if (!acceptIdent("over")) err("expected 'over'", peek().pos);
        cd.overName = expectIdent();
        d.node = std::move(cd);
      } else if (kw == "assert") {
        AssertDecl ad;
        std::string what = expectIdent();
        if (what == "parallel") ad.kind = AssertDecl::Kind::Parallel;
        else if (what == "arity_eq") ad.kind = AssertDecl::Kind::ArityEq;
        else if (what == "admissible") ad.kind = AssertDecl::Kind::Admissible;
        else if (what == "model_eq") ad.kind = AssertDecl::Kind::ModelEq;
        else if (what == "strict_eq") ad.kind = AssertDecl::Kind::StrictEq;
        else err("unknown assertion kind '" + what + "'", d.pos);
        if (ad.kind == AssertDecl::Kind::ModelEq) {
          expect("{");
          ad.p = expectInt();
          expect("}");
        }
        expect("(");
        ad.lhs = expectIdent();
        expect(",");
        ad.rhs = expectIdent();
        expect(")");
        d.node = std::move(ad);
      } else {
        err("unknown declaration '" + kw + "'", d.pos);
      }
      out.push_back(std::move(d));
    }
    return out;
  }
};

std::string printObj(const ObjAst& o) {
  if (o.keyword == "xi") return "xi";
  return o.keyword + "(" + std::to_string(o.dim) + ")";
}

std::string printTermAst(const TermAstPtr& t) {
  switch (t->kind) {
    case TermAst::Kind::Gen: return "gen(" + t->name + ")";
    case TermAst::Kind::Comp:
      return "comp{" + std::to_string(t->m) + "," + std::to_string(t->p) + "}(" + printTermAst(t->a) +
             ", " + printTermAst(t->b) + ")";
    case TermAst::Kind::Transport:
      return std::string(t->series == TransportSeries::F ? "F(" : "G(") + printTermAst(t->a) + ")";
    case TermAst::Kind::Xi: return "xi(" + printTermAst(t->a) + ")";
    case TermAst::Kind::AlphaBeta:
      return std::string(t->isAlpha ? "alpha" : "beta") + "{" + std::to_string(t->k) + "}(" +
             printTermAst(t->a) + ")";
    case TermAst::Kind::CohApp: {
      std::string out = "coh[" + t->name + "]{";
      for (size_t i = 0; i < t->assigns.size(); ++i) {
        if (i) out += ", ";
        out += t->assigns[i].first + ": " + printTermAst(t->assigns[i].second);
      }
      return out + "}";
    }
    case TermAst::Kind::Splice: return "@" + t->name;
  }
  return "?";
}

} // namespace

std::vector<Declaration> parse(const std::string& text, const std::string& filename) {
  Parser p(text, filename);
  return p.parseFile();
}

std::string print(const std::vector<Declaration>& decls) {
  std::ostringstream os;
  for (const Declaration& d : decls) {
    if (const auto* c = std::get_if<ContextDecl>(&d.node)) {
      os << "context n = " << c->n << "\n";
    } else if (const auto* t = std::get_if<TreeDecl>(&d.node)) {
      os << "tree " << t->name << " = [ ";
      for (size_t i = 0; i < t->columns.size(); ++i) os << (i ? ", " : "") << printObj(t->columns[i]);
      if (!t->glues.empty()) {
        os << " ; ";
        for (size_t i = 0; i < t->glues.size(); ++i) os << (i ? ", " : "") << printObj(t->glues[i]);
      }
      os << " ]\n";
    } else if (const auto* a = std::get_if<ArrowDecl>(&d.node)) {
      os << "arrow " << a->name << " : " << (a->domIsDisc ? printObj(a->domDisc) : a->domName) << " -> "
         << a->codName << " = ";
      if (a->top) {
        os << printTermAst(a->top);
      } else {
        os << "{ ";
        for (size_t i = 0; i < a->assigns.size(); ++i)
          os << (i ? ", " : "") << a->assigns[i].first << ": " << printTermAst(a->assigns[i].second);
        os << " }";
      }
      os << "\n";
    } else if (const auto* c = std::get_if<CohDecl>(&d.node)) {
      os << "coh " << c->name << " = ( " << printTermAst(c->left) << " , " << printTermAst(c->right)
         << " ) over " << c->overName << "\n";
    } else if (const auto* s = std::get_if<AssertDecl>(&d.node)) {
      os << "assert ";
      switch (s->kind) {
        case AssertDecl::Kind::Parallel: os << "parallel"; break;
        case AssertDecl::Kind::ArityEq: os << "arity_eq"; break;
        case AssertDecl::Kind::Admissible: os << "admissible"; break;
        case AssertDecl::Kind::ModelEq: os << "model_eq{" << s->p << "}"; break;
        case AssertDecl::Kind::StrictEq: os << "strict_eq"; break;
      }
      os << "(" << s->lhs << ", " << s->rhs << ")\n";
    }
  }
  return os.str();
}

bool astEqual(const std::vector<Declaration>& a, const std::vector<Declaration>& b) {
  return print(a) == print(b);
}

namespace {

struct Elaborator {
  CheckReport report;
  std::optional<GlobeContext> ctx;
  std::set<std::string> names;
  std::set<std::string> caps;

  void cap(const std::string& c) { caps.insert(c); }

  [[noreturn]] void err(Errc code, const std::string& msg, const SourcePos& pos) {
    fail(code, pos.str() + ": " + msg);
  }

  const GlobeContext& context(const SourcePos& pos) {
    if (!ctx) err(Errc::SemanticError, "no 'context n = ...' declaration yet", pos);
    return *ctx;
  }

  void declareName(const std::string& name, const SourcePos& pos) {
    if (!names.insert(name).second) err(Errc::SemanticError, "duplicate name '" + name + "'", pos);
  }

  const Tree& tree(const std::string& name, const SourcePos& pos) {
    auto it = report.trees.find(name);
    if (it == report.trees.end()) err(Errc::SemanticError, "unknown tree '" + name + "'", pos);
    return it->second;
  }

  GlobeObject obj(const ObjAst& o) {
    const GlobeContext& c = context(o.pos);
    if (o.keyword == "one") return makeObject(c, Family::Dom, o.dim);
    if (o.keyword == "two") return makeObject(c, Family::Cod, o.dim);
    if (o.keyword == "f") return makeObject(c, Family::FSer, o.dim);
    if (o.keyword == "g") return makeObject(c, Family::GSer, o.dim);
    if (o.keyword == "alpha") return makeObject(c, Family::Alpha, o.dim);
    if (o.keyword == "beta") return makeObject(c, Family::Beta, o.dim);
    return xiObject(c);
  }

  Term term(const TermAstPtr& t, const Tree& host) {
    const GlobeContext& c = context(t->pos);
    switch (t->kind) {
      case TermAst::Kind::Gen: {
        CellRef cell;
        if (!cellByName(*realize(host), t->name, cell))
          err(Errc::SemanticError, "tree " + host.table() + " has no cell named '" + t->name + "'", t->pos);
        return mkGen(host, cell);
      }
      case TermAst::Kind::Comp:
        return mkComp(c, t->m, t->p, term(t->a, host), term(t->b, host));
      case TermAst::Kind::Transport: return mkTransport(c, t->series, term(t->a, host));
      case TermAst::Kind::Xi: return mkMid(c, Family::Xi, c.n - 1, term(t->a, host));
      case TermAst::Kind::AlphaBeta:
        return mkMid(c, t->isAlpha ? Family::Alpha : Family::Beta, t->k, term(t->a, host));
      case TermAst::Kind::CohApp: {
        auto it = report.cohs.find(t->name);
        if (it == report.cohs.end()) err(Errc::SemanticError, "unknown coherence cell '" + t->name + "'", t->pos);
        const CohCellPtr& cell = it->second;
        auto arity = realize(cell->arity);
        std::map<CellRef, Term> partial;
        for (const auto& [cellName_, sub] : t->assigns) {
          CellRef ref;
          if (!cellByName(*arity, cellName_, ref))
            err(Errc::SemanticError, "arity of '" + t->name + "' has no cell named '" + cellName_ + "'", t->pos);
          partial.emplace(ref, term(sub, host));
        }
        cap("cohApply");
        auto full = deriveAssignment(cell->arity, std::move(partial));
        return mkCohApp(cell, std::move(full), host);
      }
      case TermAst::Kind::Splice: {
        auto it = report.operations.find(t->name);
        if (it == report.operations.end())
          err(Errc::SemanticError, "'@' needs a declared disc-domain arrow, '" + t->name + "' is not one", t->pos);
        Term top = it->second.top();
        if (it->second.arrow.cod == host) return top;
        if (!realizationEqual(it->second.arrow.cod, host))
          err(Errc::SemanticError, "top of '" + t->name + "' lives over a different arity", t->pos);
        cap("coerce");
        return rehostTerm(top, host);
      }
    }
    err(Errc::SemanticError, "bad term", t->pos);
  }

  const OperationRef& op(const std::string& name, const SourcePos& pos) {
    auto it = report.operations.find(name);
    if (it != report.operations.end()) return it->second;
    auto c = report.cohs.find(name);
    if (c != report.cohs.end()) err(Errc::SemanticError, "'" + name + "' names a coherence cell; assert on arrows", pos);
    err(Errc::SemanticError, "unknown arrow '" + name + "'", pos);
  }

  void run(const Declaration& d) {
    if (const auto* c = std::get_if<ContextDecl>(&d.node)) {
      if (ctx) err(Errc::SemanticError, "duplicate context declaration", d.pos);
      if (c->n < 0) err(Errc::SemanticError, "context level must be non-negative", d.pos);
      ctx = GlobeContext{c->n};
      return;
    }
    if (const auto* t = std::get_if<TreeDecl>(&d.node)) {
      declareName(t->name, d.pos);
      std::vector<GlobeObject> cols, glues;
      for (const auto& o : t->columns) cols.push_back(obj(o));
      for (const auto& o : t->glues) glues.push_back(obj(o));
      cap("validateTree");
      report.trees.emplace(t->name, validateTree(context(d.pos), std::move(cols), std::move(glues)));
      report.declOrder.push_back(t->name);
      return;
    }
    if (const auto* a = std::get_if<ArrowDecl>(&d.node)) {
      declareName(a->name, d.pos);
      const Tree& cod = tree(a->codName, d.pos);
      Tree dom = a->domIsDisc ? discTree(context(d.pos), obj(a->domDisc)) : tree(a->domName, d.pos);
      bool isOp = dom.columns.size() == 1 &&
                  (dom.columns[0].family == Family::Dom || dom.columns[0].family == Family::Cod);
      std::map<CellRef, Term> partial;
      if (a->top) {
        if (dom.columns.size() != 1)
          err(Errc::SemanticError, "top-term shorthand needs a single-column domain", d.pos);
        partial.emplace(topCellOf(dom), term(a->top, cod));
      } else {
        auto domR = realize(dom);
        for (const auto& [cellName_, sub] : a->assigns) {
          CellRef ref;
          if (!cellByName(*domR, cellName_, ref))
            err(Errc::SemanticError, "tree " + dom.table() + " has no cell named '" + cellName_ + "'", d.pos);
          partial.emplace(ref, term(sub, cod));
        }
      }
      cap("makeArrow");
      auto full = deriveAssignment(dom, std::move(partial));
      Arrow arrow = makeArrow(dom, cod, std::move(full));
      if (isOp) {
        report.operations.emplace(
            a->name, OperationRef{dom.columns[0].family, dom.columns[0].dim, std::move(arrow)});
      } else {
        report.generalArrows.emplace(a->name, std::move(arrow));
      }
      report.declOrder.push_back(a->name);
      return;
    }
    if (const auto* c = std::get_if<CohDecl>(&d.node)) {
      declareName(c->name, d.pos);
      const Tree& arity = tree(c->overName, d.pos);
      Term lhs = term(c->left, arity);
      Term rhs = term(c->right, arity);
      if (lhs->dim != rhs->dim) err(Errc::DimMismatch, "coherence pair terms have distinct dimensions", d.pos);
      Family fam = lhs->component == 2 ? Family::Cod : Family::Dom;
      cap("makeOp");
      OperationRef f = makeOp(context(d.pos), fam, lhs->dim, arity, lhs);
      OperationRef g = makeOp(context(d.pos), fam, rhs->dim, arity, rhs);
      cap("requestLift");
      CohCellPtr cell = report.registry->requestLift(f, g);
      report.cohs.emplace(c->name, cell);
      report.declOrder.push_back(c->name);
      return;
    }
    const auto& s = std::get<AssertDecl>(d.node);
    AssertResult res;
    res.pos = d.pos;
    switch (s.kind) {
      case AssertDecl::Kind::Parallel: {
        res.text = "parallel(" + s.lhs + ", " + s.rhs + ")";
        cap("isParallel");
        res.passed = isParallel(op(s.lhs, d.pos), op(s.rhs, d.pos));
        break;
      }
      case AssertDecl::Kind::ArityEq: {
        res.text = "arity_eq(" + s.lhs + ", " + s.rhs + ")";
        cap("realizationEqual");
        res.passed = realizationEqual(tree(s.lhs, d.pos), tree(s.rhs, d.pos));
        break;
      }
      case AssertDecl::Kind::Admissible: {
        res.text = "admissible(" + s.lhs + ", " + s.rhs + ")";
        cap("isAdmissible");
        res.passed = report.registry->isAdmissible(op(s.lhs, d.pos), op(s.rhs, d.pos));
        break;
      }
      case AssertDecl::Kind::ModelEq: {
        res.text = "model_eq{" + std::to_string(s.p) + "}(" + s.lhs + ", " + s.rhs + ")";
        cap("equalInDimModels");
        ModelEq v = equalInDimModels(*report.registry, s.p, op(s.lhs, d.pos), op(s.rhs, d.pos));
        res.passed = v != ModelEq::Unknown;
        res.detail = modelEqName(v);
        break;
      }
      case AssertDecl::Kind::StrictEq: {
        res.text = "strict_eq(" + s.lhs + ", " + s.rhs + ")";
        cap("strictEqual");
        const OperationRef& l = op(s.lhs, d.pos);
        const OperationRef& r = op(s.rhs, d.pos);
        res.passed = strictEqual(l.arrow.cod, l.top(), r.arrow.cod, r.top());
        break;
      }
    }
    if (!res.passed) report.allAssertionsPassed = false;
    report.assertions.push_back(std::move(res));
  }

  static CellRef topCellOf(const Tree& t) {
    auto r = realize(t);
    if (t.columns.size() != 1)
      fail(Errc::SemanticError, "top-term shorthand needs a single-column domain: " + t.table());
    return r->columnCells[0].at(LocalCell{discDim(t.columns[0]), 0});
  }
};

} // namespace

CheckReport elaborate(const std::vector<Declaration>& decls, Policy policy) {
  Elaborator el;
  el.report.registry = std::make_shared<Registry>(GlobeContext{0}, policy);
  // registry context fixed once the context declaration is seen
  bool registryBound = false;
  try {
    for (const Declaration& d : decls) {
      if (const auto* c = std::get_if<ContextDecl>(&d.node); c && !registryBound) {
        el.run(d);
        el.report.registry = std::make_shared<Registry>(*el.ctx, policy);
        registryBound = true;
        continue;
      }
      el.run(d);
    }
    el.report.elaborated = true;
  } catch (const Error& e) {
    el.report.elaborated = false;
    el.report.allAssertionsPassed = false;
    el.report.errorMessage = e.what();
  }
  el.report.capabilities.assign(el.caps.begin(), el.caps.end());
  return el.report;
}

namespace {

using json = nlohmann::ordered_json;

std::vector<std::string> declDeps(const Declaration& d) {
  std::vector<std::string> deps;
  std::function<void(const TermAstPtr&)> walk = [&](const TermAstPtr& t) {
    if (!t) return;
    if (t->kind == TermAst::Kind::CohApp || t->kind == TermAst::Kind::Splice) deps.push_back(t->name);
    walk(t->a);
    walk(t->b);
    for (const auto& [n, sub] : t->assigns) walk(sub);
  };
  if (const auto* a = std::get_if<ArrowDecl>(&d.node)) {
    if (!a->domIsDisc) deps.push_back(a->domName);
    deps.push_back(a->codName);
    walk(a->top);
    for (const auto& [n, sub] : a->assigns) walk(sub);
  } else if (const auto* c = std::get_if<CohDecl>(&d.node)) {
    deps.push_back(c->overName);
    walk(c->left);
    walk(c->right);
  } else if (const auto* s = std::get_if<AssertDecl>(&d.node)) {
    deps.push_back(s->lhs);
    deps.push_back(s->rhs);
  }
  return deps;
}

std::string declName(const Declaration& d) {
  if (const auto* t = std::get_if<TreeDecl>(&d.node)) return t->name;
  if (const auto* a = std::get_if<ArrowDecl>(&d.node)) return a->name;
  if (const auto* c = std::get_if<CohDecl>(&d.node)) return c->name;
  return "";
}

} // namespace

std::string exportDerivation(const std::vector<Declaration>& decls, const CheckReport& report,
                             ExportFormat format) {
  if (format == ExportFormat::Dot) {
    std::ostringstream os;
    os << "digraph derivation {\n  rankdir=LR;\n";
    for (const Declaration& d : decls) {
      std::string name = declName(d);
      if (name.empty()) continue;
      const char* shape = std::holds_alternative<TreeDecl>(d.node)  ? "box"
                          : std::holds_alternative<CohDecl>(d.node) ? "hexagon"
                                                                       : "ellipse";
      os << "  \"" << name << "\" [shape=" << shape << "];\n";
    }
    int assertId = 0;
    for (const Declaration& d : decls) {
      std::string name = declName(d);
      if (name.empty() && std::holds_alternative<AssertDecl>(d.node)) {
        name = "assert_" + std::to_string(assertId++);
        os << "  \"" << name << "\" [shape=note];\n";
      }
      for (const std::string& dep : declDeps(d))
        if (!name.empty()) os << "  \"" << dep << "\" -> \"" << name << "\";\n";
    }
    os << "}\n";
    return os.str();
  }
  if (format == ExportFormat::Text) {
    std::ostringstream os;
    os << (report.elaborated ? "elaborated" : ("error: " + report.errorMessage)) << "\n";
    for (const auto& a : report.assertions)
      os << (a.passed ? "  pass  " : "  FAIL  ") << a.text
         << (a.detail.empty() ? "" : " [" + a.detail + "]") << "\n";
    if (report.registry) {
      os << "registry: " << report.registry->size() << " cells\n";
      for (const auto& c : report.registry->all())
        os << "  " << c->id << "  dim " << c->dim << "  stage " << c->stage << "  over "
           << c->arity.table() << "\n";
    }
    return os.str();
  }
  json j;
  j["elaborated"] = report.elaborated;
  if (!report.elaborated) j["error"] = report.errorMessage;
  j["assertions"] = json::array();
  for (const auto& a : report.assertions) {
    json ja;
    ja["text"] = a.text;
    ja["passed"] = a.passed;
    if (!a.detail.empty()) ja["detail"] = a.detail;
    j["assertions"].push_back(ja);
  }
  j["trees"] = json::array();
  for (const std::string& name : report.declOrder) {
    auto it = report.trees.find(name);
    if (it == report.trees.end()) continue;
    json jt;
    jt["name"] = name;
    jt["table"] = it->second.table();
    jt["cells"] = it->second.columns.size();
    j["trees"].push_back(jt);
  }
  j["arrows"] = json::array();
  auto arrowJson = [](const std::string& name, const Arrow& a) {
    json ja;
    ja["name"] = name;
    ja["dom"] = a.dom.table();
    ja["cod"] = a.cod.table();
    ja["assign"] = json::array();
    for (const auto& [c, img] : a.assign)
      ja["assign"].push_back(json{{"cell", cellName(c)}, {"term", printTerm(img)}});
    return ja;
  };
  for (const std::string& name : report.declOrder) {
    if (auto it = report.operations.find(name); it != report.operations.end()) {
      json ja = arrowJson(name, it->second.arrow);
      ja["stage"] = stage(it->second.top());
      j["arrows"].push_back(ja);
    } else if (auto ig = report.generalArrows.find(name); ig != report.generalArrows.end()) {
      j["arrows"].push_back(arrowJson(name, ig->second));
    }
  }
  j["cohs"] = json::array();
  for (const std::string& name : report.declOrder) {
    auto it = report.cohs.find(name);
    if (it == report.cohs.end()) continue;
    json jc;
    jc["name"] = name;
    jc["id"] = it->second->id;
    jc["dim"] = it->second->dim;
    jc["stage"] = it->second->stage;
    jc["arity"] = it->second->arity.table();
    j["cohs"].push_back(jc);
  }
  j["capabilities"] = report.capabilities;
  if (report.registry) j["registry"] = json::parse(dumpRegistryJson(*report.registry));
  return j.dump(2) + "\n";
}

std::string normalizeStrict(const std::vector<Declaration>& decls, const CheckReport& report) {
  std::ostringstream os;
  for (const std::string& name : report.declOrder) {
    auto it = report.operations.find(name);
    if (it == report.operations.end()) continue;
    os << name << ": ";
    try {
      os << strictNormalize(it->second.arrow.cod, it->second.top()).str();
    } catch (const Error& e) {
      if (e.code() != Errc::OutsideFragment) throw;
      os << e.what();
    }
    os << "\n";
  }
  (void)decls;
  return os.str();
}

} // namespace gwt
