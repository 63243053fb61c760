#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "gwt/coherator.hpp"
#include "gwt/strictify.hpp"

namespace gwt {

struct SourcePos {
  std::string file;
  int line = 1;
  int col = 1;

  std::string str() const { return file + ":" + std::to_string(line) + ":" + std::to_string(col); }
};

/// Term syntax tree, as written.
struct TermAst;
using TermAstPtr = std::shared_ptr<const TermAst>;

struct TermAst {
  enum class Kind { Gen, Comp, Transport, Xi, AlphaBeta, CohApp, Splice } kind;
  SourcePos pos;
  std::string name;                    // Gen cell name / CohApp name / Splice arrow name
  int m = 0, p = 0;                    // Comp
  int k = 0;                           // AlphaBeta level
  bool isAlpha = true;                 // AlphaBeta
  TransportSeries series = TransportSeries::F;
  TermAstPtr a, b;                     // children
  std::vector<std::pair<std::string, TermAstPtr>> assigns; // CohApp
};

struct ObjAst {
  SourcePos pos;
  std::string keyword; // one, two, f, g, alpha, beta, xi
  int dim = 0;         // absent for xi
};

struct ContextDecl {
  int n = 0;
};
struct TreeDecl {
  std::string name;
  std::vector<ObjAst> columns, glues;
};
struct ArrowDecl {
  std::string name;
  bool domIsDisc = false;
  ObjAst domDisc;      // when domIsDisc
  std::string domName; // otherwise
  std::string codName;
  TermAstPtr top;                                            // shorthand form
  std::vector<std::pair<std::string, TermAstPtr>> assigns;   // explicit form
};
struct CohDecl {
  std::string name;
  TermAstPtr left, right;
  std::string overName;
};
struct AssertDecl {
  enum class Kind { Parallel, ArityEq, Admissible, ModelEq, StrictEq } kind;
  int p = 0; // ModelEq
  std::string lhs, rhs;
};

struct Declaration {
  SourcePos pos;
  std::variant<ContextDecl, TreeDecl, ArrowDecl, CohDecl, AssertDecl> node;
};

/// Errors: SyntaxError with position.
std::vector<Declaration> parse(const std::string& text, const std::string& filename = "<input>");

/// Canonical pretty-печать; parse(print(d)) == d up to positions.
std::string print(const std::vector<Declaration>& decls);

bool astEqual(const std::vector<Declaration>& a, const std::vector<Declaration>& b);

struct AssertResult {
  SourcePos pos;
  std::string text;
  bool passed = false;
  std::string detail;
};

struct CheckReport {
  bool elaborated = false;   // no kernel/semantic error
  bool allAssertionsPassed = true;
  std::string errorMessage;  // when !elaborated
  std::vector<AssertResult> assertions;
  std::vector<std::string> capabilities; // kernel operations exercised, sorted
  std::shared_ptr<Registry> registry;
  std::map<std::string, Tree> trees;
  std::map<std::string, OperationRef> operations;
  std::map<std::string, Arrow> generalArrows;
  std::map<std::string, CohCellPtr> cohs;
  std::vector<std::string> declOrder; // names in declaration order

  int exitCode() const { return !elaborated ? 2 : allAssertionsPassed ? 0 : 1; }
};

/// Validates the declarations in order against a fresh registry; CohDecl
/// triggers requestLift, AssertDecl is evaluated. Kernel errors are
/// decorated with the declaration position.
CheckReport elaborate(const std::vector<Declaration>& decls, Policy policy = Policy::PairNotBare);

enum class ExportFormat { Json, Dot, Text };

/// Deterministic serialization of an elaboration; dot renders the
/// declaration dependency DAG.
std::string exportDerivation(const std::vector<Declaration>& decls, const CheckReport& report,
                             ExportFormat format);

/// Strict normal forms of every declared disc-domain arrow, one per line.
std::string normalizeStrict(const std::vector<Declaration>& decls, const CheckReport& report);

} // namespace gwt
