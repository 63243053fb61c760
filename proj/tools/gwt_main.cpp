// gwt: kernel and checker for globular (n,infinity)-transformation theories.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "gwt/corpus.hpp"

namespace {

gwt::Policy policyFromName(const std::string& name) {
  if (name == "pair") return gwt::Policy::PairNotBare;
  if (name == "both") return gwt::Policy::BothNotBare;
  if (name == "all") return gwt::Policy::AllParallel;
  throw CLI::ValidationError("--admissibility must be pair, both or all");
}

int runCheck(const std::string& file, const std::string& policyName, const std::string& format,
             const std::string& dumpRegistry) {
  auto decls = gwt::parse(gwt::readFile(file), file);
  gwt::CheckReport report = gwt::elaborate(decls, policyFromName(policyName));
  gwt::ExportFormat fmt = format == "json"  ? gwt::ExportFormat::Json
                          : format == "dot" ? gwt::ExportFormat::Dot
                                            : gwt::ExportFormat::Text;
  std::cout << gwt::exportDerivation(decls, report, fmt);
  if (!dumpRegistry.empty() && report.registry) {
    std::ofstream out(dumpRegistry, std::ios::binary);
    out << gwt::dumpRegistryJson(*report.registry);
  }
  return report.exitCode();
}

int runEnumTrees(int n, int maxCols, int maxDim) {
  gwt::GlobeContext ctx{n};
  for (const gwt::Tree& t : gwt::enumerateTrees(ctx, maxCols, maxDim))
    std::cout << t.table() << "\n";
  return 0;
}

int runEnumAdmissible(int n, int stage, int maxTermSize, int maxCols, int maxDim,
                      const std::string& policyName) {
  gwt::Registry reg(gwt::GlobeContext{n}, policyFromName(policyName));
  gwt::EnumBounds bounds{maxCols, maxDim, maxTermSize, 0};
  // saturate the registry stage by stage up to the requested layer
  for (int s = 0; s < stage; ++s) {
    bounds.stage = s;
    for (const auto& p : gwt::enumerateAdmissible(reg, bounds)) reg.requestLift(p.f, p.g);
  }
  bounds.stage = stage;
  auto pairs = gwt::enumerateAdmissible(reg, bounds);
  for (const auto& p : pairs)
    std::cout << p.tree.table() << "  " << gwt::printTerm(p.f.top()) << "  ||  "
              << gwt::printTerm(p.g.top()) << "\n";
  std::cout << "# " << pairs.size() << " admissible pairs at stage " << stage << "\n";
  return 0;
}

int runNormalize(const std::string& file, bool strict) {
  if (!strict) {
    std::cerr << "only --strict normalization is available\n";
    return 2;
  }
  auto decls = gwt::parse(gwt::readFile(file), file);
  gwt::CheckReport report = gwt::elaborate(decls);
  if (!report.elaborated) {
    std::cerr << report.errorMessage << "\n";
    return 2;
  }
  std::cout << gwt::normalizeStrict(decls, report);
  return 0;
}

int runRealize(const std::string& file, const std::string& treeName, const std::string& format) {
  auto decls = gwt::parse(gwt::readFile(file), file);
  gwt::CheckReport report = gwt::elaborate(decls);
  if (!report.elaborated) {
    std::cerr << report.errorMessage << "\n";
    return 2;
  }
  auto it = report.trees.find(treeName);
  if (it == report.trees.end()) {
    std::cerr << "no tree named '" << treeName << "' in " << file << "\n";
    return 2;
  }
  auto r = gwt::realize(it->second);
  std::cout << (format == "dot" ? r->cells.toDot() : r->cells.toJson() + "\n");
  return 0;
}

int runCorpusDir(const std::string& dir, const std::string& policyName) {
  gwt::CorpusSummary summary = gwt::runCorpus(dir, policyFromName(policyName));
  std::cout << summary.str();
  return summary.allOk ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"kernel and checker for globular (n,infinity)-transformation theories"};
  app.require_subcommand(1);

  std::string file, format = "text", policy = "pair", dumpRegistry, treeName, dir;
  int n = 2, maxCols = 2, maxDim = 2, stage = 0, maxTermSize = 4;
  bool strict = false;

  auto* check = app.add_subcommand("check", "elaborate a derivation file and run its assertions");
  check->add_option("file", file)->required();
  check->add_option("--admissibility", policy, "pair|both|all");
  check->add_option("--format", format, "text|json|dot");
  check->add_option("--dump-registry", dumpRegistry, "write the registry as JSON");

  auto* et = app.add_subcommand("enum-trees", "list the valid trees within bounds");
  et->add_option("--n", n)->required();
  et->add_option("--max-cols", maxCols);
  et->add_option("--max-dim", maxDim);

  auto* ea = app.add_subcommand("enum-admissible", "list admissible parallel pairs at a stage");
  ea->add_option("--n", n)->required();
  ea->add_option("--stage", stage);
  ea->add_option("--max-term-size", maxTermSize);
  ea->add_option("--max-cols", maxCols);
  ea->add_option("--max-dim", maxDim);
  ea->add_option("--admissibility", policy, "pair|both|all");

  auto* nm = app.add_subcommand("normalize", "strict normal forms of the declared operations");
  nm->add_option("file", file)->required();
  nm->add_flag("--strict", strict);

  auto* re = app.add_subcommand("realize", "export a declared tree's realization");
  re->add_option("file", file)->required();
  re->add_option("--tree", treeName)->required();
  re->add_option("--format", format, "dot|json");

  auto* rc = app.add_subcommand("run-corpus", "run a corpus directory against its manifest");
  rc->add_option("dir", dir)->required();
  rc->add_option("--admissibility", policy, "pair|both|all");

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) return runCheck(file, policy, format, dumpRegistry);
    if (et->parsed()) return runEnumTrees(n, maxCols, maxDim);
    if (ea->parsed()) return runEnumAdmissible(n, stage, maxTermSize, maxCols, maxDim, policy);
    if (nm->parsed()) return runNormalize(file, strict);
    if (re->parsed()) return runRealize(file, treeName, format);
    if (rc->parsed()) return runCorpusDir(dir, policy);
  } catch (const gwt::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 2;
}
