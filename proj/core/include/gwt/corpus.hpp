#pragma once

#include "gwt/surface.hpp"

namespace gwt {

struct CorpusFileResult {
  std::string file;
  std::string expect; // pass | assert_fail | error
  std::string actual;
  bool verdictOk = false;
  bool goldenOk = true;
  std::string message;

  bool ok() const { return verdictOk && goldenOk; }
};

struct CorpusSummary {
  std::vector<CorpusFileResult> files;
  bool allOk = true;

  std::string str() const;
};

/// Runs every file listed in <dir>/manifest.json against its expected
/// verdict and optional golden registry summary.
CorpusSummary runCorpus(const std::string& dir, Policy policy = Policy::PairNotBare);

/// Reads a whole file; errors with SemanticError when missing.
std::string readFile(const std::string& path);

} // namespace gwt
