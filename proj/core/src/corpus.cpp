#include "gwt/corpus.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace gwt {

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::SemanticError, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string CorpusSummary::str() const {
  std::ostringstream os;
  for (const auto& f : files) {
    os << (f.ok() ? "pass  " : "FAIL  ") << f.file << "  (expected " << f.expect << ", got " << f.actual;
    if (!f.goldenOk) os << ", golden summary differs";
    os << ")";
    if (!f.message.empty()) os << "  " << f.message;
    os << "\n";
  }
  return os.str();
}

CorpusSummary runCorpus(const std::string& dir, Policy policy) {
  using json = nlohmann::json;
  CorpusSummary summary;
  json manifest = json::parse(readFile(dir + "/manifest.json"));
  for (const auto& entry : manifest) {
    CorpusFileResult res;
    res.file = entry.at("file").get<std::string>();
    res.expect = entry.at("expect").get<std::string>();
    CheckReport report;
    try {
      auto decls = parse(readFile(dir + "/" + res.file), res.file);
      report = elaborate(decls, policy);
      res.actual = report.exitCode() == 0 ? "pass" : report.exitCode() == 1 ? "assert_fail" : "error";
      if (!report.elaborated) res.message = report.errorMessage;
    } catch (const Error& e) {
      res.actual = "error";
      res.message = e.what();
    }
    res.verdictOk = res.actual == res.expect;
    if (entry.contains("golden") && report.registry) {
      std::string want = readFile(dir + "/" + entry.at("golden").get<std::string>());
      std::string got = dumpRegistryJson(*report.registry);
      res.goldenOk = want == got;
    }
    summary.allOk = summary.allOk && res.ok();
    summary.files.push_back(std::move(res));
  }
  return summary;
}

} // namespace gwt
