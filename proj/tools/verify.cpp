#include <cstdio>
#include <exception>
#include <fstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ltk/harness.hpp"

// Exit codes: 0 all suites passed (precision-limited cases are warnings),
// 1 at least one suite failed, 2 usage or configuration errors.

namespace hn = ltk::harness;

int main(int argc, char** argv) {
  CLI::App app{"runs verification suites from a flat key-value config"};
  std::string config_path;
  std::vector<std::string> suite_flags;
  std::string json_path;
  app.add_option("--config", config_path, "config file path")->required();
  app.add_option("--suite", suite_flags, "suite to run (repeatable; overrides the config)");
  app.add_option("--json", json_path, "write the JSON report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  hn::RunReport report;
  try {
    hn::Config cfg = hn::parse_config(config_path);
    if (!suite_flags.empty()) cfg.suites = suite_flags;
    for (const std::string& name : cfg.suites)
      if (!hn::is_suite(name)) throw std::invalid_argument("unknown suite " + name);
    report = hn::run(cfg);
  } catch (const std::exception& err) {
    std::fprintf(stderr, "verify: %s\n", err.what());
    return 2;
  }

  for (const hn::SuiteReport& s : report.suites) {
    size_t fails = 0, limited = 0;
    for (const hn::CaseResult& c : s.cases) {
      fails += c.status == hn::CaseStatus::fail ? 1 : 0;
      limited += c.status == hn::CaseStatus::precision_limited ? 1 : 0;
    }
    const char* label = fails ? "FAIL" : (limited ? "warn" : "pass");
    std::printf("[%s] %s: %zu cases, %zu failed, %zu precision-limited\n", label,
                s.suite.c_str(), s.cases.size(), fails, limited);
    for (const hn::CaseResult& c : s.cases)
      if (c.status != hn::CaseStatus::pass)
        std::printf("       %s: %s%s%s\n", c.name.c_str(), hn::to_string(c.status),
                    c.note.empty() ? "" : " ", c.note.c_str());
  }
  int status = hn::exit_status(report);
  std::printf("status: %s\n", status == 0 ? "pass" : "fail");

  if (!json_path.empty()) {
    std::ofstream out(json_path);
    if (!out) {
      std::fprintf(stderr, "verify: cannot write %s\n", json_path.c_str());
      return 2;
    }
    out << hn::to_json(report).dump(2) << "\n";
  }
  return status;
}
