#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

// Suite runner: reads a flat key-value config, executes the requested
// verification suites concurrently, and serializes a deterministic JSON
// report.  Everything nondeterministic (wall times, the generation
// timestamp) is quarantined in a separate "meta" object so two runs with
// the same config and seed produce byte-identical reports outside it.

namespace ltk {
namespace harness {

struct Config {
  uint32_t prime = 5;
  uint32_t precision = 12;
  uint32_t degree_cap = 16;
  uint64_t seed = 2026;
  uint32_t trials = 24;
  std::vector<std::string> suites;  // resolved selection; may be empty
  std::string weil_fixture_path;    // empty: discover in memory only
};

// Registered suite names, sorted.
const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);

// Defaults with every registered suite selected.
Config default_config();

// Flat key=value lines; '#' comments and blank lines skipped.  Keys: prime,
// precision, degree_cap, seed, trials, suites (comma-separated), and
// weil_fixture_path.  A missing suites key selects every suite; an empty
// value selects none.  Unknown keys and malformed numbers throw
// invalid_argument; an unreadable file throws runtime_error.
Config parse_config(const std::string& path);
Config config_from_pairs(const std::vector<std::pair<std::string, std::string>>& pairs);

enum class CaseStatus { pass, fail, precision_limited };
const char* to_string(CaseStatus s);

// One parameter point.  digits is the achieved precision in base-p digits
// (-1 when the case is a plain predicate); floors and diagnostics go in
// note.  precision_limited marks an identity that held at every certified
// digit but ran out of stored precision before its documented floor.
struct CaseResult {
  std::string name;
  CaseStatus status = CaseStatus::pass;
  int64_t digits = -1;
  std::string note;
};

struct SuiteReport {
  std::string suite;
  std::string grid;  // human-readable parameter grid
  uint64_t seed = 0;  // derived stream seed actually used
  std::vector<CaseResult> cases;
  std::vector<std::pair<std::string, std::string>> extras;
  double wall_ms = 0.0;  // serialized under meta only

  bool failed() const;
  bool limited() const;
};

struct RunReport {
  Config config;
  std::vector<SuiteReport> suites;  // sorted by suite name
  double wall_ms = 0.0;
};

// Runs one suite synchronously.  Throws invalid_argument on an unknown
// name; the seed stream and grid depend only on the config.
SuiteReport run_suite(const std::string& name, const Config& cfg);

// Runs the selected suites, concurrently up to the worker bound: the
// LTK_WORKERS environment variable when set, otherwise the hardware
// concurrency, always clamped to the suite count.  Throws invalid_argument
// on an unknown suite name.  Results are merged in name order, so the
// report does not depend on scheduling.
RunReport run(const Config& cfg);

// Deterministic except for the trailing "meta" object.
nlohmann::ordered_json to_json(const RunReport& report);

// 0 when no suite failed (precision-limited counts as a warning), else 1.
int exit_status(const RunReport& report);

}  // namespace harness
}  // namespace ltk
