#include "ltk/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <stdexcept>
#include <thread>

#include "ltk/kv.hpp"

namespace ltk {
namespace harness {

namespace {

uint64_t parse_u64(const std::string& key, const std::string& value) {
  if (value.empty()) throw std::invalid_argument("config: empty value for " + key);
  uint64_t out = 0;
  for (char ch : value) {
    if (ch < '0' || ch > '9')
      throw std::invalid_argument("config: non-numeric value for " + key);
    uint64_t digit = static_cast<uint64_t>(ch - '0');
    if (out > (~uint64_t(0) - digit) / 10)
      throw std::invalid_argument("config: value out of range for " + key);
    out = out * 10 + digit;
  }
  return out;
}

uint32_t parse_u32(const std::string& key, const std::string& value) {
  uint64_t v = parse_u64(key, value);
  if (v > UINT32_MAX) throw std::invalid_argument("config: value out of range for " + key);
  return static_cast<uint32_t>(v);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  size_t pos = 0;
  while (pos <= value.size()) {
    size_t comma = value.find(',', pos);
    if (comma == std::string::npos) comma = value.size();
    std::string item = ltk::kv::trim(value.substr(pos, comma - pos));
    if (!item.empty()) out.push_back(item);
    pos = comma + 1;
  }
  return out;
}

size_t worker_bound(size_t jobs) {
  if (jobs <= 1) return jobs;
  size_t workers = std::max<size_t>(1, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("LTK_WORKERS")) {
    try {
      workers = std::max<size_t>(1, parse_u64("LTK_WORKERS", env));
    } catch (const std::invalid_argument&) {
      workers = 1;
    }
  }
  return std::min(workers, jobs);
}

}  // namespace

bool is_suite(const std::string& name) {
  const auto& names = suite_names();
  return std::binary_search(names.begin(), names.end(), name);
}

Config default_config() {
  Config cfg;
  cfg.suites = suite_names();
  return cfg;
}

Config config_from_pairs(const std::vector<std::pair<std::string, std::string>>& pairs) {
  Config cfg;
  bool suites_given = false;
  for (const auto& [key, value] : pairs) {
    if (key == "prime") {
      cfg.prime = parse_u32(key, value);
    } else if (key == "precision") {
      cfg.precision = parse_u32(key, value);
    } else if (key == "degree_cap") {
      cfg.degree_cap = parse_u32(key, value);
    } else if (key == "seed") {
      cfg.seed = parse_u64(key, value);
    } else if (key == "trials") {
      cfg.trials = parse_u32(key, value);
    } else if (key == "suites") {
      suites_given = true;
      cfg.suites = split_list(value);
    } else if (key == "weil_fixture_path") {
      cfg.weil_fixture_path = value;
    } else {
      throw std::invalid_argument("config: unknown key " + key);
    }
  }
  if (!suites_given) cfg.suites = suite_names();
  for (const std::string& name : cfg.suites)
    if (!is_suite(name)) throw std::invalid_argument("unknown suite " + name);
  return cfg;
}

Config parse_config(const std::string& path) { return config_from_pairs(ltk::kv::read_file(path)); }

const char* to_string(CaseStatus s) {
  switch (s) {
    case CaseStatus::pass:
      return "pass";
    case CaseStatus::fail:
      return "fail";
    case CaseStatus::precision_limited:
      return "precision-limited";
  }
  return "unknown";
}

bool SuiteReport::failed() const {
  for (const CaseResult& c : cases)
    if (c.status == CaseStatus::fail) return true;
  return false;
}

bool SuiteReport::limited() const {
  for (const CaseResult& c : cases)
    if (c.status == CaseStatus::precision_limited) return true;
  return false;
}

RunReport run(const Config& cfg) {
  std::vector<std::string> names = cfg.suites;
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  for (const std::string& name : names)
    if (!is_suite(name)) throw std::invalid_argument("unknown suite " + name);

  RunReport report;
  report.config = cfg;
  report.suites.resize(names.size());

  auto started = std::chrono::steady_clock::now();
  size_t workers = worker_bound(names.size());
  if (workers <= 1) {
    for (size_t i = 0; i < names.size(); ++i) report.suites[i] = run_suite(names[i], cfg);
  } else {
    // Each worker claims suite indices off a shared counter; slot i of the
    // output is owned by whoever claimed i, so no further ordering is needed.
    std::atomic<size_t> cursor{0};
    std::exception_ptr first_error;
    std::atomic<bool> errored{false};
    auto body = [&]() {
      for (;;) {
        size_t i = cursor.fetch_add(1);
        if (i >= names.size()) return;
        try {
          report.suites[i] = run_suite(names[i], cfg);
        } catch (...) {
          if (!errored.exchange(true)) first_error = std::current_exception();
          return;
        }
      }
    };
    std::vector<std::thread> pool;
    for (size_t w = 0; w < workers; ++w) pool.emplace_back(body);
    for (std::thread& t : pool) t.join();
    if (errored) std::rethrow_exception(first_error);
  }
  report.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started)
          .count();
  return report;
}

nlohmann::ordered_json to_json(const RunReport& report) {
  nlohmann::ordered_json j;
  j["config"] = {{"prime", report.config.prime},
                 {"precision", report.config.precision},
                 {"degree_cap", report.config.degree_cap},
                 {"seed", report.config.seed},
                 {"trials", report.config.trials},
                 {"suites", report.config.suites},
                 {"weil_fixture_path", report.config.weil_fixture_path}};

  bool any_fail = false;
  uint64_t warnings = 0;
  nlohmann::ordered_json suites = nlohmann::ordered_json::array();
  for (const SuiteReport& s : report.suites) {
    nlohmann::ordered_json js;
    js["suite"] = s.suite;
    js["grid"] = s.grid;
    js["seed"] = s.seed;
    js["status"] = s.failed() ? "fail" : (s.limited() ? "warn" : "pass");
    nlohmann::ordered_json cases = nlohmann::ordered_json::array();
    for (const CaseResult& c : s.cases) {
      nlohmann::ordered_json jc;
      jc["name"] = c.name;
      jc["status"] = to_string(c.status);
      jc["digits"] = c.digits;
      if (!c.note.empty()) jc["note"] = c.note;
      cases.push_back(std::move(jc));
      warnings += c.status == CaseStatus::precision_limited ? 1 : 0;
    }
    js["cases"] = std::move(cases);
    if (!s.extras.empty()) {
      nlohmann::ordered_json extras;
      for (const auto& [k, v] : s.extras) extras[k] = v;
      js["extras"] = std::move(extras);
    }
    suites.push_back(std::move(js));
    any_fail = any_fail || s.failed();
  }
  j["suites"] = std::move(suites);
  j["status"] = any_fail ? "fail" : "pass";
  j["warnings"] = warnings;

  // Everything timing-related lives here and only here.
  nlohmann::ordered_json meta;
  meta["wall_ms"] = report.wall_ms;
  nlohmann::ordered_json walls;
  for (const SuiteReport& s : report.suites) walls[s.suite] = s.wall_ms;
  meta["suite_wall_ms"] = std::move(walls);
  std::time_t now = std::time(nullptr);
  char stamp[32] = {0};
  std::tm parts{};
  gmtime_r(&now, &parts);
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &parts);
  meta["generated_at"] = stamp;
  j["meta"] = std::move(meta);
  return j;
}

int exit_status(const RunReport& report) {
  for (const SuiteReport& s : report.suites)
    if (s.failed()) return 1;
  return 0;
}

}  // namespace harness
}  // namespace ltk
