#pragma once

// Flat key=value text files: one pair per line, full-line # comments, blank
// lines ignored.  Keys keep file order so rewrites stay diff-friendly.

#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ltk::kv {

using Pairs = std::vector<std::pair<std::string, std::string>>;

inline std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline bool file_exists(const std::string& path) {
  std::ifstream in(path);
  return in.good();
}

// Throws when the file cannot be opened or a non-comment line has no '='.
inline Pairs read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("kv: cannot open " + path);
  Pairs out;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("kv: missing '=' at " + path + ":" + std::to_string(lineno));
    out.emplace_back(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
  return out;
}

inline std::map<std::string, std::string> to_map(const Pairs& pairs) {
  std::map<std::string, std::string> m;
  for (const auto& [k, v] : pairs) m[k] = v;
  return m;
}

inline void write_file(const std::string& path, const Pairs& pairs) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("kv: cannot write " + path);
  for (const auto& [k, v] : pairs) out << k << "=" << v << "\n";
  if (!out) throw std::runtime_error("kv: write failed for " + path);
}

}  // namespace ltk::kv
