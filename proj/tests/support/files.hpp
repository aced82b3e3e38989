#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qbsf/error.hpp"
#include "qbsf/textio.hpp"

namespace qbsf::test {

inline std::string data_path(const std::string& rel) { return std::string(QBSF_TEST_DATA) + "/" + rel; }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline std::vector<std::string> files_in(const std::string& rel) {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(data_path(rel))) out.push_back(e.path().string());
  std::sort(out.begin(), out.end());
  return out;
}

/// Outcome of reading one malformed DQDIMACS file whose first line is
/// `c expect <ErrorCode> <line>` (line 0: no location expected).
struct MalformedCase {
  std::string file;
  std::string expected_code, actual_code;
  std::size_t expected_line = 0, actual_line = 0;

  bool ok() const { return expected_code == actual_code && expected_line == actual_line; }
};

inline MalformedCase check_malformed(const std::string& path) {
  MalformedCase c;
  c.file = std::filesystem::path(path).filename().string();
  const std::string text = read_file(path);
  std::istringstream head(text.substr(0, text.find('\n')));
  std::string cmark, expect;
  head >> cmark >> expect >> c.expected_code >> c.expected_line;
  try {
    (void)parse_dqdimacs(text);
    c.actual_code = "accepted";
  } catch (const Error& e) {
    c.actual_code = std::string(to_string(e.code()));
    std::string what = e.what();
    const std::string prefix = c.actual_code + ": ";
    if (what.rfind(prefix, 0) == 0) what = what.substr(prefix.size());
    const auto colon = what.find(':');
    if (colon != std::string::npos && colon > 0 &&
        std::all_of(what.begin(), what.begin() + static_cast<std::ptrdiff_t>(colon), ::isdigit))
      c.actual_line = std::stoul(what.substr(0, colon));
  }
  return c;
}

}  // namespace qbsf::test
