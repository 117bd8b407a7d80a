#pragma once

// Dataset serialisation: CSV with 17-significant-digit floats (round-trip
// exact for binary64, so repeated runs are byte-identical), JSON reports via
// nlohmann/json, and the run manifest written next to every output.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sleeptop/errors.hpp"

namespace sleeptop {

using json = nlohmann::json;

/// %.17g: the shortest fixed choice that round-trips every double.
inline std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw error("cannot open " + path.string() + " for writing");
  out << content;
  if (!out) throw error("failed writing " + path.string());
}

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error("cannot open " + path.string());
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

/// FNV-1a 64-bit digest of a byte string, as 16 hex characters.
inline std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

class CsvBuilder {
 public:
  explicit CsvBuilder(std::initializer_list<const char*> header) {
    bool first = true;
    for (const char* h : header) {
      if (!first) text_ += ',';
      text_ += h;
      first = false;
    }
    text_ += '\n';
  }

  CsvBuilder& value(double v) {
    sep();
    text_ += format_full(v);
    return *this;
  }

  CsvBuilder& value(const std::string& v) {
    sep();
    text_ += v;
    return *this;
  }

  CsvBuilder& end_row() {
    text_ += '\n';
    row_open_ = false;
    return *this;
  }

  const std::string& str() const { return text_; }

 private:
  void sep() {
    if (row_open_) text_ += ',';
    row_open_ = true;
  }

  std::string text_;
  bool row_open_ = false;
};

}  // namespace sleeptop
