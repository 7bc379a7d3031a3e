#pragma once

#include <map>
#include <string>

namespace sios {

/// INI-style configuration: "[section]" headers group "key = value" lines;
/// lookups use "section.key". '#' or ';' starts a comment, blank lines are
/// skipped, and on duplicate keys the last value wins.
class Config {
 public:
  Config() = default;

  static Config parse_file(const std::string& path);
  static Config parse_string(const std::string& text, const std::string& origin = "<string>");

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  long long get_int(const std::string& key, long long fallback) const;
  /// Accepts true/false, yes/no, on/off, 1/0 in any case.
  bool get_bool(const std::string& key, bool fallback) const;

  const std::map<std::string, std::string>& entries() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace sios
