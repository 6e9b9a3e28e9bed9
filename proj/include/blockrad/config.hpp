#pragma once

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace blockrad {

// Plain "key = value" file; '#' starts a comment, blank lines are ignored, later keys win.
// Lists are separated by commas or whitespace.
class Config {
 public:
  static Config parse(std::istream& in, const std::string& origin = "<stream>");
  static Config load(const std::string& path);

  void set(const std::string& key, const std::string& value) { values_[key] = value; }
  bool has(const std::string& key) const { return values_.count(key) != 0; }

  std::string get(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<double> get_list(const std::string& key, const std::vector<double>& fallback) const;

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

// Error in a configuration file or value (a usage error for the CLI).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace blockrad
