#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "acdc/types.hpp"

namespace acdc {

/// Flat dotted-key config file: one `key = value` per line, `#` comments,
/// blank lines ignored.  Values are untyped strings until queried.
class Config {
 public:
  Config() = default;

  static Config from_file(const std::string& path);
  static Config from_string(const std::string& text);

  bool has(const std::string& key) const;
  void set(const std::string& key, const std::string& value);

  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& def) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double def) const;
  long get_long(const std::string& key, long def) const;
  bool get_bool(const std::string& key, bool def) const;
  /// Comma-separated list of reals.
  std::vector<double> get_doubles(const std::string& key) const;
  /// Box syntax: per-dimension "lo,hi" pairs separated by ';', e.g.
  /// "0,20; 0.01,5".
  ParamBounds get_box(const std::string& key) const;

  const std::map<std::string, std::string>& entries() const { return map_; }

 private:
  std::map<std::string, std::string> map_;
};

}  // namespace acdc
