#include "acdc/config.hpp"

#include <fstream>
#include <sstream>

namespace acdc {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, const std::string& raw) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(raw, &pos);
    if (pos != raw.size()) throw std::invalid_argument(raw);
    return v;
  } catch (const std::exception&) {
    throw DomainError("config: key '" + key + "' is not a real number: '" +
                      raw + "'");
  }
}

}  // namespace

Config Config::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw AcdcError("config: cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return from_string(buffer.str());
}

Config Config::from_string(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw DomainError("config: line " + std::to_string(lineno) +
                        " has no '='");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw DomainError("config: line " + std::to_string(lineno) +
                        " has an empty key");
    cfg.map_[key] = value;
  }
  return cfg;
}

bool Config::has(const std::string& key) const { return map_.count(key) > 0; }

void Config::set(const std::string& key, const std::string& value) {
  map_[key] = value;
}

std::string Config::get_string(const std::string& key) const {
  const auto it = map_.find(key);
  if (it == map_.end())
    throw DomainError("config: missing required key '" + key + "'");
  return it->second;
}

std::string Config::get_string(const std::string& key,
                               const std::string& def) const {
  const auto it = map_.find(key);
  return it == map_.end() ? def : it->second;
}

double Config::get_double(const std::string& key) const {
  return parse_double(key, get_string(key));
}

double Config::get_double(const std::string& key, double def) const {
  const auto it = map_.find(key);
  return it == map_.end() ? def : parse_double(key, it->second);
}

long Config::get_long(const std::string& key, long def) const {
  const auto it = map_.find(key);
  if (it == map_.end()) return def;
  try {
    std::size_t pos = 0;
    const long v = std::stol(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument(it->second);
    return v;
  } catch (const std::exception&) {
    throw DomainError("config: key '" + key + "' is not an integer: '" +
                      it->second + "'");
  }
}

bool Config::get_bool(const std::string& key, bool def) const {
  const auto it = map_.find(key);
  if (it == map_.end()) return def;
  const std::string& v = it->second;
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw DomainError("config: key '" + key + "' is not a boolean: '" + v + "'");
}

std::vector<double> Config::get_doubles(const std::string& key) const {
  const std::string raw = get_string(key);
  std::vector<double> values;
  std::istringstream in(raw);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    values.push_back(parse_double(key, item));
  }
  if (values.empty())
    throw DomainError("config: key '" + key + "' has no values");
  return values;
}

ParamBounds Config::get_box(const std::string& key) const {
  const std::string raw = get_string(key);
  std::vector<std::pair<double, double>> dims;
  std::istringstream in(raw);
  std::string part;
  while (std::getline(in, part, ';')) {
    part = trim(part);
    if (part.empty()) continue;
    const auto comma = part.find(',');
    if (comma == std::string::npos)
      throw DomainError("config: box key '" + key + "' needs 'lo,hi' pairs");
    const double lo = parse_double(key, trim(part.substr(0, comma)));
    const double hi = parse_double(key, trim(part.substr(comma + 1)));
    if (!(lo < hi))
      throw DomainError("config: box key '" + key + "' needs lo < hi");
    dims.emplace_back(lo, hi);
  }
  if (dims.empty()) throw DomainError("config: box key '" + key + "' is empty");
  ParamBounds box;
  box.lower.resize(static_cast<int>(dims.size()));
  box.upper.resize(static_cast<int>(dims.size()));
  for (std::size_t j = 0; j < dims.size(); ++j) {
    box.lower[static_cast<int>(j)] = dims[j].first;
    box.upper[static_cast<int>(j)] = dims[j].second;
  }
  return box;
}

}  // namespace acdc
