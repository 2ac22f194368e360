#pragma once

#include "plateau/driver.hpp"

#include <map>
#include <string>
#include <variant>
#include <vector>

namespace plateau {

/// Value of the config dialect: a small TOML subset with numbers, booleans,
/// strings and (nested) arrays of them.
struct ConfigValue {
  using Array = std::vector<ConfigValue>;
  std::variant<double, bool, std::string, Array> data;
  int line = 0;

  double number() const;
  bool boolean() const;
  const std::string& string() const;
  const Array& array() const;
  std::vector<double> numbers() const;
  Point point() const;
};

using ConfigSection = std::map<std::string, ConfigValue>;
using ConfigDocument = std::map<std::string, ConfigSection>;

/// Throws ParseError with the offending line.
ConfigDocument parse_config(const std::string& text);

/// Maps a parsed document onto a problem. Unknown sections or keys are
/// rejected with ParseError.
ProblemSpec problem_from_config(const ConfigDocument& doc);
ProblemSpec load_problem(const std::string& path);

}  // namespace plateau
