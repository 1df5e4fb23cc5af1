#pragma once

#include <json.hpp>
#include <string>
#include <vector>

namespace hedgehog {

struct Check {
  std::string name;
  bool pass = false;
  double residual = 0;
  double tolerance = 0;
  std::string location;
};

// Structured verification/experiment output.
struct Report {
  std::string title;
  std::vector<Check> checks;
  nlohmann::json data = nlohmann::json::object();

  // Adds a check that passes when residual <= tolerance.
  Check& add(const std::string& name, double residual, double tolerance, std::string location = {});
  Check& add_flag(const std::string& name, bool pass, std::string location = {});
  const Check* find(const std::string& name) const;
  bool all_pass() const;
  nlohmann::json to_json() const;
};

// 64-bit FNV-1a of a string, as 16 hex digits.
std::string fnv1a_hex(const std::string& text);

}  // namespace hedgehog
