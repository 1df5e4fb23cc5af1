#include "hedgehog/report.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>

namespace hedgehog {

Check& Report::add(const std::string& name, double residual, double tolerance, std::string location) {
  checks.push_back({name, std::isfinite(residual) && residual <= tolerance, residual, tolerance,
                    std::move(location)});
  return checks.back();
}

Check& Report::add_flag(const std::string& name, bool pass, std::string location) {
  checks.push_back({name, pass, pass ? 0.0 : 1.0, 0.0, std::move(location)});
  return checks.back();
}

const Check* Report::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

bool Report::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

nlohmann::json Report::to_json() const {
  nlohmann::json j;
  j["title"] = title;
  nlohmann::json cs = nlohmann::json::object();
  for (const auto& c : checks) {
    cs[c.name] = {{"pass", c.pass}, {"residual", c.residual}, {"tolerance", c.tolerance},
                  {"location", c.location}};
  }
  j["checks"] = cs;
  j["pass"] = all_pass();
  if (!data.empty()) j["data"] = data;
  return j;
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace hedgehog
