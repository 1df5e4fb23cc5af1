#include "hedgehog/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace hedgehog {

using nlohmann::json;

std::string fmt_double(double x) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

json domain_to_json(const Domain& d) {
  json j;
  j["delta"] = d.delta;
  if (d.is_hedgehog) {
    j["kind"] = "hedgehog";
    auto cells = d.cells;
    std::sort(cells.begin(), cells.end());
    j["cells"] = json::array();
    for (auto [a, b] : cells) j["cells"].push_back({a, b});
  } else {
    j["kind"] = "even";
    j["squares"] = json::array();
    for (auto s : d.squares) j["squares"].push_back({s.n, s.m});
    if (!d.slits.empty()) {
      j["slits"] = json::array();
      for (auto [u, v] : d.slits) j["slits"].push_back({u.n, u.m, v.n, v.m});
    }
  }
  return j;
}

namespace {

template <class T>
T need(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw FormatError(std::string("bad field '") + key + "'");
  }
}

}  // namespace

Domain domain_from_json(const json& j) {
  double delta = need<double>(j, "delta");
  if (!(delta > 0)) throw FormatError("delta must be positive");
  auto kind = need<std::string>(j, "kind");
  if (kind == "hedgehog") {
    auto cells = need<std::vector<std::pair<int, int>>>(j, "cells");
    return build_hedgehog(delta, cells);
  }
  if (kind == "even") {
    std::vector<LatticeCoord> sq;
    for (auto& p : need<std::vector<std::array<int, 2>>>(j, "squares")) sq.push_back({p[0], p[1]});
    std::vector<std::pair<LatticeCoord, LatticeCoord>> slits;
    if (j.contains("slits")) {
      for (auto& p : need<std::vector<std::array<int, 4>>>(j, "slits"))
        slits.push_back({{p[0], p[1]}, {p[2], p[3]}});
    }
    return make_even_domain(delta, sq, slits);
  }
  throw FormatError("unknown domain kind '" + kind + "'");
}

json tiling_to_json(const Tiling& t) {
  json j = json::array();
  for (auto [u, v] : t.partner) j.push_back({u.n, u.m, v.n, v.m});
  return j;
}

Tiling tiling_from_json(const json& j) {
  if (!j.is_array()) throw FormatError("tiling must be an array");
  Tiling t;
  try {
    for (auto& e : j) {
      auto a = e.get<std::array<int, 4>>();
      t.partner[{a[0], a[1]}] = {a[2], a[3]};
    }
  } catch (const json::exception&) {
    throw FormatError("tiling entries must be [u_n, u_m, v_n, v_m]");
  }
  return t;
}

std::string coupling_csv(const KasteleynSystem& sys, LatticeCoord v) {
  const auto& col = sys.coupling_column(v);
  std::ostringstream os;
  os << "n,m,Re,Im\n";
  for (int i = 0; i < sys.size(); ++i) {
    auto u = sys.blacks()[i];
    os << u.n << ',' << u.m << ',' << fmt_double(col(i).real()) << ',' << fmt_double(col(i).imag())
       << '\n';
  }
  return os.str();
}

std::string h_csv(const PrimitiveH& H) {
  std::vector<LatticeCoord> keys;
  for (const auto& kv : H.values) keys.push_back(kv.first);
  std::sort(keys.begin(), keys.end());
  std::ostringstream os;
  os << "x,y,H\n";
  for (auto z : keys) {
    cplx p = position(z, H.delta);
    os << fmt_double(p.real()) << ',' << fmt_double(p.imag()) << ',' << fmt_double(H.values.at(z))
       << '\n';
  }
  return os.str();
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace hedgehog
