#pragma once

#include <json.hpp>
#include <string>

#include "hedgehog/dca.hpp"
#include "hedgehog/tiling.hpp"

namespace hedgehog {

struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// {"delta", "kind": "hedgehog" | "even", "cells" | "squares"}, coordinates sorted.
nlohmann::json domain_to_json(const Domain& d);
Domain domain_from_json(const nlohmann::json& j);

// [[u_n, u_m, v_n, v_m], ...] in black-square order.
nlohmann::json tiling_to_json(const Tiling& t);
Tiling tiling_from_json(const nlohmann::json& j);

// n,m,Re,Im rows in square order.
std::string coupling_csv(const KasteleynSystem& sys, LatticeCoord v);
// x,y,H rows in vertex order; x, y are plane coordinates.
std::string h_csv(const PrimitiveH& H);

nlohmann::json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// Shortest round-trip decimal form, stable across runs.
std::string fmt_double(double x);

}  // namespace hedgehog
