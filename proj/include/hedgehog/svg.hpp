#pragma once

#include <map>
#include <string>
#include <vector>

#include "hedgehog/tiling.hpp"

namespace hedgehog {

// Dominoes over the checkerboard; height labels at vertices when given.
std::string render_tiling_svg(const Domain& d, const Tiling& t, const HeightField* h = nullptr);

// Heat map of a real function on squares and/or vertices (drawn as small diamonds).
std::string render_field_svg(const Domain& d, const std::map<LatticeCoord, double>& values,
                             const std::string& title);

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;  // (delta, error)
};

// Log-log plot of error against mesh size.
std::string render_error_plot_svg(const std::vector<Series>& series, const std::string& title);

}  // namespace hedgehog
