#pragma once

#include <functional>
#include <map>

#include "hedgehog/kasteleyn.hpp"
#include "hedgehog/report.hpp"
#include "hedgehog/tiling.hpp"

namespace hedgehog {

struct PathStep {
  LatticeCoord from, to;
  int sign = 1;  // +1 when a black square is on the left
  bool crossable = false;
  LatticeCoord black, white;  // the domino that would cross the edge
};

struct PathSpec {
  std::vector<LatticeCoord> vertices;
};

// Validates the path and lists its steps.
std::vector<PathStep> path_steps(const Domain& d, const PathSpec& path);
bool is_boundary_edge(const Domain& d, LatticeCoord x, LatticeCoord y);
std::vector<LatticeCoord> boundary_vertices(const Domain& d);
// Shortest vertex path from the boundary to z (starts on the boundary).
PathSpec path_from_boundary(const Domain& d, LatticeCoord z);
// Nearest domain vertex to a plane point.
LatticeCoord nearest_vertex(const Domain& d, cplx z);

double expected_height(const KasteleynSystem& sys, const PathSpec& path);
double height_covariance_exact(const KasteleynSystem& sys, const PathSpec& p1, const PathSpec& p2);

// E[h] at every vertex, integrated from base with the exact edge probabilities.
std::map<LatticeCoord, double> expected_height_field(const KasteleynSystem& sys, LatticeCoord base);

struct AsymptoticsPoint {
  double delta;
  double error;
};

// sup over black squares in 0.25 <= |u| <= 0.5 of the coupling-function
// asymptotic remainder on unit-disk approximations.
std::vector<AsymptoticsPoint> coupling_asymptotics_check(const std::vector<double>& meshes, cplx v,
                                                         SquareType vtype = SquareType::W0,
                                                         double window = 2.0);

}  // namespace hedgehog
