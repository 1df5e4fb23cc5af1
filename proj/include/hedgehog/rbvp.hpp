#pragma once

#include "hedgehog/dca.hpp"
#include "hedgehog/kasteleyn.hpp"
#include "hedgehog/report.hpp"

namespace hedgehog {

struct RBVPResiduals {
  double shol = 0;          // projection mismatches, incl. ghost squares
  double dbar = 0;          // relative error of dbar F(v0) = lambda / (4 delta^2)
  double riemann = 0;       // max |Im F(z) sqrt(n(z))| on boundary diamonds
  double dirichlet = 0;     // max |H| on boundary white vertices
  double dirichlet_dashed = 0;  // same, restricted to dashed-lattice corners
  double closure = 0;
  double h_order = 0;       // max (H_black - H_white) over squares
  double leapfrog_white = 0;  // max negative part on white vertices
  double leapfrog_black = 0;  // max positive part on black vertices
  double h_black_boundary = 0;  // max H at boundary block centres
};

struct RBVPSolution {
  Domain domain;
  LatticeCoord v0;
  bool modified = true;
  SHoloField check;  // C(., v0) / delta extended s-holomorphically
  SHoloField field;
  PrimitiveH H;
  RBVPResiduals residuals;
};

SHoloField boundary_modify(const Domain& dom, const SHoloField& check);

RBVPSolution solve_rbvp(const KasteleynSystem& sys, LatticeCoord v0, bool modify = true);
RBVPSolution solve_rbvp(const Domain& dom, LatticeCoord v0, bool modify = true);

// Recomputes all residuals of a (possibly altered) solution.
RBVPResiduals rbvp_residuals(const Domain& dom, LatticeCoord v0, const SHoloField& F,
                             PrimitiveH* H_out = nullptr);

Report verify_rbvp(const RBVPSolution& sol, double tol = 1e-10);

// K C = I, probability sums, and on hedgehog domains the 1/2-sums and the
// RBVP checklist for the source v0 (nearest interior W0 square to the centroid by default).
Report identity_suite(const KasteleynSystem& sys, std::optional<LatticeCoord> v0 = {},
                      double tol = 1e-10);

// Central interior W0 square closest to z.
LatticeCoord interior_w0_near(const Domain& dom, cplx z);

}  // namespace hedgehog
