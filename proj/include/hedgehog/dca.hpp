#pragma once

#include <map>
#include <optional>

#include "hedgehog/kasteleyn.hpp"
#include "hedgehog/lattice.hpp"

namespace hedgehog {

struct BoundaryAccessError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ConsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct MonodromyError : std::runtime_error {
  LatticeCoord worst;
  MonodromyError(const std::string& w, LatticeCoord at) : std::runtime_error(w), worst(at) {}
};

using FieldMap = std::unordered_map<LatticeCoord, cplx, CoordHash>;

// Complex values on squares of one colour. The difference operators only use
// the diagonal neighbours, so the same type serves black and white functions.
struct BlackField {
  double delta = 1.0;
  FieldMap values;

  bool has(LatticeCoord c) const { return values.count(c) != 0; }
  cplx at(LatticeCoord c) const;
  // max |Im| on B0 and |Re| on B1.
  double admissibility_defect() const;
};

cplx dbar(const BlackField& F, LatticeCoord v);
cplx d(const BlackField& F, LatticeCoord v);
cplx laplacian(const BlackField& F, LatticeCoord u);

struct BoundaryDiamond {
  cplx value;
  cplx ghost_black;
  cplx ghost_white;
};

// Values on diamond vertices and squares. Boundary diamonds are kept per
// (block, edge) incidence since a slit vertex is seen from two sides.
struct SHoloField {
  double delta = 1.0;
  FieldMap squares;
  FieldMap diamonds;
  std::map<std::pair<LatticeCoord, int>, BoundaryDiamond> boundary;
  std::optional<LatticeCoord> singular;

  // Value at diamond vertex z as seen from square a.
  cplx diamond_for(const Domain& dom, LatticeCoord a, LatticeCoord z) const;
};

// Black field from a coupling column: F(u) = scale * C(u, v).
BlackField field_from_column(const KasteleynSystem& sys, LatticeCoord v, cplx scale);

SHoloField to_shol(const Domain& dom, const BlackField& F, std::optional<LatticeCoord> v0 = {},
                   double tol = 1e-8);
// max |Proj_tau(a) F(z) - F(a)| over squares a (except the singular one) and their diamonds.
double shol_residual(const Domain& dom, const SHoloField& F, LatticeCoord* worst = nullptr);
// max over interior diamonds of the |F(z)|^2 identities.
double modulus_identity_residual(const Domain& dom, const SHoloField& F);

struct PrimitiveH {
  double delta = 1.0;
  std::unordered_map<LatticeCoord, double, CoordHash> values;
  LatticeCoord base;
  double closure_residual = 0;  // worst increment mismatch after integration
  double imag_residual = 0;     // worst |Im| of an increment

  bool has(LatticeCoord z) const { return values.count(z) != 0; }
  double at(LatticeCoord z) const;
};

PrimitiveH primitive_H(const Domain& dom, const SHoloField& F, LatticeCoord base,
                       double tol = 1e-9);

// Leap-frog Laplacian at a white vertex (plain) or black vertex (boundary
// edges weighted 2(sqrt2 - 1) with value 0 beyond them), normalised by c_z.
double leapfrog(const Domain& dom, const PrimitiveH& H, LatticeCoord z);
double leapfrog_weight_sum(const Domain& dom, LatticeCoord z);

BlackField schwarz_reflect(const BlackField& upper, double tol = 1e-10);

// Windowed full-plane kernel: dbar F = lambda / (4 delta^2) at v0, rim values
// from the projected asymptotic lambda / (pi (u - v0)). Window is a disk of radius R.
BlackField plane_kernel(LatticeCoord v0, double delta, double R);
// Same on a prescribed window domain (must contain v0 in its interior).
BlackField plane_kernel_on(const Domain& window, LatticeCoord v0);
// Half-plane kernel for v0 above the real axis m = 0.
BlackField halfplane_kernel(LatticeCoord v0, double delta, double R);

// Projected asymptotic value used on window rims.
cplx plane_asymptotic(LatticeCoord u, LatticeCoord v0, double delta);

}  // namespace hedgehog
