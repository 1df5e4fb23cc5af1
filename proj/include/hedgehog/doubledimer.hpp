#pragma once

#include <map>
#include <memory>

#include "hedgehog/dca.hpp"
#include "hedgehog/kasteleyn.hpp"

namespace hedgehog {

struct DoubleDimerFactorization {
  BlackField F;  // on black squares (0 outside), dbar F(v0) = lambda
  BlackField G;  // on white squares (0 outside), dbar G(u0) = i
  cplx constant;
  double residual = 0;  // max |C_dbl - const F G|
};

// Dimers on Omega and on Omega minus {u0, v0} (a boundary black and white square).
class DoubleDimerSystem {
 public:
  DoubleDimerSystem(const Domain& omega, LatticeCoord u0, LatticeCoord v0);

  const KasteleynSystem& base() const { return *base_; }
  const KasteleynSystem& punctured() const { return *hat_; }
  LatticeCoord u0() const { return u0_; }
  LatticeCoord v0() const { return v0_; }

  cplx dbl_coupling(LatticeCoord u, LatticeCoord v) const;
  // max |minor| over sampled 2x2 minors of C_dbl (deterministic sample).
  double rank1_minor_residual(int samples = 50, std::uint64_t seed = 1) const;
  DoubleDimerFactorization factorization(double tol = 1e-8) const;

  // E[h_Omega] - E[h_Omega_hat] at vertices of the punctured domain.
  std::map<LatticeCoord, double> raw_expected_height(LatticeCoord base) const;

 private:
  Domain omega_;
  LatticeCoord u0_, v0_;
  std::unique_ptr<KasteleynSystem> base_, hat_;
};

struct DblHeightFit {
  std::map<LatticeCoord, double> normalized;
  double scale = 0, offset = 0;  // normalized = scale * raw + offset
  double plateau_residual = 0;   // rms misfit on boundary plateaus
};

// Affine normalization mapping boundary plateaus to 1 on the counterclockwise
// arc from u0 to v0 and 0 elsewhere.
DblHeightFit dbl_expected_height(const DoubleDimerSystem& sys, LatticeCoord base,
                                 double exclusion_radius);

// Boundary placement on a disk approximation: u0 black on a lower spike run
// nearest angle_u, v0 white on a right spike run nearest angle_v.
std::pair<LatticeCoord, LatticeCoord> place_double_dimer_sources(const Domain& d, double angle_u,
                                                                 double angle_v);

}  // namespace hedgehog
