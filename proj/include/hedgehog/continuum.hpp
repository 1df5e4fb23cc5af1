#pragma once

#include <vector>

#include "hedgehog/lattice.hpp"

namespace hedgehog {

struct PoleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class RefKind {
  DiskInterior,  // f_D^0(z) = (c lambda / z + conj(c lambda)) / 2pi, c = phase
  DiskBoundary,  // f_D^w(z) = i sqrt(w) / (2pi (z - w)), |w| = 1
  F0Disk,
  F1Disk,
  F0Half,
  F1Half,
  FPlus,
  FMinus,
  HmDisk,    // harmonic measure of the counterclockwise arc [arc_from, arc_to]
  GreenDisk  // (1/2pi) log |(z - w) / (1 - z conj(w))|
};

struct ReferenceFunction {
  RefKind kind = RefKind::DiskInterior;
  cplx w = 0.0;
  double arc_from = 0, arc_to = 0;
  cplx phase = 1.0;

  cplx operator()(cplx z) const;
};

// z -> (a z + b) / (c z + d)
struct Mobius {
  cplx a = 1.0, b = 0.0, c = 0.0, d = 1.0;

  cplx operator()(cplx z) const;
  cplx derivative(cplx z) const;
  // Square root of the derivative, continued from the principal value at anchor.
  cplx sqrt_derivative(cplx z, cplx anchor) const;

  static Mobius disk_automorphism(cplx v);  // v -> 0, derivative at v positive
  static Mobius halfplane_to_disk();         // z -> (z - i) / (z + i)
};

// f(phi(z), phi(w)) (phi'(z))^(1/2) (phi'(w))^(1/2); the second factor is
// conjugated for conj_second (f_minus-type covariance).
struct Transplanted {
  ReferenceFunction base;  // parameter w already mapped by phi
  Mobius phi;
  cplx point = 0.0;  // pre-image normalisation point
  bool conj_second = false;
  double scale = 1.0;

  cplx operator()(cplx z) const;
};

Transplanted transplant(ReferenceFunction ref, const Mobius& phi, cplx point, bool conj_second = false);

// f_Omega^v for the unit disk (interior singularity v).
Transplanted disk_solution(cplx v, cplx phase = 1.0);

double harmonic_measure_disk(cplx z, double arc_from, double arc_to);
double green_disk(cplx z, cplx w);
double gff_moment(const std::vector<cplx>& points);
double gff_covariance(cplx z1, cplx z2);

// Relative deviation of w -> int_0^w Re[f^{v0} f^{u0} dz] from an affine image
// of the harmonic measure of the arc (u0, v0).
double product_hm_residual(double angle_u0, double angle_v0, const std::vector<cplx>& ws);

}  // namespace hedgehog
