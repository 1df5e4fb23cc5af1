#include "hedgehog/continuum.hpp"

#include <cmath>
#include <functional>

namespace hedgehog {

namespace {

void guard(cplx z, cplx w) {
  if (std::abs(z - w) < 1e-14) throw PoleError("evaluation at the singularity");
}

}  // namespace

cplx ReferenceFunction::operator()(cplx z) const {
  const double tp = 2 * M_PI;
  switch (kind) {
    case RefKind::DiskInterior:
      guard(z, 0.0);
      return (phase * kLambda / z + std::conj(phase * kLambda)) / tp;
    case RefKind::DiskBoundary:
      guard(z, w);
      return kI * std::sqrt(w) / (tp * (z - w));
    case RefKind::F0Disk:
      guard(z, w);
      return (1.0 / (z - w) + 1.0 / (1.0 - std::conj(w) * z)) / tp;
    case RefKind::F1Disk:
      guard(z, w);
      return (1.0 / (z - w) - 1.0 / (1.0 - std::conj(w) * z)) / tp;
    case RefKind::F0Half:
      guard(z, w);
      return (1.0 / (z - w) + kI / (z - std::conj(w))) / tp;
    case RefKind::F1Half:
      guard(z, w);
      return (1.0 / (z - w) - kI / (z - std::conj(w))) / tp;
    case RefKind::FPlus:
      guard(z, w);
      return 1.0 / (M_PI * (z - w));
    case RefKind::FMinus:
      guard(z, std::conj(w));
      return kI / (M_PI * (z - std::conj(w)));
    case RefKind::HmDisk:
      return harmonic_measure_disk(z, arc_from, arc_to);
    case RefKind::GreenDisk:
      guard(z, w);
      return green_disk(z, w);
  }
  return 0.0;
}

cplx Mobius::operator()(cplx z) const {
  cplx den = c * z + d;
  if (std::abs(den) < 1e-300) throw PoleError("Mobius pole");
  return (a * z + b) / den;
}

cplx Mobius::derivative(cplx z) const {
  cplx den = c * z + d;
  return (a * d - b * c) / (den * den);
}

cplx Mobius::sqrt_derivative(cplx z, cplx anchor) const {
  // (phi')^(1/2) = s / (c z + d) is single valued away from the pole.
  cplx s = std::sqrt(a * d - b * c);
  if (std::abs(s / (c * anchor + d) - std::sqrt(derivative(anchor))) > 1e-12 * std::abs(s)) s = -s;
  return s / (c * z + d);
}

Mobius Mobius::disk_automorphism(cplx v) { return {1.0, -v, -std::conj(v), 1.0}; }

Mobius Mobius::halfplane_to_disk() { return {1.0, -kI, 1.0, kI}; }

cplx Transplanted::operator()(cplx z) const {
  cplx sz = phi.sqrt_derivative(z, point);
  cplx sw = phi.sqrt_derivative(point, point);
  if (conj_second) sw = std::conj(sw);
  return scale * base(phi(z)) * sz * sw;
}

Transplanted transplant(ReferenceFunction ref, const Mobius& phi, cplx point, bool conj_second) {
  if (ref.kind != RefKind::DiskInterior) ref.w = phi(point);
  Transplanted t;
  t.base = ref;
  t.phi = phi;
  t.point = point;
  t.conj_second = conj_second;
  return t;
}

Transplanted disk_solution(cplx v, cplx phase) {
  ReferenceFunction f{RefKind::DiskInterior};
  f.phase = phase;
  return transplant(f, Mobius::disk_automorphism(v), v);
}

double harmonic_measure_disk(cplx z, double a, double b) {
  cplx r = (std::polar(1.0, b) - z) / (std::polar(1.0, a) - z);
  double ang = std::arg(r);
  if (ang < 0) ang += 2 * M_PI;
  double span = std::fmod(std::fmod(b - a, 2 * M_PI) + 2 * M_PI, 2 * M_PI);
  return ang / M_PI - span / (2 * M_PI);
}

double green_disk(cplx z, cplx w) {
  if (std::abs(z - w) < 1e-14) throw PoleError("coincident points");
  return std::log(std::abs((z - w) / (1.0 - z * std::conj(w)))) / (2 * M_PI);
}

double gff_moment(const std::vector<cplx>& pts) {
  if (pts.size() % 2) throw std::invalid_argument("moment order must be even");
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (std::abs(pts[i] - pts[j]) < 1e-14) throw PoleError("coincident points");
  std::vector<bool> used(pts.size(), false);
  std::function<double()> pairings = [&]() -> double {
    std::size_t i = 0;
    while (i < pts.size() && used[i]) ++i;
    if (i == pts.size()) return 1.0;
    used[i] = true;
    double total = 0;
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (used[j]) continue;
      used[j] = true;
      total += green_disk(pts[i], pts[j]) * pairings();
      used[j] = false;
    }
    used[i] = false;
    return total;
  };
  return std::pow(-16.0 / M_PI, static_cast<double>(pts.size() / 2)) * pairings();
}

double gff_covariance(cplx z1, cplx z2) { return gff_moment({z1, z2}); }

double product_hm_residual(double angle_u0, double angle_v0, const std::vector<cplx>& ws) {
  ReferenceFunction f{RefKind::DiskBoundary, std::polar(1.0, angle_v0)};
  ReferenceFunction g{RefKind::DiskBoundary, std::polar(1.0, angle_u0)};
  // composite 8-point Gauss-Legendre along the segment [0, w]
  static const double x8[] = {0.1834346424956498, 0.5255324099163290, 0.7966664774136267,
                              0.9602898564975363};
  static const double w8[] = {0.3626837833783620, 0.3137066458778873, 0.2223810344533745,
                              0.1012285362903763};
  std::vector<double> I, hm;
  double h0 = harmonic_measure_disk(0.0, angle_u0, angle_v0);
  for (cplx w : ws) {
    const int panels = 256;
    double s = 0;
    for (int p = 0; p < panels; ++p) {
      double lo = double(p) / panels, hi = double(p + 1) / panels;
      double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
      for (int q = 0; q < 4; ++q) {
        for (double sg : {-1.0, 1.0}) {
          cplx z = w * (mid + sg * half * x8[q]);
          s += w8[q] * half * std::real(f(z) * g(z) * w);
        }
      }
    }
    I.push_back(s);
    hm.push_back(harmonic_measure_disk(w, angle_u0, angle_v0) - h0);
  }
  double num = 0, den = 0, imax = 0;
  for (std::size_t i = 0; i < I.size(); ++i) num += I[i] * hm[i], den += hm[i] * hm[i];
  double A = den > 0 ? num / den : 0;
  double worst = 0;
  for (std::size_t i = 0; i < I.size(); ++i) {
    worst = std::max(worst, std::abs(I[i] - A * hm[i]));
    imax = std::max(imax, std::abs(I[i]));
  }
  return imax > 0 ? worst / imax : 0;
}

}  // namespace hedgehog
