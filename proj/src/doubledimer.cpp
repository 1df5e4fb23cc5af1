#include "hedgehog/doubledimer.hpp"

#include <cmath>
#include <random>

#include "hedgehog/observables.hpp"

namespace hedgehog {

DoubleDimerSystem::DoubleDimerSystem(const Domain& omega, LatticeCoord u0, LatticeCoord v0)
    : omega_(omega), u0_(u0), v0_(v0) {
  if (!omega.contains(u0) || !is_black_square(u0)) throw InputError("u0 must be a black square");
  if (!omega.contains(v0) || is_black_square(v0)) throw InputError("v0 must be a white square");
  if (omega.class_of(u0) == BoundaryClass::None || omega.class_of(v0) == BoundaryClass::None) {
    throw InputError("u0 and v0 must be adjacent to the boundary");
  }
  base_ = std::make_unique<KasteleynSystem>(omega);
  hat_ = std::make_unique<KasteleynSystem>(remove_squares(omega, {u0, v0}));
}

cplx DoubleDimerSystem::dbl_coupling(LatticeCoord u, LatticeCoord v) const {
  if (u == u0_ || v == v0_) throw InputError("removed square");
  return base_->coupling(u, v) - hat_->coupling(u, v);
}

double DoubleDimerSystem::rank1_minor_residual(int samples, std::uint64_t seed) const {
  const auto& bs = hat_->blacks();
  const auto& ws = hat_->whites();
  std::mt19937_64 rng(seed);
  auto pick = [&](const std::vector<LatticeCoord>& xs) {
    return xs[static_cast<std::size_t>(uniform01(rng) * xs.size())];
  };
  double worst = 0;
  for (int s = 0; s < samples; ++s) {
    LatticeCoord u = pick(bs), u2 = pick(bs), v = pick(ws), v2 = pick(ws);
    cplx m = dbl_coupling(u, v) * dbl_coupling(u2, v2) - dbl_coupling(u, v2) * dbl_coupling(u2, v);
    worst = std::max(worst, std::abs(m));
  }
  return worst;
}

DoubleDimerFactorization DoubleDimerSystem::factorization(double tol) const {
  const double h = omega_.delta;
  DoubleDimerFactorization out;
  out.F.delta = out.G.delta = h;
  const auto& col = base_->coupling_column(v0_);
  for (int i = 0; i < base_->size(); ++i) out.F.values[base_->blacks()[i]] = 4.0 * h * col(i);
  Eigen::VectorXcd row = base_->coupling_row(u0_);
  const cplx gs = -4.0 * h * kI * kLambdaBar;
  for (int j = 0; j < base_->size(); ++j) out.G.values[base_->whites()[j]] = gs * row(j);
  // zero extension on the outer layers
  for (auto s : omega_.squares) {
    for (auto dir : kEdgeDir) {
      LatticeCoord t = s + dir;
      if (omega_.contains(t)) continue;
      (is_black_square(t) ? out.F : out.G).values.emplace(t, 0.0);
    }
  }
  out.constant = 1.0 / (4.0 * h * out.G.at(v0_));
  Eigen::MatrixXcd Cb = base_->coupling_matrix();
  Eigen::MatrixXcd Ch = hat_->coupling_matrix();
  for (int i = 0; i < hat_->size(); ++i) {
    LatticeCoord u = hat_->blacks()[i];
    int bi = base_->black_index(u);
    cplx fu = out.F.at(u);
    for (int j = 0; j < hat_->size(); ++j) {
      LatticeCoord v = hat_->whites()[j];
      cplx dbl = Cb(bi, base_->white_index(v)) - Ch(i, j);
      out.residual = std::max(out.residual, std::abs(dbl - out.constant * fu * out.G.at(v)));
    }
  }
  if (out.residual > tol) throw ConsistencyError("double-dimer coupling is not rank one");
  return out;
}

std::map<LatticeCoord, double> DoubleDimerSystem::raw_expected_height(LatticeCoord base) const {
  auto a = expected_height_field(*base_, base);
  auto b = expected_height_field(*hat_, base);
  std::map<LatticeCoord, double> out;
  for (const auto& [z, hb] : b) out[z] = a.at(z) - hb;
  return out;
}

DblHeightFit dbl_expected_height(const DoubleDimerSystem& sys, LatticeCoord base,
                                 double exclusion_radius) {
  const Domain& dom = sys.base().domain();
  const double h = dom.delta;
  auto raw = sys.raw_expected_height(base);
  cplx pu = position(sys.u0(), h), pv = position(sys.v0(), h);
  double au = std::arg(pu), av = std::arg(pv);
  double span = std::fmod(std::fmod(av - au, 2 * M_PI) + 2 * M_PI, 2 * M_PI);
  // least squares for scale * raw + offset = label on boundary vertices
  double sxx = 0, sx = 0, sy = 0, sxy = 0, n = 0;
  std::vector<std::pair<double, double>> pts;
  for (auto z : boundary_vertices(dom)) {
    auto it = raw.find(z);
    if (it == raw.end()) continue;
    cplx p = position(z, h);
    if (std::abs(p - pu) < exclusion_radius || std::abs(p - pv) < exclusion_radius) continue;
    double rel = std::fmod(std::fmod(std::arg(p) - au, 2 * M_PI) + 2 * M_PI, 2 * M_PI);
    double label = rel < span ? 1.0 : 0.0;
    double x = it->second;
    sxx += x * x, sx += x, sy += label, sxy += x * label, n += 1;
    pts.push_back({x, label});
  }
  DblHeightFit fit;
  double det = n * sxx - sx * sx;
  if (n < 2 || std::abs(det) < 1e-300) throw ConsistencyError("degenerate boundary plateau fit");
  fit.scale = (n * sxy - sx * sy) / det;
  fit.offset = (sy - fit.scale * sx) / n;
  double ss = 0;
  for (auto [x, y] : pts) ss += std::pow(fit.scale * x + fit.offset - y, 2);
  fit.plateau_residual = std::sqrt(ss / n);
  for (const auto& [z, x] : raw) fit.normalized[z] = fit.scale * x + fit.offset;
  return fit;
}

std::pair<LatticeCoord, LatticeCoord> place_double_dimer_sources(const Domain& d, double angle_u,
                                                                 double angle_v) {
  cplx target_u = std::polar(1e6, angle_u), target_v = std::polar(1e6, angle_v);
  auto u0 = std::optional<LatticeCoord>{};
  auto v0 = std::optional<LatticeCoord>{};
  double bu = INFINITY, bv = INFINITY;
  for (auto s : d.squares) {
    auto cls = d.class_of(s);
    cplx p = position(s, d.delta);
    if (cls == BoundaryClass::Flat && is_black_square(s)) {
      double e = std::abs(std::arg(p / target_u));
      if (e < bu - 1e-12) bu = e, u0 = s;
    }
    if (cls == BoundaryClass::Plus && !is_black_square(s)) {
      double e = std::abs(std::arg(p / target_v));
      if (e < bv - 1e-12) bv = e, v0 = s;
    }
  }
  if (!u0 || !v0) throw InputError("domain has no suitable boundary squares");
  return {*u0, *v0};
}

}  // namespace hedgehog
