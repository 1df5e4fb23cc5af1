#include "hedgehog/rbvp.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace hedgehog {

namespace {

LatticeCoord tip_square(LatticeCoord p, BoundaryClass c) {
  switch (c) {
    case BoundaryClass::Plus: return p + LatticeCoord{1, 0};
    case BoundaryClass::Minus: return p - LatticeCoord{1, 0};
    case BoundaryClass::Sharp: return p + LatticeCoord{0, 1};
    case BoundaryClass::Flat: return p - LatticeCoord{0, 1};
    default: throw GeometryError("block is not a spike");
  }
}

std::string where(LatticeCoord c) {
  return "(" + std::to_string(c.n) + "," + std::to_string(c.m) + ")";
}

}  // namespace

// On each spike edge the side square that is not the tip keeps its value
// kappa = tau r. The Riemann condition Im[F(z) sqrt(n)] = 0 together with
// Proj_tau F(z) = kappa fixes F(z); the tip and the two outside squares are
// its projections. This reproduces the four side tables, e.g. on an upper
// spike F(u~_I) = i(1 - sqrt2) F(u_R).
SHoloField boundary_modify(const Domain& dom, const SHoloField& check) {
  SHoloField out = check;
  for (const auto& [p, info] : dom.blocks) {
    if (info.cls == BoundaryClass::None) continue;
    LatticeCoord tip = tip_square(p, info.cls);
    for (int k = 0; k < 4; ++k) {
      if (!(info.exposed & (1u << k))) continue;
      auto es = edge_squares(p, k);
      LatticeCoord kept = es.inside_black == tip ? es.inside_white : es.inside_black;
      if (kept == tip) throw GeometryError("spike edge without a side square at " + where(p));
      cplx t = tau(classify_square(kept));
      double r = std::real(check.squares.at(kept) * std::conj(t));
      cplx w = t * std::sqrt(edge_normal(k));
      double im = -r * w.imag() / w.real();
      cplx fz = t * cplx(r, im);
      out.boundary[{p, k}] = {fz, proj(fz, tau(classify_square(es.outside_black))),
                              proj(fz, tau(classify_square(es.outside_white)))};
      out.squares[tip] = proj(fz, tau(classify_square(tip)));
    }
  }
  return out;
}

LatticeCoord interior_w0_near(const Domain& dom, cplx z) {
  auto v = nearest_square(dom, z, SquareType::W0, [&](LatticeCoord s) {
    return dom.is_interior(s) && dom.class_of(s) == BoundaryClass::None;
  });
  if (!v) throw InputError("domain has no interior W0 square");
  return *v;
}

RBVPResiduals rbvp_residuals(const Domain& dom, LatticeCoord v0, const SHoloField& F,
                             PrimitiveH* H_out) {
  RBVPResiduals r;
  const double h = dom.delta;
  r.shol = shol_residual(dom, F);

  BlackField B;
  B.delta = h;
  for (auto dir : kEdgeDir) B.values[v0 + dir] = F.squares.at(v0 + dir);
  r.dbar = std::abs(dbar(B, v0) * 4.0 * h * h / kLambda - 1.0);

  for (const auto& [key, bd] : F.boundary) {
    r.riemann = std::max(r.riemann, std::abs((bd.value * std::sqrt(edge_normal(key.second))).imag()));
  }

  auto bw = dom.boundary_white_vertices();
  auto dashed = dom.dashed_boundary_white_vertices();
  // base at a dashed corner: there H vanishes for the modified and unmodified field alike
  PrimitiveH H = primitive_H(dom, F, dashed.empty() ? bw.front() : dashed.front(), 1e300);
  r.closure = H.closure_residual;
  for (auto z : bw) r.dirichlet = std::max(r.dirichlet, std::abs(H.at(z)));
  for (auto z : dashed)
    r.dirichlet_dashed = std::max(r.dirichlet_dashed, std::abs(H.at(z)));

  for (auto a : dom.squares) {
    if (a == v0) continue;
    auto [w, b] = colored_vertices(a);
    r.h_order = std::max(r.h_order, H.at(b) - H.at(w));
  }
  auto [zw, zb] = colored_vertices(v0);
  std::set<LatticeCoord> bset(bw.begin(), bw.end());
  for (const auto& [z, val] : H.values) {
    if (classify_vertex(z) == VertexClass::White) {
      if (z == zw || bset.count(z)) continue;
      bool full = true;
      for (auto dir : kEdgeDir) full = full && H.has(z + dir * 2);
      if (!full) continue;
      r.leapfrog_white = std::max(r.leapfrog_white, -leapfrog(dom, H, z));
    } else {
      auto it = dom.blocks.find(z);
      if (it == dom.blocks.end()) continue;
      if (it->second.exposed) r.h_black_boundary = std::max(r.h_black_boundary, val);
      if (z == zb) continue;
      r.leapfrog_black = std::max(r.leapfrog_black, leapfrog(dom, H, z));
    }
  }
  if (H_out) *H_out = std::move(H);
  return r;
}

RBVPSolution solve_rbvp(const KasteleynSystem& sys, LatticeCoord v0, bool modify) {
  const Domain& dom = sys.domain();
  if (!dom.is_hedgehog) throw InputError("RBVP needs a hedgehog domain");
  if (!dom.contains(v0) || classify_square(v0) != SquareType::W0 || !dom.is_interior(v0) ||
      dom.class_of(v0) != BoundaryClass::None) {
    throw InputError("v0 must be an interior W0 square");
  }
  RBVPSolution sol;
  sol.domain = dom;
  sol.v0 = v0;
  sol.modified = modify;
  BlackField F = field_from_column(sys, v0, 1.0 / dom.delta);
  sol.check = to_shol(dom, F, v0);
  sol.field = modify ? boundary_modify(dom, sol.check) : sol.check;
  sol.residuals = rbvp_residuals(dom, v0, sol.field, &sol.H);
  const auto& r = sol.residuals;
  if (modify && std::max({r.shol, r.dbar, r.riemann, r.dirichlet}) > 1e-8) {
    throw ConsistencyError("RBVP construction failed: residual above 1e-8");
  }
  return sol;
}

RBVPSolution solve_rbvp(const Domain& dom, LatticeCoord v0, bool modify) {
  KasteleynSystem sys(dom);
  return solve_rbvp(sys, v0, modify);
}

Report verify_rbvp(const RBVPSolution& sol, double tol) {
  const auto& r = sol.residuals;
  Report rep;
  rep.title = "rbvp";
  rep.add("s_holomorphic", r.shol, tol);
  rep.add("dbar_normalization", r.dbar, tol, where(sol.v0));
  rep.add("riemann_bc", r.riemann, tol);
  rep.add("h_closure", r.closure, tol);
  rep.add("h_dirichlet_dashed", r.dirichlet_dashed, tol);
  rep.add("h_dirichlet", r.dirichlet, tol);
  rep.add("h_white_ge_black", r.h_order, tol);
  rep.add("leapfrog_white_subharmonic", r.leapfrog_white, tol);
  rep.add("leapfrog_black_superharmonic", r.leapfrog_black, tol);
  rep.add("h_black_boundary_nonpositive", r.h_black_boundary, tol);
  return rep;
}

Report identity_suite(const KasteleynSystem& sys, std::optional<LatticeCoord> v0, double tol) {
  const Domain& dom = sys.domain();
  Report rep;
  rep.title = "identity-suite";
  rep.add("kc_identity", sys.inverse_residual(true), tol);
  auto ps = probability_sum_residual(sys);
  rep.add("probability_sums", ps.worst, tol, where(ps.at));
  rep.add_flag("well_conditioned", !sys.ill_conditioned());
  rep.data["squares"] = dom.squares.size();
  rep.data["log_partition"] = sys.log_partition();
  rep.data["pivot_growth"] = sys.pivot_growth();
  if (!dom.is_hedgehog) return rep;
  auto hs = half_sum_residual(sys);
  rep.add("half_sums", hs.worst, tol, where(hs.at));
  rep.data["interior_squares"] = hs.checked;
  if (!v0) {
    cplx c = 0;
    for (auto s : dom.squares) c += position(s, dom.delta);
    v0 = interior_w0_near(dom, c / static_cast<double>(dom.squares.size()));
  }
  RBVPSolution sol = solve_rbvp(sys, *v0);
  for (auto& c : verify_rbvp(sol, tol).checks) rep.checks.push_back(c);
  rep.data["source"] = {v0->n, v0->m};
  return rep;
}

}  // namespace hedgehog
