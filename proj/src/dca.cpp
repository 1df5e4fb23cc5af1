#include "hedgehog/dca.hpp"

#include <Eigen/SparseLU>
#include <cmath>
#include <deque>
#include <set>

namespace hedgehog {

namespace {

const LatticeCoord kPlusL{1, 1}, kPlusLB{1, -1};

int edge_index(LatticeCoord d) {
  for (int k = 0; k < 4; ++k)
    if (kEdgeDir[k] == d) return k;
  throw GeometryError("not a block edge direction");
}

bool exposed(const Domain& dom, LatticeCoord p, int k) {
  auto it = dom.blocks.find(p);
  return it != dom.blocks.end() && (it->second.exposed & (1u << k));
}

}  // namespace

cplx BlackField::at(LatticeCoord c) const {
  auto it = values.find(c);
  if (it == values.end()) {
    throw BoundaryAccessError("no value at (" + std::to_string(c.n) + "," + std::to_string(c.m) + ")");
  }
  return it->second;
}

double BlackField::admissibility_defect() const {
  double worst = 0;
  for (const auto& [c, v] : values) {
    auto t = classify_square(c);
    if (t == SquareType::B0) worst = std::max(worst, std::abs(v.imag()));
    if (t == SquareType::B1) worst = std::max(worst, std::abs(v.real()));
  }
  return worst;
}

cplx dbar(const BlackField& F, LatticeCoord v) {
  const double h = F.delta;
  cplx a = F.at(v + kPlusL) - F.at(v - kPlusL);
  cplx b = F.at(v + kPlusLB) - F.at(v - kPlusLB);
  return 0.5 * (a / (2.0 * h * kLambdaBar) + b / (2.0 * h * kLambda));
}

cplx d(const BlackField& F, LatticeCoord v) {
  const double h = F.delta;
  cplx a = F.at(v + kPlusL) - F.at(v - kPlusL);
  cplx b = F.at(v + kPlusLB) - F.at(v - kPlusLB);
  return 0.5 * (a / (2.0 * h * kLambda) + b / (2.0 * h * kLambdaBar));
}

cplx laplacian(const BlackField& F, LatticeCoord u) {
  cplx s = -4.0 * F.at(u);
  for (auto dir : kEdgeDir) s += F.at(u + dir * 2);
  return s / (4.0 * F.delta * F.delta);
}

BlackField field_from_column(const KasteleynSystem& sys, LatticeCoord v, cplx scale) {
  BlackField F;
  F.delta = sys.domain().delta;
  const auto& col = sys.coupling_column(v);
  for (int i = 0; i < sys.size(); ++i) F.values[sys.blacks()[i]] = scale * col(i);
  return F;
}

cplx SHoloField::diamond_for(const Domain& dom, LatticeCoord a, LatticeCoord z) const {
  LatticeCoord p = block_of(a);
  int k = edge_index(z - p);
  if (exposed(dom, p, k)) return boundary.at({p, k}).value;
  return diamonds.at(z);
}

SHoloField to_shol(const Domain& dom, const BlackField& F, std::optional<LatticeCoord> v0,
                   double tol) {
  if (dom.blocks.empty()) throw GeometryError("s-holomorphic extension needs a block domain");
  SHoloField S;
  S.delta = dom.delta;
  S.singular = v0;

  double scale = 0;
  for (auto u : dom.blacks()) scale = std::max(scale, std::abs(F.at(u)));
  for (auto w : dom.whites()) {
    if (v0 && w == *v0) continue;
    if (!dom.is_interior(w)) continue;
    double r = std::abs(dbar(F, w)) * 4 * dom.delta;
    if (r > tol * std::max(scale, 1.0)) {
      throw ConsistencyError("field is not discrete holomorphic at (" + std::to_string(w.n) + "," +
                             std::to_string(w.m) + ")");
    }
  }

  for (auto u : dom.blacks()) {
    cplx fu = F.at(u);
    S.squares[u] = fu;
    LatticeCoord p = block_of(u);
    for (auto z : diamond_vertices(u)) {
      int k = edge_index(z - p);
      if (exposed(dom, p, k)) {
        auto es = edge_squares(p, k);
        S.boundary[{p, k}] = {fu, 0.0, proj(fu, tau(classify_square(es.outside_white)))};
      } else {
        S.diamonds[z] += fu;
      }
    }
  }
  for (auto w : dom.whites()) {
    LatticeCoord p = block_of(w);
    auto zs = diamond_vertices(w);
    LatticeCoord z = zs[0];
    for (auto cand : zs) {
      if (!exposed(dom, p, edge_index(cand - p))) {
        z = cand;
        break;
      }
    }
    S.squares[w] = proj(S.diamond_for(dom, w, z), tau(classify_square(w)));
  }
  return S;
}

double shol_residual(const Domain& dom, const SHoloField& F, LatticeCoord* worst) {
  double r = 0;
  auto note = [&](double e, LatticeCoord at) {
    if (e > r) {
      r = e;
      if (worst) *worst = at;
    }
  };
  for (auto a : dom.squares) {
    if (F.singular && a == *F.singular) continue;
    cplx t = tau(classify_square(a));
    cplx fa = F.squares.at(a);
    for (auto z : diamond_vertices(a)) note(std::abs(proj(F.diamond_for(dom, a, z), t) - fa), a);
  }
  for (const auto& [key, bd] : F.boundary) {
    auto es = edge_squares(key.first, key.second);
    note(std::abs(proj(bd.value, tau(classify_square(es.outside_black))) - bd.ghost_black),
         es.outside_black);
    note(std::abs(proj(bd.value, tau(classify_square(es.outside_white))) - bd.ghost_white),
         es.outside_white);
  }
  return r;
}

double modulus_identity_residual(const Domain& dom, const SHoloField& F) {
  double r = 0;
  for (const auto& [z, fz] : F.diamonds) {
    LatticeCoord bu = z + LatticeCoord{0, 1}, bd = z - LatticeCoord{0, 1};
    LatticeCoord wr = z + LatticeCoord{1, 0}, wl = z - LatticeCoord{1, 0};
    if (F.singular && (wr == *F.singular || wl == *F.singular)) continue;
    if (!dom.contains(bu) || !dom.contains(bd) || !dom.contains(wr) || !dom.contains(wl)) continue;
    bool bu0 = classify_square(bu) == SquareType::B0;
    bool wr0 = classify_square(wr) == SquareType::W0;
    cplx uR = F.squares.at(bu0 ? bu : bd), uI = F.squares.at(bu0 ? bd : bu);
    cplx vL = F.squares.at(wr0 ? wr : wl), vLB = F.squares.at(wr0 ? wl : wr);
    double m2 = std::norm(fz);
    r = std::max(r, std::abs(uR * uR - uI * uI - m2));
    r = std::max(r, std::abs(kI * (vLB * vLB - vL * vL) - m2));
  }
  return r;
}

double PrimitiveH::at(LatticeCoord z) const {
  auto it = values.find(z);
  if (it == values.end()) throw BoundaryAccessError("H undefined at vertex");
  return it->second;
}

PrimitiveH primitive_H(const Domain& dom, const SHoloField& F, LatticeCoord base, double tol) {
  struct Link {
    LatticeCoord to;
    double inc;
  };
  std::map<LatticeCoord, std::vector<Link>> graph;
  PrimitiveH H;
  H.delta = dom.delta;
  H.base = base;
  double scale = 0;
  for (auto a : dom.squares) {
    if (F.singular && a == *F.singular) continue;
    auto [w, b] = colored_vertices(a);
    cplx fa = F.squares.at(a);
    cplx inc = fa * fa * (position(b, dom.delta) - position(w, dom.delta));
    H.imag_residual = std::max(H.imag_residual, std::abs(inc.imag()));
    scale = std::max(scale, std::abs(inc));
    graph[w].push_back({b, inc.real()});
    graph[b].push_back({w, -inc.real()});
  }
  if (!graph.count(base)) throw BoundaryAccessError("base vertex not in domain");
  H.values[base] = 0.0;
  std::deque<LatticeCoord> q{base};
  while (!q.empty()) {
    auto z = q.front();
    q.pop_front();
    double hz = H.values[z];
    for (const auto& l : graph[z]) {
      auto [it, fresh] = H.values.emplace(l.to, hz + l.inc);
      if (fresh) q.push_back(l.to);
    }
  }
  LatticeCoord worst = base;
  for (const auto& [z, links] : graph) {
    for (const auto& l : links) {
      double e = std::abs(H.values.at(l.to) - H.values.at(z) - l.inc);
      if (e > H.closure_residual) H.closure_residual = e, worst = z;
    }
  }
  if (H.closure_residual > tol * std::max(scale, 1.0)) {
    throw MonodromyError("primitive H is not single valued", worst);
  }
  return H;
}

double leapfrog_weight_sum(const Domain& dom, LatticeCoord z) {
  if (classify_vertex(z) != VertexClass::Black) return 4.0;
  auto it = dom.blocks.find(z);
  if (it == dom.blocks.end()) throw BoundaryAccessError("black vertex is not a block centre");
  double c = 0;
  for (int k = 0; k < 4; ++k) c += (it->second.exposed & (1u << k)) ? 2 * (kSqrt2 - 1) : 1.0;
  return c;
}

double leapfrog(const Domain& dom, const PrimitiveH& H, LatticeCoord z) {
  double hz = H.at(z);
  if (classify_vertex(z) == VertexClass::White) {
    double s = 0;
    for (auto dir : kEdgeDir) s += H.at(z + dir * 2) - hz;
    return s / 4.0;
  }
  if (classify_vertex(z) != VertexClass::Black) throw BoundaryAccessError("not a white/black vertex");
  auto it = dom.blocks.find(z);
  if (it == dom.blocks.end()) throw BoundaryAccessError("black vertex is not a block centre");
  double s = 0, c = 0;
  for (int k = 0; k < 4; ++k) {
    if (it->second.exposed & (1u << k)) {
      s += 2 * (kSqrt2 - 1) * (0.0 - hz);
      c += 2 * (kSqrt2 - 1);
    } else {
      s += H.at(z + kEdgeDir[k] * 2) - hz;
      c += 1.0;
    }
  }
  return s / c;
}

BlackField schwarz_reflect(const BlackField& upper, double tol) {
  BlackField out;
  out.delta = upper.delta;
  for (const auto& [c, v] : upper.values) {
    if (c.m < 0) continue;
    if (c.m == 0 && std::abs(v.imag()) > tol) {
      throw ConsistencyError("reflection needs real values on the axis");
    }
    out.values[c] = v;
  }
  for (const auto& [c, v] : upper.values) {
    if (c.m > 0) out.values[{c.n, -c.m}] = std::conj(v);
  }
  return out;
}

cplx plane_asymptotic(LatticeCoord u, LatticeCoord v0, double delta) {
  cplx c = classify_square(v0) == SquareType::W0 ? cplx(1.0) : kI;
  // Projected values carry twice the continuum amplitude: C / delta ~ Proj(lambda / (pi (u - v0))).
  cplx w = c * kLambda / (M_PI * (position(u, delta) - position(v0, delta)));
  return std::conj(c) * proj(w, tau(classify_square(u)));
}

BlackField plane_kernel_on(const Domain& window, LatticeCoord v0) {
  if (!window.contains(v0) || is_black_square(v0) || !window.is_interior(v0)) {
    throw GeometryError("source square must be an interior white square of the window");
  }
  const double h = window.delta;
  auto blacks = window.blacks();
  auto whites = window.whites();
  if (blacks.size() != whites.size()) throw GeometryError("window is not balanced");
  std::unordered_map<LatticeCoord, int, CoordHash> bi;
  for (int i = 0; i < static_cast<int>(blacks.size()); ++i) bi[blacks[i]] = i;

  BlackField F;
  F.delta = h;
  const int n = static_cast<int>(whites.size());
  std::vector<Eigen::Triplet<cplx>> trip;
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n);
  for (int j = 0; j < n; ++j) {
    LatticeCoord v = whites[j];
    if (v == v0) rhs(j) = 1.0 / h;
    for (auto dir : kEdgeDir) {
      LatticeCoord u = v + dir;
      cplx k = kasteleyn_weight(u, v);
      auto it = bi.find(u);
      if (it != bi.end() && !window.is_cut(u, v)) {
        trip.emplace_back(j, it->second, k);
      } else {
        cplx g = plane_asymptotic(u, v0, h);
        F.values[u] = g;
        rhs(j) -= k * g;
      }
    }
  }
  Eigen::SparseMatrix<cplx> A(n, n);
  A.setFromTriplets(trip.begin(), trip.end());
  A.makeCompressed();
  Eigen::SparseLU<Eigen::SparseMatrix<cplx>> lu;
  lu.compute(A);
  if (lu.info() != Eigen::Success) throw GeometryError("window system is singular");
  Eigen::VectorXcd x = lu.solve(rhs);
  for (int i = 0; i < n; ++i) F.values[blacks[i]] = x(i);
  return F;
}

BlackField plane_kernel(LatticeCoord v0, double delta, double R) {
  if (R < 16 * delta) throw GeometryError("window radius must be at least 16 delta");
  Domain window = without_slits(approximate_disk(delta, R, position(v0, delta)));
  return plane_kernel_on(window, v0);
}

BlackField halfplane_kernel(LatticeCoord v0, double delta, double R) {
  if (R < 16 * delta) throw GeometryError("window radius must be at least 16 delta");
  if (v0.m <= 0) throw GeometryError("source must lie above the axis");
  Domain window = without_slits(approximate_disk(delta, R, position({v0.n, 0}, delta)));
  LatticeCoord mirror{v0.n, -v0.m};
  BlackField a = plane_kernel_on(window, v0);
  BlackField b = plane_kernel_on(window, mirror);
  BlackField out;
  out.delta = delta;
  for (const auto& [c, v] : a.values) {
    if (c.m < 0 || !b.has(c)) continue;
    out.values[c] = v + b.values.at(c);
  }
  return out;
}

}  // namespace hedgehog
