#include "hedgehog/observables.hpp"

#include <cmath>
#include <deque>
#include <set>

#include "hedgehog/continuum.hpp"
#include "hedgehog/dca.hpp"

namespace hedgehog {

bool is_boundary_edge(const Domain& d, LatticeCoord x, LatticeCoord y) {
  auto [a, b] = edge_sides(x, y);
  return !d.adjacent(a, b);
}

std::vector<LatticeCoord> boundary_vertices(const Domain& d) {
  std::set<LatticeCoord> out;
  for (auto [x, y] : domain_edges(d)) {
    if (is_boundary_edge(d, x, y)) out.insert(x), out.insert(y);
  }
  return {out.begin(), out.end()};
}

std::vector<PathStep> path_steps(const Domain& d, const PathSpec& path) {
  std::vector<PathStep> steps;
  for (std::size_t i = 0; i + 1 < path.vertices.size(); ++i) {
    LatticeCoord x = path.vertices[i], y = path.vertices[i + 1];
    auto dd = y - x;
    auto [a, b] = edge_sides(x, y);
    if (std::abs(dd.n) != 1 || std::abs(dd.m) != 1 || (!d.contains(a) && !d.contains(b))) {
      throw InputError("path leaves the domain");
    }
    PathStep s{x, y, is_black_square(a) ? 1 : -1, d.adjacent(a, b), {}, {}};
    if (s.crossable) {
      s.black = is_black_square(a) ? a : b;
      s.white = is_black_square(a) ? b : a;
    }
    steps.push_back(s);
  }
  return steps;
}

LatticeCoord nearest_vertex(const Domain& d, cplx z) {
  LatticeCoord best{};
  double bd = INFINITY;
  for (auto v : d.vertices()) {
    double e = std::abs(position(v, d.delta) - z);
    if (e < bd - 1e-12) bd = e, best = v;
  }
  return best;
}

PathSpec path_from_boundary(const Domain& d, LatticeCoord z) {
  std::map<LatticeCoord, std::vector<LatticeCoord>> nbrs;
  for (auto [x, y] : domain_edges(d)) nbrs[x].push_back(y), nbrs[y].push_back(x);
  if (!nbrs.count(z)) throw InputError("vertex not in domain");
  auto bv = boundary_vertices(d);
  std::set<LatticeCoord> bset(bv.begin(), bv.end());
  std::map<LatticeCoord, LatticeCoord> prev;
  std::deque<LatticeCoord> q{z};
  prev[z] = z;
  LatticeCoord hit = z;
  while (!q.empty()) {
    auto x = q.front();
    q.pop_front();
    if (bset.count(x)) {
      hit = x;
      break;
    }
    for (auto y : nbrs[x]) {
      if (prev.emplace(y, x).second) q.push_back(y);
    }
  }
  PathSpec p;
  for (LatticeCoord x = hit;; x = prev[x]) {
    p.vertices.push_back(x);
    if (x == z) break;
  }
  return p;
}

double expected_height(const KasteleynSystem& sys, const PathSpec& path) {
  double h = 0;
  for (const auto& s : path_steps(sys.domain(), path)) {
    double p = s.crossable ? sys.edge_probability(s.black, s.white) : 0.0;
    h += s.sign * (1.0 - 4.0 * p);
  }
  return h;
}

double height_covariance_exact(const KasteleynSystem& sys, const PathSpec& p1, const PathSpec& p2) {
  auto s1 = path_steps(sys.domain(), p1);
  auto s2 = path_steps(sys.domain(), p2);
  double cov = 0;
  for (const auto& a : s1) {
    if (!a.crossable) continue;
    double pa = sys.edge_probability(a.black, a.white);
    for (const auto& b : s2) {
      if (!b.crossable) continue;
      double pb = sys.edge_probability(b.black, b.white);
      double c;
      if (a.black == b.black && a.white == b.white) {
        c = pa * (1 - pa);
      } else if (a.black == b.black || a.white == b.white) {
        c = -pa * pb;
      } else {
        c = sys.joint_probability({{a.black, a.white}, {b.black, b.white}}) - pa * pb;
      }
      cov += 16.0 * a.sign * b.sign * c;
    }
  }
  return cov;
}

std::map<LatticeCoord, double> expected_height_field(const KasteleynSystem& sys, LatticeCoord base) {
  const Domain& d = sys.domain();
  Eigen::MatrixXcd C = sys.coupling_matrix();
  std::map<LatticeCoord, std::vector<std::pair<LatticeCoord, double>>> g;
  for (auto [x, y] : domain_edges(d)) {
    auto [a, b] = edge_sides(x, y);
    double p = 0;
    if (d.adjacent(a, b)) {
      LatticeCoord u = is_black_square(a) ? a : b, v = is_black_square(a) ? b : a;
      p = std::abs(C(sys.black_index(u), sys.white_index(v)));
    }
    double inc = (is_black_square(a) ? 1.0 : -1.0) * (1.0 - 4.0 * p);
    g[x].push_back({y, inc});
    g[y].push_back({x, -inc});
  }
  std::map<LatticeCoord, double> h;
  if (!g.count(base)) throw InputError("base vertex not in domain");
  h[base] = 0;
  std::deque<LatticeCoord> q{base};
  while (!q.empty()) {
    auto x = q.front();
    q.pop_front();
    for (auto [y, inc] : g[x]) {
      if (h.emplace(y, h[x] + inc).second) q.push_back(y);
    }
  }
  return h;
}

std::vector<AsymptoticsPoint> coupling_asymptotics_check(const std::vector<double>& meshes, cplx v,
                                                         SquareType vtype, double window) {
  if (meshes.size() < 2) throw InputError("mesh schedule needs at least two meshes");
  std::vector<AsymptoticsPoint> out;
  const cplx c = vtype == SquareType::W0 ? cplx(1.0) : kI;
  for (double h : meshes) {
    if (h > 1.0 / 8) throw InputError("mesh too coarse for the unit disk");
    Domain dom = approximate_disk(h, 1.0);
    auto vd = nearest_square(dom, v, vtype, [&](LatticeCoord s) { return dom.is_interior(s); });
    if (!vd) throw InputError("no interior square of the requested type");
    KasteleynSystem sys(dom);
    const auto& col = sys.coupling_column(*vd);
    BlackField Fc = plane_kernel(*vd, h, std::max(window, 16 * h));
    cplx vp = position(*vd, h);
    Transplanted f = disk_solution(vp, c);
    double err = 0;
    for (int i = 0; i < sys.size(); ++i) {
      LatticeCoord u = sys.blacks()[i];
      cplx up = position(u, h);
      double r = std::abs(up);
      if (r < 0.25 || r > 0.5) continue;
      cplx lhs = c * (col(i) / h - Fc.at(u));
      cplx reg = 2.0 * (f(up) - c * kLambda / (2 * M_PI * (up - vp)));
      err = std::max(err, std::abs(lhs - proj(reg, tau(classify_square(u)))));
    }
    out.push_back({h, err});
  }
  return out;
}

}  // namespace hedgehog
