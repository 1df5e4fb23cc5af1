#include "hedgehog/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

namespace hedgehog {

namespace {

int mod4(int x) { return ((x % 4) + 4) % 4; }

}  // namespace

SquareType classify_square(LatticeCoord c) {
  bool ne = (c.n % 2 == 0), me = (c.m % 2 == 0);
  if (ne != me) {
    throw GeometryError("invalid square coordinate (" + std::to_string(c.n) + "," +
                        std::to_string(c.m) + "): mixed parity");
  }
  int s = mod4(c.n + c.m);
  if (ne) return s == 0 ? SquareType::B0 : SquareType::B1;
  return s == 2 ? SquareType::W0 : SquareType::W1;
}

VertexClass classify_vertex(LatticeCoord c) {
  if ((c.n + c.m) % 2 == 0) {
    throw GeometryError("invalid vertex coordinate: n + m must be odd");
  }
  if (c.n % 2 == 0) return VertexClass::Diamond;
  return mod4(c.n + c.m) == 3 ? VertexClass::Black : VertexClass::White;
}

bool is_black_square(LatticeCoord c) { return is_black(classify_square(c)); }

const char* to_string(SquareType t) {
  switch (t) {
    case SquareType::B0: return "B0";
    case SquareType::B1: return "B1";
    case SquareType::W0: return "W0";
    case SquareType::W1: return "W1";
  }
  return "?";
}

const char* to_string(BoundaryClass b) {
  switch (b) {
    case BoundaryClass::None: return "none";
    case BoundaryClass::Plus: return "plus";
    case BoundaryClass::Minus: return "minus";
    case BoundaryClass::Sharp: return "sharp";
    case BoundaryClass::Flat: return "flat";
  }
  return "?";
}

cplx tau(SquareType t) {
  switch (t) {
    case SquareType::B0: return 1.0;
    case SquareType::B1: return kI;
    case SquareType::W0: return kLambda;
    case SquareType::W1: return kLambdaBar;
  }
  return 0.0;
}

cplx edge_normal(int edge) {
  switch (edge) {
    case NE: return kLambda;
    case NW: return -kLambdaBar;
    case SW: return -kLambda;
    default: return kLambdaBar;
  }
}

EdgeSquares edge_squares(LatticeCoord p, int edge) {
  auto d = kEdgeDir[edge];
  return {p + LatticeCoord{d.n, 0}, p + LatticeCoord{0, d.m}, p + LatticeCoord{d.n, 2 * d.m},
          p + LatticeCoord{2 * d.n, d.m}, p + d};
}

std::array<LatticeCoord, 4> block_squares(LatticeCoord p) {
  return {p + LatticeCoord{1, 0}, p + LatticeCoord{-1, 0}, p + LatticeCoord{0, 1},
          p + LatticeCoord{0, -1}};
}

LatticeCoord block_of(LatticeCoord s) {
  bool black = is_black_square(s);
  LatticeCoord a = black ? s + LatticeCoord{1, 0} : s + LatticeCoord{0, 1};
  LatticeCoord b = black ? s - LatticeCoord{1, 0} : s - LatticeCoord{0, 1};
  return classify_vertex(a) == VertexClass::Black ? a : b;
}

std::array<LatticeCoord, 2> diamond_vertices(LatticeCoord s) {
  if (is_black_square(s)) return {s - LatticeCoord{0, 1}, s + LatticeCoord{0, 1}};
  return {s - LatticeCoord{1, 0}, s + LatticeCoord{1, 0}};
}

std::pair<LatticeCoord, LatticeCoord> colored_vertices(LatticeCoord s) {
  LatticeCoord p = block_of(s);
  return {s * 2 - p, p};
}

bool Domain::is_cut(LatticeCoord a, LatticeCoord b) const {
  if (cut_.empty()) return false;
  return cut_.count({std::min(a, b), std::max(a, b)}) != 0;
}

bool Domain::adjacent(LatticeCoord a, LatticeCoord b) const {
  auto d = b - a;
  if (std::abs(d.n) != 1 || std::abs(d.m) != 1) return false;
  return contains(a) && contains(b) && !is_cut(a, b);
}

bool Domain::is_interior(LatticeCoord c) const {
  for (auto d : kEdgeDir) {
    if (!adjacent(c, c + d)) return false;
  }
  return true;
}

std::vector<LatticeCoord> Domain::blacks() const {
  std::vector<LatticeCoord> out;
  for (auto s : squares)
    if (is_black_square(s)) out.push_back(s);
  return out;
}

std::vector<LatticeCoord> Domain::whites() const {
  std::vector<LatticeCoord> out;
  for (auto s : squares)
    if (!is_black_square(s)) out.push_back(s);
  return out;
}

std::size_t Domain::count(SquareType t) const {
  return std::count_if(squares.begin(), squares.end(),
                       [t](LatticeCoord s) { return classify_square(s) == t; });
}

bool Domain::is_even_count() const { return blacks().size() == whites().size(); }

BoundaryClass Domain::class_of(LatticeCoord c) const {
  auto it = boundary.find(c);
  return it == boundary.end() ? BoundaryClass::None : it->second;
}

std::vector<LatticeCoord> Domain::vertices() const {
  std::set<LatticeCoord> vs;
  for (auto s : squares) {
    for (LatticeCoord d : {LatticeCoord{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) vs.insert(s + d);
  }
  return {vs.begin(), vs.end()};
}

std::vector<LatticeCoord> Domain::boundary_white_vertices() const {
  std::set<LatticeCoord> vs;
  for (const auto& inc : incidences) {
    auto d = kEdgeDir[inc.edge];
    vs.insert(inc.block + LatticeCoord{2 * d.n, 0});
    vs.insert(inc.block + LatticeCoord{0, 2 * d.m});
  }
  return {vs.begin(), vs.end()};
}

std::vector<LatticeCoord> Domain::dashed_boundary_white_vertices() const {
  std::vector<LatticeCoord> out;
  for (auto v : boundary_white_vertices())
    if (mod4(v.n) == 3) out.push_back(v);
  return out;
}

void Domain::finalize() {
  std::sort(squares.begin(), squares.end());
  squares.erase(std::unique(squares.begin(), squares.end()), squares.end());
  index_.clear();
  for (int i = 0; i < static_cast<int>(squares.size()); ++i) {
    classify_square(squares[i]);
    index_[squares[i]] = i;
  }
  cut_.clear();
  std::sort(slits.begin(), slits.end());
  slits.erase(std::unique(slits.begin(), slits.end()), slits.end());
  for (auto [a, b] : slits) {
    auto d = b - a;
    if (std::abs(d.n) != 1 || std::abs(d.m) != 1) throw GeometryError("slit between non-neighbours");
    cut_[{std::min(a, b), std::max(a, b)}] = true;
  }
}

Domain make_even_domain(double delta, std::vector<LatticeCoord> squares,
                        std::vector<std::pair<LatticeCoord, LatticeCoord>> slits) {
  if (!(delta > 0)) throw GeometryError("delta must be positive");
  Domain d;
  d.delta = delta;
  d.squares = std::move(squares);
  d.slits = std::move(slits);
  d.finalize();
  return d;
}

namespace {

using Cell = std::pair<int, int>;

void check_topology(const std::vector<Cell>& cells) {
  if (cells.empty()) throw GeometryError("empty cell set");
  std::set<Cell> cs(cells.begin(), cells.end());
  const int dirs[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  std::set<Cell> seen{*cs.begin()};
  std::deque<Cell> q{*cs.begin()};
  while (!q.empty()) {
    auto [i, j] = q.front();
    q.pop_front();
    for (auto& d : dirs) {
      Cell c{i + d[0], j + d[1]};
      if (cs.count(c) && seen.insert(c).second) q.push_back(c);
    }
  }
  if (seen.size() != cs.size()) throw GeometryError("cell set is not edge-connected");

  int i0 = cs.begin()->first, i1 = i0, j0 = cs.begin()->second, j1 = j0;
  for (auto [i, j] : cs) {
    i0 = std::min(i0, i), i1 = std::max(i1, i);
    j0 = std::min(j0, j), j1 = std::max(j1, j);
  }
  --i0, --j0, ++i1, ++j1;
  std::set<Cell> outside{{i0, j0}};
  q.assign(1, {i0, j0});
  while (!q.empty()) {
    auto [i, j] = q.front();
    q.pop_front();
    for (auto& d : dirs) {
      Cell c{i + d[0], j + d[1]};
      if (c.first < i0 || c.first > i1 || c.second < j0 || c.second > j1) continue;
      if (!cs.count(c) && outside.insert(c).second) q.push_back(c);
    }
  }
  std::size_t total = static_cast<std::size_t>(i1 - i0 + 1) * (j1 - j0 + 1);
  if (outside.size() + cs.size() != total) throw GeometryError("cell set is not simply connected");
}

}  // namespace

Domain build_hedgehog(double delta, std::vector<Cell> cells) {
  if (!(delta > 0)) throw GeometryError("delta must be positive");
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  check_topology(cells);

  std::map<LatticeCoord, std::vector<Cell>> owners;
  for (auto c : cells) {
    LatticeCoord q = cell_center(c.first, c.second);
    for (LatticeCoord o : {LatticeCoord{2, 0}, {-2, 0}, {0, 2}, {0, -2}}) owners[q + o].push_back(c);
  }

  Domain d;
  d.delta = delta;
  d.is_hedgehog = true;
  d.cells = cells;
  for (const auto& [p, own] : owners) {
    for (auto s : block_squares(p)) d.squares.push_back(s);
    // A neighbouring block that shares no owning cell is separated by a slit;
    // this happens where two spikes meet at a concave corner.
    for (int k = 0; k < 4; ++k) {
      LatticeCoord nb = p + kEdgeDir[k] * 2;
      auto it = owners.find(nb);
      if (it == owners.end() || nb < p) continue;
      bool shared = false;
      for (auto c : own)
        for (auto c2 : it->second) shared = shared || (c == c2);
      if (shared) continue;
      auto es = edge_squares(p, k);
      d.slits.push_back({es.inside_black, es.outside_white});
      d.slits.push_back({es.outside_black, es.inside_white});
    }
  }
  d.finalize();
  boundary_classify(d);
  return d;
}

void boundary_classify(Domain& d) {
  d.blocks.clear();
  d.boundary.clear();
  d.incidences.clear();
  for (auto s : d.squares) d.blocks[block_of(s)];
  for (auto& [p, info] : d.blocks) {
    for (auto s : block_squares(p)) {
      if (!d.contains(s)) throw GeometryError("domain is not a union of 2x2 blocks");
    }
    for (int k = 0; k < 4; ++k) {
      auto es = edge_squares(p, k);
      bool a = d.adjacent(es.inside_black, es.outside_white);
      bool b = d.adjacent(es.outside_black, es.inside_white);
      if (a != b) throw GeometryError("half-cut block edge");
      if (!a) info.exposed |= static_cast<std::uint8_t>(1u << k);
    }
    switch (info.exposed) {
      case 0: info.cls = BoundaryClass::None; break;
      case (1 << NE) | (1 << SE): info.cls = BoundaryClass::Plus; break;
      case (1 << NW) | (1 << SW): info.cls = BoundaryClass::Minus; break;
      case (1 << NE) | (1 << NW): info.cls = BoundaryClass::Sharp; break;
      case (1 << SE) | (1 << SW): info.cls = BoundaryClass::Flat; break;
      default:
        throw GeometryError("block at (" + std::to_string(p.n) + "," + std::to_string(p.m) +
                            ") does not have two consecutive boundary edges");
    }
    for (int k = 0; k < 4; ++k) {
      if (!(info.exposed & (1u << k))) continue;
      auto es = edge_squares(p, k);
      d.boundary[es.inside_black] = info.cls;
      d.boundary[es.inside_white] = info.cls;
      d.incidences.push_back({p, k, es.midpoint, edge_normal(k)});
    }
  }
}

Domain approximate_disk(double delta, double radius, cplx center) {
  if (!(delta > 0) || radius < 8 * delta) {
    throw GeometryError("disk radius must be at least 8 delta");
  }
  const double u = delta / kSqrt2;
  int range = static_cast<int>(std::ceil((radius + std::abs(center)) / (4 * u))) + 2;
  std::vector<Cell> cells;
  for (int i = -range; i <= range; ++i) {
    for (int j = -range; j <= range; ++j) {
      LatticeCoord q = cell_center(i, j);
      bool inside = true;
      for (LatticeCoord c : {LatticeCoord{2, 2}, {2, -2}, {-2, 2}, {-2, -2}}) {
        inside = inside && std::abs(position(q + c, delta) - center) <= radius;
      }
      if (inside) cells.push_back({i, j});
    }
  }
  if (cells.empty()) throw GeometryError("disk too small for the mesh");
  return build_hedgehog(delta, cells);
}

Domain tilted_rectangle(double delta, int a, int b) {
  if (a <= 0 || b <= 0) throw GeometryError("empty rectangle");
  std::vector<LatticeCoord> sq;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) sq.push_back({i - j, i + j});
  return make_even_domain(delta, sq);
}

Domain without_slits(const Domain& d) {
  Domain out = d;
  out.slits.clear();
  out.finalize();
  out.is_hedgehog = false;
  return out;
}

Domain remove_squares(const Domain& d, const std::vector<LatticeCoord>& drop) {
  std::set<LatticeCoord> gone(drop.begin(), drop.end());
  std::vector<LatticeCoord> sq;
  for (auto s : d.squares)
    if (!gone.count(s)) sq.push_back(s);
  std::vector<std::pair<LatticeCoord, LatticeCoord>> sl;
  for (auto pr : d.slits)
    if (!gone.count(pr.first) && !gone.count(pr.second)) sl.push_back(pr);
  return make_even_domain(d.delta, std::move(sq), std::move(sl));
}

std::optional<LatticeCoord> nearest_square(const Domain& d, cplx z, SquareType t,
                                           const std::function<bool(LatticeCoord)>& ok) {
  std::optional<LatticeCoord> best;
  double bd = 0;
  for (auto s : d.squares) {
    if (classify_square(s) != t || (ok && !ok(s))) continue;
    double dist = std::abs(position(s, d.delta) - z);
    if (!best || dist < bd - 1e-12) best = s, bd = dist;
  }
  return best;
}

}  // namespace hedgehog
