#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace hedgehog {

using cplx = std::complex<double>;

inline const double kSqrt2 = 1.4142135623730951;
inline const cplx kLambda{0.7071067811865476, 0.7071067811865476};
inline const cplx kLambdaBar{0.7071067811865476, -0.7071067811865476};
inline const cplx kI{0.0, 1.0};

struct GeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Integer coordinates on the rotated lattice. A point (n, m) sits at
// delta/sqrt2 * (n + i m). Square centers have n + m even, vertices n + m odd.
struct LatticeCoord {
  int n = 0;
  int m = 0;

  auto operator<=>(const LatticeCoord&) const = default;
  LatticeCoord operator+(LatticeCoord o) const { return {n + o.n, m + o.m}; }
  LatticeCoord operator-(LatticeCoord o) const { return {n - o.n, m - o.m}; }
  LatticeCoord operator*(int k) const { return {n * k, m * k}; }
};

struct CoordHash {
  std::size_t operator()(LatticeCoord c) const noexcept {
    auto key = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(c.n)) << 32) |
               static_cast<std::uint32_t>(c.m);
    return std::hash<std::uint64_t>{}(key);
  }
};

enum class SquareType { B0, B1, W0, W1 };
enum class VertexClass { White, Black, Diamond };  // V-circ, V-bullet, V-diamond
enum class BoundaryClass { None, Plus, Minus, Sharp, Flat };

SquareType classify_square(LatticeCoord c);
VertexClass classify_vertex(LatticeCoord c);
inline bool is_black(SquareType t) { return t == SquareType::B0 || t == SquareType::B1; }
bool is_black_square(LatticeCoord c);
const char* to_string(SquareType t);
const char* to_string(BoundaryClass b);

inline cplx position(LatticeCoord c, double delta) {
  return cplx(c.n, c.m) * (delta / kSqrt2);
}

// Projection direction tau(a) of a square: 1, i, lambda, conj(lambda).
cplx tau(SquareType t);
inline cplx proj(cplx w, cplx t) { return t * std::real(w * std::conj(t)); }

// Block edges, indexed counterclockwise from north-east.
enum Edge : int { NE = 0, NW = 1, SW = 2, SE = 3 };
inline constexpr std::array<LatticeCoord, 4> kEdgeDir{{{1, 1}, {-1, 1}, {-1, -1}, {1, -1}}};
cplx edge_normal(int edge);

// Squares sharing the block edge (block p, edge k): inside black/white and the
// two outside squares across the edge.
struct EdgeSquares {
  LatticeCoord inside_black, inside_white, outside_black, outside_white, midpoint;
};
EdgeSquares edge_squares(LatticeCoord block, int edge);

// The four squares of the 2delta x 2delta block centred at a black vertex p.
std::array<LatticeCoord, 4> block_squares(LatticeCoord p);
// Black vertex (block centre) of a square.
LatticeCoord block_of(LatticeCoord square);
// The two diamond vertices of a square; black squares get (n, m -+ 1), white (n -+ 1, m).
std::array<LatticeCoord, 2> diamond_vertices(LatticeCoord square);
// White and black vertices of a square (order: white, black).
std::pair<LatticeCoord, LatticeCoord> colored_vertices(LatticeCoord square);

struct BoundaryIncidence {
  LatticeCoord block;
  int edge = 0;
  LatticeCoord vertex;  // diamond vertex at the edge midpoint
  cplx normal;
};

struct BlockInfo {
  std::uint8_t exposed = 0;  // bitmask over Edge
  BoundaryClass cls = BoundaryClass::None;
};

// Finite set of lattice squares with optional hedgehog structure. Immutable
// once built by one of the factories below.
class Domain {
 public:
  double delta = 1.0;
  bool is_hedgehog = false;
  std::vector<std::pair<int, int>> cells;
  std::vector<LatticeCoord> squares;  // sorted
  std::vector<std::pair<LatticeCoord, LatticeCoord>> slits;  // (black, white) pairs cut apart

  std::map<LatticeCoord, BlockInfo> blocks;
  std::map<LatticeCoord, BoundaryClass> boundary;
  std::vector<BoundaryIncidence> incidences;

  bool contains(LatticeCoord c) const { return index_.count(c) != 0; }
  int index_of(LatticeCoord c) const {
    auto it = index_.find(c);
    return it == index_.end() ? -1 : it->second;
  }
  bool is_cut(LatticeCoord a, LatticeCoord b) const;
  // Both squares present, diagonal neighbours and not separated by a slit.
  bool adjacent(LatticeCoord a, LatticeCoord b) const;
  // Square fully surrounded by four adjacent neighbours.
  bool is_interior(LatticeCoord c) const;

  std::vector<LatticeCoord> blacks() const;
  std::vector<LatticeCoord> whites() const;
  std::size_t count(SquareType t) const;
  bool is_even_count() const;
  BoundaryClass class_of(LatticeCoord c) const;

  // Vertices of domain squares, sorted.
  std::vector<LatticeCoord> vertices() const;
  // Boundary white vertices: endpoints of exposed block edges.
  std::vector<LatticeCoord> boundary_white_vertices() const;
  // Boundary white vertices that are dashed-lattice corners (spike tips removed).
  std::vector<LatticeCoord> dashed_boundary_white_vertices() const;

  void finalize();

 private:
  std::unordered_map<LatticeCoord, int, CoordHash> index_;
  std::map<std::pair<LatticeCoord, LatticeCoord>, bool> cut_;
};

Domain make_even_domain(double delta, std::vector<LatticeCoord> squares,
                        std::vector<std::pair<LatticeCoord, LatticeCoord>> slits = {});
Domain build_hedgehog(double delta, std::vector<std::pair<int, int>> cells);
// Recomputes block exposure, square classes and boundary normals.
void boundary_classify(Domain& d);
Domain approximate_disk(double delta, double radius, cplx center = 0.0);
// a x b rectangle of squares along the lattice diagonals lambda, i lambda.
Domain tilted_rectangle(double delta, int a, int b);

// Centre of dashed cell (i, j).
inline LatticeCoord cell_center(int i, int j) { return {4 * i + 1, 4 * j}; }

// Copy without slit cuts (used for plane windows).
Domain without_slits(const Domain& d);
Domain remove_squares(const Domain& d, const std::vector<LatticeCoord>& drop);

// Nearest square of the given type to a plane point, optionally restricted.
std::optional<LatticeCoord> nearest_square(const Domain& d, cplx z, SquareType t,
                                           const std::function<bool(LatticeCoord)>& ok = {});

}  // namespace hedgehog
