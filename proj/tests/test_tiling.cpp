#include <doctest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <map>
#include <set>

#include "hedgehog/tiling.hpp"
#include "oracles.hpp"

using namespace hedgehog;

namespace {

std::set<Tiling> as_set(const std::vector<Tiling>& ts) { return {ts.begin(), ts.end()}; }

std::set<Tiling> oracle_tilings(const Domain& d) {
  std::set<Tiling> out;
  for (const auto& m : oracle::matchings(d.squares, [&](LatticeCoord a, LatticeCoord b) {
         return d.adjacent(a, b);
       })) {
    Tiling t;
    for (auto [u, v] : m) t.partner[u] = v;
    out.insert(t);
  }
  return out;
}

double chi2_pvalue(const std::map<Tiling, int>& counts, std::size_t cells, int n) {
  double e = static_cast<double>(n) / cells, x2 = 0;
  for (const auto& [t, c] : counts) x2 += (c - e) * (c - e) / e;
  x2 += (cells - counts.size()) * e;  // unseen tilings
  boost::math::chi_squared dist(static_cast<double>(cells - 1));
  return boost::math::cdf(boost::math::complement(dist, x2));
}

}  // namespace

TEST_CASE("enumeration matches the backtracking oracle") {
  for (auto cells : {std::vector<std::pair<int, int>>{{0, 0}}, {{0, 0}, {1, 0}}}) {
    Domain d = build_hedgehog(1.0, cells);
    auto ts = enumerate_tilings(d);
    CHECK(as_set(ts) == oracle_tilings(d));
    CHECK(as_set(ts).size() == ts.size());
    for (const auto& t : ts) CHECK(is_perfect_matching(d, t));
  }
  CHECK(enumerate_tilings(build_hedgehog(1.0, {{0, 0}})).size() == 36);
  CHECK(enumerate_tilings(build_hedgehog(1.0, {{0, 0}, {1, 0}})).size() == 648);
  CHECK(enumerate_tilings(build_hedgehog(1.0, {{0, 0}, {1, 0}, {0, 1}}), 40).size() == 11664);
  CHECK(enumerate_tilings(tilted_rectangle(1.0, 2, 4)).size() == 5);
  CHECK_THROWS(enumerate_tilings(build_hedgehog(1.0, {{0, 0}, {1, 0}, {0, 1}})));
}

TEST_CASE("perfect matching validation") {
  Domain d = tilted_rectangle(1.0, 2, 2);
  auto ts = enumerate_tilings(d);
  REQUIRE(ts.size() == 2);
  Tiling t = ts[0];
  CHECK(is_perfect_matching(d, t));
  t.partner.erase(t.partner.begin());
  CHECK_FALSE(is_perfect_matching(d, t));
  Tiling u = ts[0];
  auto it = u.partner.begin();
  auto jt = std::next(it);
  it->second = jt->second;  // white used twice
  CHECK_FALSE(is_perfect_matching(d, u));
}

TEST_CASE("height function rules") {
  Domain d = build_hedgehog(1.0, {{0, 0}, {1, 0}});
  auto ts = enumerate_tilings(d);
  auto verts = d.vertices();
  LatticeCoord base = verts.front();
  std::map<LatticeCoord, int> boundary_ref;
  std::map<LatticeCoord, int> mod4_ref;
  bool first = true;
  for (const auto& t : ts) {
    HeightField h = height_from_tiling(d, t, base);
    // around every square counterclockwise the steps are +-1 except one -+3 across the domino
    for (auto s : d.squares) {
      std::array<LatticeCoord, 4> c{s + LatticeCoord{1, 0}, s + LatticeCoord{0, 1},
                                    s + LatticeCoord{-1, 0}, s + LatticeCoord{0, -1}};
      int threes = 0, sum = 0;
      for (int k = 0; k < 4; ++k) {
        int step = h.at(c[(k + 1) % 4]) - h.at(c[k]);
        sum += step;
        if (std::abs(step) == 3) ++threes;
        else CHECK(step == (is_black_square(s) ? 1 : -1));
      }
      CHECK(sum == 0);
      CHECK(threes == 1);
    }
    for (const auto& [z, v] : h.values) {
      int r = ((v % 4) + 4) % 4;
      if (first) mod4_ref[z] = r;
      else CHECK(mod4_ref[z] == r);
    }
    for (auto [x, y] : domain_edges(d)) {
      auto [a, b] = edge_sides(x, y);
      if (d.contains(a) && d.contains(b)) continue;
      for (auto z : {x, y}) {
        if (first) boundary_ref[z] = h.at(z);
        else CHECK(boundary_ref[z] == h.at(z));
      }
    }
    first = false;
    CHECK(tiling_from_height(d, h) == t);
  }
  CHECK(height_increment({1, 0}, {0, 1}, false) == -height_increment({0, 1}, {1, 0}, false));
}

TEST_CASE("exact sampler is uniform on small domains") {
  for (auto d : {tilted_rectangle(1.0, 2, 4), build_hedgehog(1.0, {{0, 0}})}) {
    KasteleynSystem sys(d);
    ExactSampler s(sys);
    std::size_t cells = enumerate_tilings(d).size();
    std::map<Tiling, int> counts;
    std::mt19937_64 rng(11);
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
      Tiling t = s.sample(rng);
      REQUIRE(is_perfect_matching(d, t));
      ++counts[t];
    }
    CHECK(counts.size() == cells);
    CHECK(chi2_pvalue(counts, cells, n) > 1e-3);
    CHECK(s.worst_closure() < 1e-8);
  }
  // seeded convenience wrapper is deterministic
  KasteleynSystem sys(build_hedgehog(1.0, {{0, 0}}));
  CHECK(sample_exact(sys, 5) == sample_exact(sys, 5));
}

TEST_CASE("Glauber dynamics mixes over all tilings") {
  Domain d = tilted_rectangle(1.0, 2, 4);
  std::mt19937_64 rng(2);
  Tiling t = enumerate_tilings(d).front();
  std::map<Tiling, int> visits;
  const int steps = 200000;
  for (int i = 0; i < steps; ++i) {
    t = glauber_step(d, t, rng);
    REQUIRE(is_perfect_matching(d, t));
    ++visits[t];
  }
  CHECK(visits.size() == 5);
  for (const auto& [tt, c] : visits) CHECK(c / double(steps) == doctest::Approx(0.2).epsilon(0.1));
}

TEST_CASE("height labels of the eight-square example") {
  // Axis-aligned picture: unit squares with lower-left corner (x, y), vertex
  // (x, y) -> lattice (x - y + 1, x + y). Squares with x + y odd are black.
  auto vtx = [](int x, int y) { return LatticeCoord{x - y + 1, x + y}; };
  auto sq = [](int x, int y) { return LatticeCoord{x - y + 1, x + y + 1}; };
  std::vector<std::pair<int, int>> cells{{0, 0}, {1, 0}, {0, 1}, {1, 1}, {2, 1}, {0, 2}, {1, 2}, {2, 2}};
  std::vector<LatticeCoord> squares;
  for (auto [x, y] : cells) squares.push_back(sq(x, y));
  Domain d = make_even_domain(1.0, squares);
  CHECK(is_black_square(sq(1, 0)));
  CHECK(is_black_square(sq(0, 1)));
  CHECK_FALSE(is_black_square(sq(0, 0)));

  Tiling t;
  auto domino = [&](LatticeCoord a, LatticeCoord b) {
    if (is_black_square(a)) t.partner[a] = b;
    else t.partner[b] = a;
  };
  domino(sq(0, 0), sq(1, 0));
  domino(sq(1, 1), sq(2, 1));
  domino(sq(1, 2), sq(2, 2));
  domino(sq(0, 1), sq(0, 2));
  REQUIRE(is_perfect_matching(d, t));

  HeightField h = height_from_tiling(d, t, vtx(0, 0));
  std::map<std::pair<int, int>, int> labels{
      {{0, 0}, 0}, {{0, 1}, 1}, {{0, 2}, 0}, {{0, 3}, 1}, {{1, 3}, 2}, {{2, 3}, 1}, {{3, 3}, 2},
      {{3, 2}, 3}, {{3, 1}, 2}, {{2, 0}, 0}, {{1, 0}, -1}, {{1, 1}, 2}, {{2, 1}, 1}, {{2, 2}, 4},
      {{1, 2}, 3}};
  for (auto [xy, want] : labels) {
    INFO(xy.first, ",", xy.second);
    CHECK(h.at(vtx(xy.first, xy.second)) == want);
  }
}
