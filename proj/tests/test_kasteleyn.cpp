#include <doctest.h>

#include <random>

#include "hedgehog/kasteleyn.hpp"
#include "oracles.hpp"

using namespace hedgehog;

namespace {

std::vector<oracle::Matching> all_matchings(const Domain& d) {
  return oracle::matchings(d.squares, [&](LatticeCoord a, LatticeCoord b) { return d.adjacent(a, b); });
}

}  // namespace

TEST_CASE("weights by direction") {
  LatticeCoord v{1, 1};
  CHECK(kasteleyn_weight(v + LatticeCoord{1, 1}, v) == cplx(1, 0));
  CHECK(kasteleyn_weight(v + LatticeCoord{-1, -1}, v) == cplx(-1, 0));
  CHECK(kasteleyn_weight(v + LatticeCoord{-1, 1}, v) == cplx(0, 1));
  CHECK(kasteleyn_weight(v + LatticeCoord{1, -1}, v) == cplx(0, -1));
}

TEST_CASE("determinant counts tilings") {
  struct Case {
    Domain d;
    long expected;
  };
  std::vector<Case> cases = {
      {tilted_rectangle(1.0, 2, 2), 2},
      {tilted_rectangle(1.0, 2, 4), oracle::strip_count(4)},
      {tilted_rectangle(1.0, 2, 7), oracle::strip_count(7)},
      {tilted_rectangle(1.0, 4, 4), 36},
      {build_hedgehog(1.0, {{0, 0}}), 0},
      {build_hedgehog(1.0, {{0, 0}, {1, 0}}), 0},
  };
  for (auto& c : cases) {
    long brute = static_cast<long>(all_matchings(c.d).size());
    if (c.expected) CHECK(brute == c.expected);
    KasteleynSystem s(c.d);
    CHECK(s.partition_function() == doctest::Approx(static_cast<double>(brute)).epsilon(1e-10));
  }
  CHECK(oracle::strip_count(4) == 5);
  CHECK(all_matchings(build_hedgehog(1.0, {{0, 0}})).size() == 36);
}

TEST_CASE("unequal colours and untileable domains") {
  Domain odd = make_even_domain(1.0, {{0, 0}, {1, 1}, {2, 2}});
  CHECK_THROWS_AS(KasteleynSystem{odd}, NoPerfectMatching);
  // two black and two white squares, no perfect matching
  Domain stuck = make_even_domain(1.0, {{0, 0}, {1, 1}, {4, 0}, {5, 1}, {2, 0}, {3, 1}});
  CHECK_NOTHROW(KasteleynSystem{stuck});
  Domain bad = make_even_domain(1.0, {{0, 0}, {2, 0}, {1, 1}, {3, 3}});
  CHECK_THROWS_AS(KasteleynSystem{bad}, NoPerfectMatching);
}

TEST_CASE("coupling column is the inverse") {
  Domain d = build_hedgehog(1.0, {{0, 0}, {1, 0}, {0, 1}});
  KasteleynSystem s(d);
  CHECK(s.inverse_residual(true) < 1e-12);
  for (auto v : s.whites()) {
    cplx diag = 0;
    for (auto u : s.blacks()) diag += s.K(u, v) * s.coupling(u, v);
    CHECK(std::abs(diag - 1.0) < 1e-12);
  }
  CHECK_THROWS_AS(s.coupling_column(s.blacks().front()), InputError);
}

TEST_CASE("2x2 block probabilities") {
  KasteleynSystem s(tilted_rectangle(1.0, 2, 2));
  for (auto u : s.blacks())
    for (auto v : s.whites())
      if (s.domain().adjacent(u, v)) CHECK(s.edge_probability(u, v) == doctest::Approx(0.5));
  auto m = all_matchings(s.domain());
  std::vector<std::pair<LatticeCoord, LatticeCoord>> full(m[0].begin(), m[0].end());
  CHECK(s.joint_probability(full) == doctest::Approx(0.5));
}

TEST_CASE("edge and joint probabilities against enumeration") {
  Domain d = build_hedgehog(1.0, {{0, 0}});
  KasteleynSystem s(d);
  auto ms = all_matchings(d);
  const double N = static_cast<double>(ms.size());
  std::vector<std::pair<LatticeCoord, LatticeCoord>> edges;
  for (auto u : s.blacks())
    for (auto v : s.whites())
      if (d.adjacent(u, v)) edges.push_back({u, v});
  for (auto e : edges) {
    double f = 0;
    for (auto& m : ms) f += m.count(e);
    CHECK(std::abs(s.edge_probability(e.first, e.second) - f / N) < 1e-12);
  }
  std::mt19937_64 rng(7);
  int tested = 0;
  while (tested < 20) {
    auto a = edges[rng() % edges.size()], b = edges[rng() % edges.size()];
    if (a.first == b.first || a.second == b.second) continue;
    double f = 0;
    for (auto& m : ms) f += m.count(a) && m.count(b);
    CHECK(std::abs(s.joint_probability({a, b}) - f / N) < 1e-10);
    ++tested;
  }
  CHECK_THROWS_AS(s.joint_probability({edges[0], edges[0]}), InputError);
  CHECK(s.joint_probability({edges[0]}) == doctest::Approx(s.edge_probability(edges[0].first, edges[0].second)));
}

TEST_CASE("probability sums and half sums") {
  Domain d = approximate_disk(1.0 / 10, 1.0);
  KasteleynSystem s(d);
  auto ps = probability_sum_residual(s);
  CHECK(ps.checked == static_cast<int>(d.squares.size()));
  CHECK(ps.worst < 1e-10);
  auto hs = half_sum_residual(s);
  CHECK(hs.checked > 0);
  CHECK(hs.worst < 1e-10);
}

TEST_CASE("log partition and conditioning") {
  KasteleynSystem s(build_hedgehog(1.0, {{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
  CHECK(s.partition_function() == doctest::Approx(115600).epsilon(1e-10));
  CHECK(s.log_partition() == doctest::Approx(std::log(115600.0)));
  CHECK_FALSE(s.ill_conditioned());
}
