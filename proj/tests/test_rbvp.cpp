#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "hedgehog/rbvp.hpp"

using namespace hedgehog;

namespace {

Domain four_cells() { return build_hedgehog(1.0, {{0, 0}, {1, 0}, {0, 1}, {1, 1}}); }

bool close(cplx a, cplx b, double tol = 1e-12) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

// Two complex numbers equal as an unordered pair.
bool same_pair(cplx a, cplx b, cplx x, cplx y) {
  return (close(a, x) && close(b, y)) || (close(a, y) && close(b, x));
}

std::vector<LatticeCoord> blocks_of(const Domain& d, BoundaryClass c) {
  std::vector<LatticeCoord> out;
  for (const auto& [p, info] : d.blocks)
    if (info.cls == c) out.push_back(p);
  return out;
}

}  // namespace

TEST_CASE("RBVP residuals on a four-cell hedgehog") {
  Domain dom = four_cells();
  LatticeCoord v0 = interior_w0_near(dom, {0.5, 0.0});
  auto sol = solve_rbvp(dom, v0);
  Report rep = verify_rbvp(sol, 1e-10);
  for (const auto& c : rep.checks) {
    INFO(c.name, " ", c.residual);
    CHECK(c.pass);
  }
  // the unmodified field has zero H only at dashed corners
  auto raw = solve_rbvp(dom, v0, false);
  CHECK(raw.residuals.dirichlet_dashed < 1e-10);
  CHECK(raw.residuals.dirichlet > 1e-3);
  CHECK_FALSE(verify_rbvp(raw).all_pass());
}

TEST_CASE("corrupted boundary values are detected") {
  Domain dom = four_cells();
  LatticeCoord v0 = interior_w0_near(dom, {0.5, 0.0});
  auto sol = solve_rbvp(dom, v0);
  SHoloField bad = sol.field;
  auto it = bad.boundary.begin();
  REQUIRE(std::abs(it->second.value) > 1e-6);
  it->second.value *= kI;
  CHECK(rbvp_residuals(dom, v0, bad).riemann > 1e-6);

  SHoloField bad2 = sol.field;
  bad2.squares.at(dom.blacks()[3]) += 0.01;
  auto r = rbvp_residuals(dom, v0, bad2);
  CHECK(r.shol > 1e-3);
}

TEST_CASE("boundary modification table") {
  Domain dom = four_cells();
  LatticeCoord v0 = interior_w0_near(dom, {0.5, 0.0});
  auto sol = solve_rbvp(dom, v0);
  const SHoloField& Fc = sol.check;
  const SHoloField& F = sol.field;
  const double s = kSqrt2;
  auto ghost = [&](LatticeCoord E, int k) { return F.boundary.at({E, k}).ghost_black; };
  auto value = [&](LatticeCoord E, int k) { return F.boundary.at({E, k}).value; };

  auto sharp = blocks_of(dom, BoundaryClass::Sharp);
  auto flat = blocks_of(dom, BoundaryClass::Flat);
  auto minus = blocks_of(dom, BoundaryClass::Minus);
  auto plus = blocks_of(dom, BoundaryClass::Plus);
  CHECK(sharp.size() == 2);
  CHECK(flat.size() == 2);
  CHECK(minus.size() == 2);
  CHECK(plus.size() == 2);

  for (auto E : sharp) {
    cplx uR = Fc.squares.at(E + LatticeCoord{1, 0});
    cplx uI = Fc.squares.at(E - LatticeCoord{1, 0});
    CHECK(close(F.squares.at(E + LatticeCoord{0, 1}), kLambdaBar * uR));
    CHECK(close(ghost(E, NE), kI * (1 - s) * uR));
    CHECK(close(ghost(E, NW), (s - 1) * uR));
    CHECK(close(value(E, NE), uR + kI * (1 - s) * uR));
    CHECK(close(value(E, NW), (s - 1) * uR + uI));
  }
  for (auto E : flat) {
    cplx uR = Fc.squares.at(E + LatticeCoord{1, 0});
    CHECK(close(F.squares.at(E - LatticeCoord{0, 1}), kLambda * uR));
    CHECK(close(ghost(E, SE), kI * (s - 1) * uR));
    CHECK(close(ghost(E, SW), (s - 1) * uR));
  }
  for (auto E : minus) {
    cplx vb = Fc.squares.at(E + LatticeCoord{0, 1});
    CHECK(close(F.squares.at(E - LatticeCoord{1, 0}), -kI * kLambda * vb));
    CHECK(same_pair(ghost(E, NW), ghost(E, SW), (s - 1) * kLambda * vb, (1 - s) * kLambda * vb));
    CHECK(close(value(E, NW), kLambda * vb * cplx(s - 1, -1)));
  }
  for (auto E : plus) {
    cplx vb = Fc.squares.at(E + LatticeCoord{0, 1});
    CHECK(close(F.squares.at(E + LatticeCoord{1, 0}), kLambda * vb));
    CHECK(same_pair(ghost(E, NE), ghost(E, SE), kI * (1 - s) * kLambda * vb,
                    kI * (s - 1) * kLambda * vb));
  }
}

TEST_CASE("identity suite") {
  KasteleynSystem sys(build_hedgehog(1.0, {{0, 0}, {1, 0}, {2, 0}, {0, 1}, {1, 1}}));
  Report rep = identity_suite(sys);
  for (const auto& c : rep.checks) {
    INFO(c.name, " ", c.residual);
    CHECK(c.pass);
  }
  CHECK(rep.find("half_sums"));
  CHECK(rep.find("riemann_bc"));

  // plain even domains get the generic part only
  KasteleynSystem rect(tilted_rectangle(1.0, 4, 4));
  Report r2 = identity_suite(rect);
  CHECK(r2.all_pass());
  CHECK(r2.find("half_sums") == nullptr);
}

TEST_CASE("bad sources") {
  Domain dom = four_cells();
  CHECK_THROWS(solve_rbvp(dom, dom.blacks()[0]));
  CHECK_THROWS(solve_rbvp(dom, {101, 101}));
}
