#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <random>

#include "hedgehog/kasteleyn.hpp"

namespace hedgehog {

struct IntegrityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Perfect matching black -> white.
struct Tiling {
  std::map<LatticeCoord, LatticeCoord> partner;

  bool covers(LatticeCoord u, LatticeCoord v) const {
    auto it = partner.find(u);
    return it != partner.end() && it->second == v;
  }
  bool operator==(const Tiling&) const = default;
  bool operator<(const Tiling& o) const { return partner < o.partner; }
};

bool is_perfect_matching(const Domain& d, const Tiling& t);

struct HeightField {
  std::map<LatticeCoord, int> values;
  LatticeCoord base;
  int at(LatticeCoord z) const;
};

// Height increment along the directed edge x -> y given whether a domino crosses it.
int height_increment(LatticeCoord x, LatticeCoord y, bool crossed);
// Squares on the two sides of the edge x -> y (left first).
std::pair<LatticeCoord, LatticeCoord> edge_sides(LatticeCoord x, LatticeCoord y);
// Edges of domain squares as (x, y) with x < y, sorted.
std::vector<std::pair<LatticeCoord, LatticeCoord>> domain_edges(const Domain& d);

std::vector<Tiling> enumerate_tilings(const Domain& d, std::size_t max_squares = 28);

// Uniform random double in [0, 1) from the top 53 bits.
inline double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Exact sampler: sequential conditioning with rank-one updates of C.
// sample() may be called concurrently with distinct generators.
class ExactSampler {
 public:
  explicit ExactSampler(const KasteleynSystem& sys);
  Tiling sample(std::mt19937_64& rng) const;
  double worst_closure() const { return worst_closure_; }

 private:
  const KasteleynSystem& sys_;
  Eigen::MatrixXcd C0_;
  mutable std::atomic<double> worst_closure_{0.0};
  Eigen::MatrixXcd refactor(const std::vector<bool>& bfree, const std::vector<bool>& wfree) const;
};

Tiling sample_exact(const KasteleynSystem& sys, std::uint64_t seed);

// Picks a uniform 2x2 block; rotates two parallel dominoes with probability 1/2.
Tiling glauber_step(const Domain& d, const Tiling& t, std::mt19937_64& rng);

HeightField height_from_tiling(const Domain& d, const Tiling& t, LatticeCoord base);
Tiling tiling_from_height(const Domain& d, const HeightField& h);

}  // namespace hedgehog
