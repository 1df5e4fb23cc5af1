#pragma once

#include <Eigen/Dense>
#include <memory>
#include <mutex>
#include <vector>

#include "hedgehog/lattice.hpp"

namespace hedgehog {

struct NoPerfectMatching : std::runtime_error {
  double abs_det_estimate;
  NoPerfectMatching(const std::string& what, double est)
      : std::runtime_error(what), abs_det_estimate(est) {}
};

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Weight of the edge between black u and white v: 1, -1, i, -i by direction u - v.
cplx kasteleyn_weight(LatticeCoord u, LatticeCoord v);

// Signed Kasteleyn matrix K (rows black, columns white), its LU factorization,
// and lazily computed coupling columns C(., v) with sum_u K(u, v') C(u, v) = [v = v'].
class KasteleynSystem {
 public:
  explicit KasteleynSystem(Domain d);

  const Domain& domain() const { return dom_; }
  int size() const { return static_cast<int>(blacks_.size()); }
  const std::vector<LatticeCoord>& blacks() const { return blacks_; }
  const std::vector<LatticeCoord>& whites() const { return whites_; }
  int black_index(LatticeCoord u) const;
  int white_index(LatticeCoord v) const;
  const Eigen::MatrixXcd& matrix() const { return K_; }
  cplx K(LatticeCoord u, LatticeCoord v) const;

  // Column C(., v) indexed by black_index; safe under concurrent readers.
  const Eigen::VectorXcd& coupling_column(LatticeCoord v) const;
  // Row C(u, .) indexed by white_index.
  Eigen::VectorXcd coupling_row(LatticeCoord u) const;
  // C(u, v), zero when u lies outside the domain.
  cplx coupling(LatticeCoord u, LatticeCoord v) const;
  // Full matrix C with C(i, j) = C(black i, white j).
  Eigen::MatrixXcd coupling_matrix() const;
  // Solves K^T x = rhs (rhs indexed by white, x by black).
  Eigen::VectorXcd solve_transposed(const Eigen::VectorXcd& rhs) const;

  double edge_probability(LatticeCoord u, LatticeCoord v) const;
  double joint_probability(const std::vector<std::pair<LatticeCoord, LatticeCoord>>& dominoes) const;
  double log_partition() const { return log_abs_det_; }
  double partition_function() const;

  double pivot_growth() const { return pivot_growth_; }
  bool ill_conditioned() const { return pivot_growth_ > 1e8; }
  // max |K^T C - I| over all requested columns so far (or all columns if asked).
  double inverse_residual(bool all_columns = false) const;

 private:
  Domain dom_;
  std::vector<LatticeCoord> blacks_, whites_;
  std::unordered_map<LatticeCoord, int, CoordHash> bidx_, widx_;
  Eigen::MatrixXcd K_;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu_;
  double log_abs_det_ = 0;
  double pivot_growth_ = 1;

  struct Slot {
    std::once_flag once;
    Eigen::VectorXcd col;
  };
  std::unique_ptr<Slot[]> cache_;
};

struct IdentityResidual {
  double worst = 0;
  LatticeCoord at;
  int checked = 0;
};

// Probabilities of the dominoes covering each square sum to one.
IdentityResidual probability_sum_residual(const KasteleynSystem& sys);
// Interior white a: P[a - dl] + P[a - dlbar] = P[a + dl] + P[a + dlbar] = 1/2;
// interior black a: P[a - dl] + P[a + dlbar] = P[a + dl] + P[a - dlbar] = 1/2.
IdentityResidual half_sum_residual(const KasteleynSystem& sys);

}  // namespace hedgehog
