#include "hedgehog/kasteleyn.hpp"

#include <cmath>
#include <set>

namespace hedgehog {

cplx kasteleyn_weight(LatticeCoord u, LatticeCoord v) {
  auto d = u - v;
  if (d.n == 1 && d.m == 1) return 1.0;
  if (d.n == -1 && d.m == -1) return -1.0;
  if (d.n == -1 && d.m == 1) return kI;
  if (d.n == 1 && d.m == -1) return -kI;
  return 0.0;
}

KasteleynSystem::KasteleynSystem(Domain d) : dom_(std::move(d)) {
  blacks_ = dom_.blacks();
  whites_ = dom_.whites();
  if (blacks_.size() != whites_.size()) {
    throw NoPerfectMatching("unequal black/white counts", 0.0);
  }
  if (blacks_.empty()) throw InputError("empty domain");
  const int n = size();
  for (int i = 0; i < n; ++i) bidx_[blacks_[i]] = i, widx_[whites_[i]] = i;

  K_ = Eigen::MatrixXcd::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    for (auto dir : kEdgeDir) {
      LatticeCoord u = whites_[j] + dir;
      if (dom_.adjacent(u, whites_[j])) K_(bidx_.at(u), j) = kasteleyn_weight(u, whites_[j]);
    }
  }
  lu_.compute(K_);
  const auto& lu = lu_.matrixLU();
  double umax = 0, logdet = 0, minpiv = INFINITY;
  for (int i = 0; i < n; ++i) {
    double piv = std::abs(lu(i, i));
    minpiv = std::min(minpiv, piv);
    logdet += std::log(piv);
    for (int j = i; j < n; ++j) umax = std::max(umax, std::abs(lu(i, j)));
  }
  pivot_growth_ = umax;  // max |K| = 1
  if (!(minpiv > 1e-12 * umax)) {
    throw NoPerfectMatching("Kasteleyn matrix is singular: no perfect matching", 0.0);
  }
  log_abs_det_ = logdet;
  cache_ = std::make_unique<Slot[]>(n);
}

int KasteleynSystem::black_index(LatticeCoord u) const {
  auto it = bidx_.find(u);
  if (it == bidx_.end()) throw InputError("not a black square of the domain");
  return it->second;
}

int KasteleynSystem::white_index(LatticeCoord v) const {
  auto it = widx_.find(v);
  if (it == widx_.end()) throw InputError("not a white square of the domain");
  return it->second;
}

cplx KasteleynSystem::K(LatticeCoord u, LatticeCoord v) const {
  return dom_.adjacent(u, v) ? kasteleyn_weight(u, v) : 0.0;
}

const Eigen::VectorXcd& KasteleynSystem::coupling_column(LatticeCoord v) const {
  int j = white_index(v);
  Slot& s = cache_[j];
  std::call_once(s.once, [&] {
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(size());
    e(j) = 1.0;
    s.col = lu_.transpose().solve(e);
  });
  return s.col;
}

Eigen::VectorXcd KasteleynSystem::coupling_row(LatticeCoord u) const {
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(size());
  e(black_index(u)) = 1.0;
  return lu_.solve(e);
}

cplx KasteleynSystem::coupling(LatticeCoord u, LatticeCoord v) const {
  auto it = bidx_.find(u);
  if (it == bidx_.end()) return 0.0;
  return coupling_column(v)(it->second);
}

Eigen::MatrixXcd KasteleynSystem::coupling_matrix() const {
  return lu_.transpose().solve(Eigen::MatrixXcd::Identity(size(), size()));
}

Eigen::VectorXcd KasteleynSystem::solve_transposed(const Eigen::VectorXcd& rhs) const {
  return lu_.transpose().solve(rhs);
}

double KasteleynSystem::edge_probability(LatticeCoord u, LatticeCoord v) const {
  if (!dom_.adjacent(u, v)) throw InputError("squares are not adjacent");
  return std::abs(coupling(u, v));
}

double KasteleynSystem::joint_probability(
    const std::vector<std::pair<LatticeCoord, LatticeCoord>>& dominoes) const {
  std::set<LatticeCoord> used;
  for (auto [u, v] : dominoes) {
    if (!dom_.adjacent(u, v)) throw InputError("domino squares are not adjacent");
    if (!used.insert(u).second || !used.insert(v).second) throw InputError("overlapping dominoes");
  }
  const int k = static_cast<int>(dominoes.size());
  if (k == 0) return 1.0;
  Eigen::MatrixXcd M(k, k);
  cplx prod = 1.0;
  for (int j = 0; j < k; ++j) {
    const auto& col = coupling_column(dominoes[j].second);
    for (int i = 0; i < k; ++i) M(i, j) = col(black_index(dominoes[i].first));
    prod *= kasteleyn_weight(dominoes[j].first, dominoes[j].second);
  }
  return std::abs(prod * M.determinant());
}

double KasteleynSystem::partition_function() const { return std::exp(log_abs_det_); }

double KasteleynSystem::inverse_residual(bool all_columns) const {
  double worst = 0;
  for (int j = 0; j < size(); ++j) {
    if (!all_columns && cache_[j].col.size() == 0) continue;
    const auto& c = coupling_column(whites_[j]);
    Eigen::VectorXcd r = K_.transpose() * c;
    r(j) -= 1.0;
    worst = std::max(worst, r.cwiseAbs().maxCoeff());
  }
  return worst;
}

namespace {

void note(IdentityResidual& r, double e, LatticeCoord c) {
  ++r.checked;
  if (e > r.worst) r.worst = e, r.at = c;
}

}  // namespace

IdentityResidual probability_sum_residual(const KasteleynSystem& sys) {
  const Domain& d = sys.domain();
  Eigen::MatrixXcd C = sys.coupling_matrix();
  IdentityResidual r;
  for (auto a : d.squares) {
    double total = 0;
    for (auto dir : kEdgeDir) {
      LatticeCoord b = a + dir;
      if (!d.adjacent(a, b)) continue;
      auto [u, v] = is_black_square(a) ? std::pair{a, b} : std::pair{b, a};
      total += std::abs(C(sys.black_index(u), sys.white_index(v)));
    }
    note(r, std::abs(total - 1.0), a);
  }
  return r;
}

IdentityResidual half_sum_residual(const KasteleynSystem& sys) {
  const Domain& d = sys.domain();
  Eigen::MatrixXcd C = sys.coupling_matrix();
  IdentityResidual r;
  auto p = [&](LatticeCoord a, LatticeCoord b) {
    auto [u, v] = is_black_square(a) ? std::pair{a, b} : std::pair{b, a};
    return std::abs(C(sys.black_index(u), sys.white_index(v)));
  };
  for (auto a : d.squares) {
    if (!d.is_interior(a)) continue;
    // whites pair their two left neighbours, blacks their two lower ones
    LatticeCoord side = is_black_square(a) ? LatticeCoord{1, -1} : LatticeCoord{-1, 1};
    double lo = p(a, a + LatticeCoord{-1, -1}) + p(a, a + side);
    double hi = p(a, a + LatticeCoord{1, 1}) + p(a, a - side);
    note(r, std::max(std::abs(lo - 0.5), std::abs(hi - 0.5)), a);
  }
  return r;
}

}  // namespace hedgehog
