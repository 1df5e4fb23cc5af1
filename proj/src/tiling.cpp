#include "hedgehog/tiling.hpp"

#include <cmath>
#include <deque>
#include <set>

namespace hedgehog {

namespace {

const std::array<LatticeCoord, 4> kVertexOffsets{{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}};

}  // namespace

bool is_perfect_matching(const Domain& d, const Tiling& t) {
  std::set<LatticeCoord> seen;
  for (auto [u, v] : t.partner) {
    if (!is_black_square(u) || !d.adjacent(u, v) || !seen.insert(v).second) return false;
  }
  return t.partner.size() == d.blacks().size() && seen.size() == d.whites().size();
}

int HeightField::at(LatticeCoord z) const {
  auto it = values.find(z);
  if (it == values.end()) throw IntegrityError("vertex outside the height field");
  return it->second;
}

std::pair<LatticeCoord, LatticeCoord> edge_sides(LatticeCoord x, LatticeCoord y) {
  auto d = y - x;
  LatticeCoord a = x + LatticeCoord{d.n, 0}, b = x + LatticeCoord{0, d.m};
  // x + (dx, 0) is on the left of x -> y iff dx * dy < 0
  if (d.n * d.m < 0) return {a, b};
  return {b, a};
}

int height_increment(LatticeCoord x, LatticeCoord y, bool crossed) {
  bool black_left = is_black_square(edge_sides(x, y).first);
  if (black_left) return crossed ? -3 : 1;
  return crossed ? 3 : -1;
}

std::vector<std::pair<LatticeCoord, LatticeCoord>> domain_edges(const Domain& d) {
  std::set<std::pair<LatticeCoord, LatticeCoord>> es;
  for (auto s : d.squares) {
    for (int k = 0; k < 4; ++k) {
      LatticeCoord x = s + kVertexOffsets[k], y = s + kVertexOffsets[(k + 1) % 4];
      es.insert({std::min(x, y), std::max(x, y)});
    }
  }
  return {es.begin(), es.end()};
}

std::vector<Tiling> enumerate_tilings(const Domain& d, std::size_t max_squares) {
  if (d.squares.size() > max_squares) throw InputError("domain too large for enumeration");
  std::vector<Tiling> out;
  std::set<LatticeCoord> free(d.squares.begin(), d.squares.end());
  Tiling cur;
  auto rec = [&](auto&& self) -> void {
    if (free.empty()) {
      out.push_back(cur);
      return;
    }
    LatticeCoord s = *free.begin();
    free.erase(free.begin());
    for (auto dir : kEdgeDir) {
      LatticeCoord t = s + dir;
      if (!free.count(t) || !d.adjacent(s, t)) continue;
      free.erase(t);
      bool sb = is_black_square(s);
      cur.partner[sb ? s : t] = sb ? t : s;
      self(self);
      cur.partner.erase(sb ? s : t);
      free.insert(t);
    }
    free.insert(s);
  };
  rec(rec);
  std::sort(out.begin(), out.end());
  return out;
}

ExactSampler::ExactSampler(const KasteleynSystem& sys) : sys_(sys), C0_(sys.coupling_matrix()) {}

Eigen::MatrixXcd ExactSampler::refactor(const std::vector<bool>& bfree,
                                        const std::vector<bool>& wfree) const {
  std::vector<int> bi, wi;
  for (int i = 0; i < sys_.size(); ++i) {
    if (bfree[i]) bi.push_back(i);
    if (wfree[i]) wi.push_back(i);
  }
  const int r = static_cast<int>(bi.size());
  Eigen::MatrixXcd Ks(r, r);
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b) Ks(a, b) = sys_.matrix()(bi[a], wi[b]);
  Eigen::MatrixXcd Cs = Ks.transpose().partialPivLu().inverse();
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(sys_.size(), sys_.size());
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b) C(bi[a], wi[b]) = Cs(a, b);
  return C;
}

Tiling ExactSampler::sample(std::mt19937_64& rng) const {
  const int n = sys_.size();
  const Domain& dom = sys_.domain();
  Eigen::MatrixXcd C = C0_;
  std::vector<bool> bfree(n, true), wfree(n, true);
  Tiling t;
  for (int j = 0; j < n; ++j) {
    LatticeCoord v = sys_.whites()[j];
    int cand[4], nc = 0;
    double p[4], total = 0;
    for (auto dir : kEdgeDir) {
      LatticeCoord u = v + dir;
      if (!dom.adjacent(u, v)) continue;
      int i = sys_.black_index(u);
      if (!bfree[i]) continue;
      cand[nc] = i;
      p[nc] = std::abs(C(i, j));
      total += p[nc++];
    }
    double gap = std::abs(total - 1.0);
    for (double seen = worst_closure_.load(); gap > seen && !worst_closure_.compare_exchange_weak(seen, gap);) {
    }
    if (gap > 1e-8) throw IntegrityError("conditional probabilities do not sum to 1");
    double x = uniform01(rng) * total, acc = 0;
    int pick = cand[nc - 1];
    for (int c = 0; c < nc; ++c) {
      acc += p[c];
      if (x < acc) {
        pick = cand[c];
        break;
      }
    }
    t.partner[sys_.blacks()[pick]] = v;
    bfree[pick] = false;
    wfree[j] = false;
    cplx piv = C(pick, j);
    if (std::abs(piv) < 1e-12) {
      C = refactor(bfree, wfree);
      continue;
    }
    Eigen::VectorXcd col = C.col(j);
    Eigen::RowVectorXcd row = C.row(pick) / piv;
    C.noalias() -= col * row;
  }
  return t;
}

Tiling sample_exact(const KasteleynSystem& sys, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return ExactSampler(sys).sample(rng);
}

Tiling glauber_step(const Domain& d, const Tiling& t, std::mt19937_64& rng) {
  std::vector<LatticeCoord> centers;
  for (auto z : d.vertices()) {
    bool full = true;
    for (auto o : kVertexOffsets) full = full && d.contains(z + o);
    if (full) centers.push_back(z);
  }
  if (centers.empty()) return t;
  LatticeCoord z = centers[std::min<std::size_t>(centers.size() - 1,
                                                 static_cast<std::size_t>(uniform01(rng) * centers.size()))];
  bool flip = uniform01(rng) < 0.5;
  if (!flip) return t;
  LatticeCoord e = z + kVertexOffsets[0], nn = z + kVertexOffsets[1], w = z + kVertexOffsets[2],
               s = z + kVertexOffsets[3];
  auto paired = [&](LatticeCoord a, LatticeCoord b) {
    return is_black_square(a) ? t.covers(a, b) : t.covers(b, a);
  };
  auto set_pair = [](Tiling& x, LatticeCoord a, LatticeCoord b) {
    if (is_black_square(a)) x.partner[a] = b;
    else x.partner[b] = a;
  };
  Tiling out = t;
  if (paired(e, nn) && paired(w, s) && d.adjacent(e, s) && d.adjacent(w, nn)) {
    set_pair(out, e, s);
    set_pair(out, w, nn);
  } else if (paired(e, s) && paired(w, nn) && d.adjacent(e, nn) && d.adjacent(w, s)) {
    set_pair(out, e, nn);
    set_pair(out, w, s);
  }
  return out;
}

HeightField height_from_tiling(const Domain& d, const Tiling& t, LatticeCoord base) {
  std::map<LatticeCoord, std::vector<LatticeCoord>> nbrs;
  for (auto [x, y] : domain_edges(d)) {
    nbrs[x].push_back(y);
    nbrs[y].push_back(x);
  }
  if (!nbrs.count(base)) throw IntegrityError("base vertex not in domain");
  auto crossed = [&](LatticeCoord x, LatticeCoord y) {
    auto [a, b] = edge_sides(x, y);
    if (!d.adjacent(a, b)) return false;
    return is_black_square(a) ? t.covers(a, b) : t.covers(b, a);
  };
  HeightField h;
  h.base = base;
  h.values[base] = 0;
  std::deque<LatticeCoord> q{base};
  while (!q.empty()) {
    auto x = q.front();
    q.pop_front();
    for (auto y : nbrs[x]) {
      int hy = h.values[x] + height_increment(x, y, crossed(x, y));
      auto [it, fresh] = h.values.emplace(y, hy);
      if (fresh) q.push_back(y);
      else if (it->second != hy) throw IntegrityError("height loop does not close");
    }
  }
  return h;
}

Tiling tiling_from_height(const Domain& d, const HeightField& h) {
  Tiling t;
  for (auto [x, y] : domain_edges(d)) {
    if (std::abs(h.at(y) - h.at(x)) != 3) continue;
    auto [a, b] = edge_sides(x, y);
    if (is_black_square(a)) t.partner[a] = b;
    else t.partner[b] = a;
  }
  return t;
}

}  // namespace hedgehog
