// End-to-end acceptance run: one PASS/FAIL line per criterion.

#include <boost/math/distributions/chi_squared.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <thread>
#include <unistd.h>

#include "hedgehog/continuum.hpp"
#include "hedgehog/experiments.hpp"
#include "hedgehog/rbvp.hpp"
#include "hedgehog/tiling.hpp"
#include "oracles.hpp"

using namespace hedgehog;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void verdict(int n, bool pass, const std::string& what, const std::string& detail) {
  std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << n << ": " << what << " (" << detail
            << ")" << std::endl;
  if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

int threads() { return std::max(1u, std::thread::hardware_concurrency()); }

void exact_identities() {
  auto t0 = std::chrono::steady_clock::now();
  Domain d = approximate_disk(0.05, 1.0);
  KasteleynSystem sys(d);
  Report r = identity_suite(sys, {}, 1e-10);
  double secs = seconds_since(t0);
  bool size_ok = d.squares.size() >= 500 && d.squares.size() <= 2000;
  double worst = 0;
  std::string failed;
  for (const auto& c : r.checks) {
    worst = std::max(worst, c.residual);
    if (!c.pass) failed += " " + c.name;
  }
  bool pass = r.all_pass() && size_ok && secs <= 30 && r.checks.size() >= 12;
  verdict(1, pass, "exact identities on a hedgehog disk",
          std::to_string(d.squares.size()) + " squares, " + std::to_string(r.checks.size()) +
              " checks, worst " + sci(worst) + ", " + sci(secs) + " s" +
              (failed.empty() ? "" : ", failed:" + failed));
}

void oracle_equivalence() {
  auto t0 = std::chrono::steady_clock::now();
  auto det = [](const Domain& d) { return KasteleynSystem(d).partition_function(); };
  double d22 = det(tilted_rectangle(1.0, 2, 2));
  double d24 = det(tilted_rectangle(1.0, 2, 4));
  double d16 = det(build_hedgehog(1.0, {{0, 0}}));
  bool dets = std::abs(d22 - 2) < 1e-10 && std::abs(d24 - 5) < 1e-10 && std::abs(d16 - 36) < 1e-10;

  Domain d = build_hedgehog(1.0, {{0, 0}, {1, 0}});
  KasteleynSystem sys(d);
  auto all = oracle::matchings(d.squares, [&](LatticeCoord a, LatticeCoord b) { return d.adjacent(a, b); });
  std::vector<std::pair<LatticeCoord, LatticeCoord>> edges;
  for (auto u : d.blacks())
    for (auto dir : kEdgeDir)
      if (d.adjacent(u, u + dir)) edges.push_back({u, u + dir});
  std::mt19937_64 rng(2024);
  double worst = 0;
  int pairs = 0;
  while (pairs < 20) {
    auto a = edges[rng() % edges.size()], b = edges[rng() % edges.size()];
    if (a.first == b.first || a.second == b.second) continue;
    int hits = 0;
    for (const auto& m : all) hits += m.count(a) && m.count(b);
    double want = static_cast<double>(hits) / all.size();
    worst = std::max(worst, std::abs(sys.joint_probability({a, b}) - want));
    ++pairs;
  }
  double secs = seconds_since(t0);
  verdict(2, dets && worst <= 1e-10 && secs <= 5, "Kasteleyn determinants and joint probabilities",
          "|det| = " + sci(d22) + ", " + sci(d24) + ", " + sci(d16) + "; joint worst " + sci(worst) +
              " over 20 pairs, " + sci(secs) + " s");
}

void sampler() {
  auto t0 = std::chrono::steady_clock::now();
  Domain d = build_hedgehog(1.0, {{0, 0}});
  KasteleynSystem sys(d);
  ExactSampler s(sys);
  const int N = 100000;
  const int T = threads();
  std::vector<std::map<Tiling, int>> parts(T);
  parallel_for(T, T, [&](int k) {
    std::seed_seq seq{1u, static_cast<unsigned>(k)};
    std::mt19937_64 rng(seq);
    for (int i = k; i < N; i += T) ++parts[k][s.sample(rng)];
  });
  std::map<Tiling, int> counts;
  for (const auto& p : parts)
    for (const auto& [t, c] : p) counts[t] += c;
  const std::size_t cells = 36;
  double e = double(N) / cells, x2 = (cells - counts.size()) * e;
  for (const auto& [t, c] : counts) x2 += (c - e) * (c - e) / e;
  boost::math::chi_squared dist(cells - 1.0);
  double pval = boost::math::cdf(boost::math::complement(dist, x2));

  double worst_z = 0;
  for (auto u : d.blacks())
    for (auto dir : kEdgeDir) {
      LatticeCoord v = u + dir;
      if (!d.adjacent(u, v)) continue;
      double p = sys.edge_probability(u, v);
      int k = 0;
      for (const auto& [t, c] : counts)
        if (t.covers(u, v)) k += c;
      double sigma = std::sqrt(p * (1 - p) / N);
      if (sigma > 0) worst_z = std::max(worst_z, std::abs(double(k) / N - p) / sigma);
    }
  double secs = seconds_since(t0);
  bool pass = counts.size() == cells && pval > 1e-3 && worst_z <= 4 && secs <= 60;
  verdict(3, pass, "exact sampler uniformity",
          "1e5 samples, chi2 p = " + sci(pval) + ", worst edge z = " + sci(worst_z) + ", " +
              sci(secs) + " s");
}

std::string errors_of(const ExperimentResult& r) {
  std::string s;
  for (const auto& row : r.rows) s += (s.empty() ? "" : ", ") + sci(row.error);
  return s;
}

void experiment(int n, const std::string& name, const std::string& what) {
  auto c = ExperimentConfig::defaults(name);
  c.threads = threads();
  auto r = run_experiment(c);
  std::string failed;
  for (const auto& ch : r.report.checks)
    if (!ch.pass) failed += " " + ch.name;
  verdict(n, r.report.all_pass(), what,
          "errors " + errors_of(r) + (failed.empty() ? "" : ", failed:" + failed));
}

void continuum_checks() {
  auto t0 = std::chrono::steady_clock::now();
  ReferenceFunction f0{RefKind::DiskInterior};
  double bc = 0;
  for (int k = 0; k < 360; ++k) {
    cplx z = std::polar(1.0, 2 * M_PI * k / 360);
    bc = std::max(bc, std::abs((f0(z) * std::sqrt(z)).imag()));
  }
  // f_plus moved to the half-plane by z -> (z - i)/(z + i) equals f0 + f1 there
  Mobius phi = Mobius::halfplane_to_disk();
  cplx w(0.4, 1.1);
  Transplanted t = transplant(ReferenceFunction{RefKind::FPlus}, phi, w);
  ReferenceFunction a{RefKind::F0Half, w}, b{RefKind::F1Half, w};
  double tr = 0;
  for (int k = 0; k < 10; ++k) {
    cplx z(-2.0 + 0.45 * k, 0.2 + 0.3 * k);
    cplx want = a(z) + b(z);
    tr = std::max(tr, std::abs(t(z) - want) / std::abs(want));
  }
  std::vector<cplx> ws;
  for (int k = 0; k < 12; ++k) ws.push_back(std::polar(0.1 + 0.07 * k, 0.5 * k));
  double prod = product_hm_residual(-M_PI / 2, 0.0, ws);
  double secs = seconds_since(t0);
  verdict(7, bc <= 1e-12 && tr <= 1e-10 && prod <= 1e-6 && secs <= 5, "continuum self-checks",
          "boundary " + sci(bc) + ", transplant " + sci(tr) + ", product-hm " + sci(prod) + ", " +
              sci(secs) + " s");
}

std::map<std::string, std::string> slurp_dir(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    std::ifstream in(e.path(), std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    out[e.path().filename().string()] = ss.str();
  }
  return out;
}

bool run_cli(const fs::path& dir, int seed) {
  fs::create_directories(dir);
  std::string base = std::string("\"") + HEDGEHOG_CLI + "\" --threads 1 --seed " + std::to_string(seed) +
                     " --out-dir \"" + dir.string() + "\" ";
  const char* quiet = " > /dev/null 2>&1";
  bool ok = std::system((base + "sample --n 300" + quiet).c_str()) == 0;
  ok = ok && std::system((base + "solve" + quiet).c_str()) == 0;
  ok = ok && std::system((base + "experiment rbvp-convergence --meshes 0.125,0.0625" + quiet).c_str()) == 0;
  return ok;
}

void cli_reproducibility() {
  fs::path root = fs::temp_directory_path() / ("hedgehog_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(root);
  bool ran = run_cli(root / "a", 7) && run_cli(root / "b", 7) && run_cli(root / "c", 8);
  bool same = false, differs = false;
  std::size_t files = 0;
  if (ran) {
    auto a = slurp_dir(root / "a"), b = slurp_dir(root / "b"), c = slurp_dir(root / "c");
    files = a.size();
    same = !a.empty() && a == b;
    differs = a.at("tilings.json") != c.at("tilings.json");
  }
  fs::remove_all(root);
  verdict(8, ran && same && differs, "CLI byte-identical reruns",
          std::to_string(files) + " files compared" + (differs ? ", other seed differs" : ""));
}

}  // namespace

int main() {
  exact_identities();
  oracle_equivalence();
  sampler();
  experiment(4, "rbvp-convergence", "RBVP convergence to the continuum solution");
  experiment(5, "gff-covariance", "height covariance against the GFF");
  experiment(6, "dbl-harmonic", "double-dimer height against harmonic measure");
  continuum_checks();
  cli_reproducibility();
  return failures == 0 ? 0 : 1;
}
