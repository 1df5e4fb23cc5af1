#include "hedgehog/experiments.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

#include "hedgehog/continuum.hpp"
#include "hedgehog/doubledimer.hpp"
#include "hedgehog/io.hpp"
#include "hedgehog/observables.hpp"
#include "hedgehog/rbvp.hpp"

namespace hedgehog {

using nlohmann::json;

void parallel_for(int n, int threads, const std::function<void(int)>& f) {
  int workers = std::max(1, std::min(threads, n));
  if (workers == 1) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errs(n);
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i; (i = next++) < n;) {
        try {
          f(i);
        } catch (...) {
          errs[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
}

// ---- config ----

namespace {

cplx read_point(const json& j, const char* key, cplx fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (v.is_number()) return v.get<double>();
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  throw ConfigError(std::string("field '") + key + "' must be a number or [re, im]");
}

template <class T>
void read(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("bad field '") + key + "'");
  }
}

json pt(cplx z) { return json::array({z.real(), z.imag()}); }

}  // namespace

ExperimentConfig ExperimentConfig::defaults(const std::string& experiment) {
  ExperimentConfig c;
  c.experiment = experiment;
  if (experiment == "rbvp-convergence" || experiment == "dbl-harmonic") {
    c.meshes = {1.0 / 8, 1.0 / 16, 1.0 / 32};
  } else if (experiment == "gff-covariance") {
    c.meshes = {0.1, 0.05, 0.025};
  } else {
    throw ConfigError("unknown experiment '" + experiment + "'");
  }
  return c;
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  std::string name;
  read(j, "experiment", name);
  ExperimentConfig c = defaults(name);
  read(j, "meshes", c.meshes);
  read(j, "radius", c.radius);
  read(j, "seed", c.seed);
  read(j, "threads", c.threads);
  c.source = read_point(j, "source", c.source);
  read(j, "annulus_inner", c.annulus_inner);
  read(j, "annulus_outer", c.annulus_outer);
  read(j, "window", c.window);
  read(j, "max_ratio", c.max_ratio);
  c.z1 = read_point(j, "z1", c.z1);
  c.z2 = read_point(j, "z2", c.z2);
  read(j, "max_final_rel", c.max_final_rel);
  read(j, "angle_u", c.angle_u);
  read(j, "angle_v", c.angle_v);
  read(j, "compact", c.compact);
  read(j, "exclusion", c.exclusion);
  read(j, "rank1_tol", c.rank1_tol);
  read(j, "max_final_err", c.max_final_err);
  c.validate();
  return c;
}

json ExperimentConfig::to_json() const {
  json j;
  j["experiment"] = experiment;
  j["meshes"] = meshes;
  j["radius"] = radius;
  j["seed"] = seed;
  if (experiment == "rbvp-convergence") {
    j["source"] = pt(source);
    j["annulus_inner"] = annulus_inner;
    j["annulus_outer"] = annulus_outer;
    j["window"] = window;
    j["max_ratio"] = max_ratio;
  } else if (experiment == "gff-covariance") {
    j["z1"] = pt(z1);
    j["z2"] = pt(z2);
    j["max_final_rel"] = max_final_rel;
  } else {
    j["angle_u"] = angle_u;
    j["angle_v"] = angle_v;
    j["compact"] = compact;
    j["exclusion"] = exclusion;
    j["rank1_tol"] = rank1_tol;
    j["max_final_err"] = max_final_err;
  }
  return j;
}

void ExperimentConfig::validate() const {
  if (meshes.size() < 2) throw ConfigError("mesh schedule needs at least two entries");
  for (std::size_t i = 0; i < meshes.size(); ++i) {
    if (!(meshes[i] > 0) || meshes[i] > 0.125) throw ConfigError("mesh fractions must lie in (0, 1/8]");
    if (i && !(meshes[i] < meshes[i - 1])) throw ConfigError("mesh schedule must be strictly decreasing");
  }
  if (!(radius > 0)) throw ConfigError("radius must be positive");
  if (threads < 1) throw ConfigError("threads must be at least 1");
  if (std::abs(source) >= annulus_inner) throw ConfigError("source must lie inside the annulus hole");
  if (!(0 < annulus_inner && annulus_inner < annulus_outer && annulus_outer < 1))
    throw ConfigError("annulus must satisfy 0 < inner < outer < 1");
  if (window < 1) throw ConfigError("window must be at least the radius");
  if (std::abs(z1) >= 1 || std::abs(z2) >= 1 || z1 == z2) throw ConfigError("z1, z2 must be distinct disk points");
  if (!(compact > 0 && compact < 1)) throw ConfigError("compact must lie in (0, 1)");
}

// ---- experiment points ----

ExperimentRow rbvp_convergence_point(const ExperimentConfig& cfg, double mesh) {
  const double R = cfg.radius, h = mesh * R;
  Domain dom = approximate_disk(h, R);
  KasteleynSystem sys(dom);
  LatticeCoord v0 = interior_w0_near(dom, cfg.source * R);
  RBVPSolution sol = solve_rbvp(sys, v0);
  const auto& res = sol.residuals;
  BlackField Fc = plane_kernel(v0, h, cfg.window * R);
  cplx vp = position(v0, h);
  Transplanted f = disk_solution(vp / R);
  auto fR = [&](cplx z) { return f(z / R) / R; };

  double err = 0, direct = 0;
  cplx at = 0;
  for (auto u : sys.blacks()) {
    cplx z = position(u, h);
    double r = std::abs(z) / R;
    if (r < cfg.annulus_inner || r > cfg.annulus_outer) continue;
    cplx t = tau(classify_square(u));
    cplx F = sol.field.squares.at(u);
    // projected values carry twice the continuum amplitude
    cplx regular = 2.0 * (fR(z) - kLambda / (2 * M_PI * (z - vp)));
    double e = std::abs(F - Fc.at(u) - proj(regular, t));
    if (e > err) err = e, at = z;
    direct = std::max(direct, std::abs(F - proj(2.0 * fR(z), t)));
  }
  ExperimentRow row{mesh, dom.squares.size(), err};
  row.extra["direct_error"] = direct;
  row.extra["worst_point"] = pt(at);
  row.extra["source"] = pt(vp);
  row.extra["rbvp_residual"] = std::max({res.shol, res.dbar, res.riemann, res.dirichlet});
  return row;
}

ExperimentRow gff_covariance_point(const ExperimentConfig& cfg, double mesh) {
  const double R = cfg.radius, h = mesh * R;
  Domain dom = approximate_disk(h, R);
  KasteleynSystem sys(dom);
  auto x1 = nearest_vertex(dom, cfg.z1 * R), x2 = nearest_vertex(dom, cfg.z2 * R);
  double cov = height_covariance_exact(sys, path_from_boundary(dom, x1), path_from_boundary(dom, x2));
  double target = gff_covariance(cfg.z1, cfg.z2);
  ExperimentRow row{mesh, dom.squares.size(), std::abs(cov - target) / std::abs(target)};
  row.extra["covariance"] = cov;
  row.extra["target"] = target;
  row.extra["z1_lattice"] = pt(position(x1, h) / R);
  row.extra["z2_lattice"] = pt(position(x2, h) / R);
  return row;
}

ExperimentRow dbl_harmonic_point(const ExperimentConfig& cfg, double mesh) {
  const double R = cfg.radius, h = mesh * R;
  Domain dom = approximate_disk(h, R);
  auto [u0, v0] = place_double_dimer_sources(dom, cfg.angle_u, cfg.angle_v);
  DoubleDimerSystem sys(dom, u0, v0);
  double rank1 = INFINITY;
  try {
    rank1 = sys.factorization(1e-8).residual;
  } catch (const ConsistencyError&) {
  }
  auto base = boundary_vertices(sys.punctured().domain()).front();
  DblHeightFit fit = dbl_expected_height(sys, base, cfg.exclusion * R);
  double au = std::arg(position(u0, h)), av = std::arg(position(v0, h));
  double err = 0;
  cplx at = 0;
  for (const auto& [z, val] : fit.normalized) {
    cplx p = position(z, h);
    if (std::abs(p) > cfg.compact * R) continue;
    double e = std::abs(val - harmonic_measure_disk(p / R, au, av));
    if (e > err) err = e, at = p;
  }
  ExperimentRow row{mesh, dom.squares.size(), err};
  row.extra["rank1_residual"] = rank1;
  row.extra["minor_residual"] = sys.rank1_minor_residual();
  row.extra["fit_scale"] = fit.scale;
  row.extra["fit_offset"] = fit.offset;
  row.extra["plateau_residual"] = fit.plateau_residual;
  row.extra["u0"] = pt(position(u0, h));
  row.extra["v0"] = pt(position(v0, h));
  row.extra["worst_point"] = pt(at);
  return row;
}

// ---- driver ----

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentResult out;
  out.config = cfg;
  const int n = static_cast<int>(cfg.meshes.size());
  out.rows.resize(n);
  std::function<ExperimentRow(const ExperimentConfig&, double)> point;
  if (cfg.experiment == "rbvp-convergence") point = rbvp_convergence_point;
  else if (cfg.experiment == "gff-covariance") point = gff_covariance_point;
  else if (cfg.experiment == "dbl-harmonic") point = dbl_harmonic_point;
  else throw ConfigError("unknown experiment '" + cfg.experiment + "'");
  parallel_for(n, cfg.threads, [&](int i) { out.rows[i] = point(cfg, cfg.meshes[i]); });

  Report& rep = out.report;
  rep.title = cfg.experiment;
  bool decreasing = true;
  int where = -1;
  for (int i = 1; i < n; ++i)
    if (!(out.rows[i].error < out.rows[i - 1].error)) decreasing = false, where = i;
  rep.add_flag("strictly_decreasing", decreasing, where < 0 ? "" : "mesh " + fmt_double(cfg.meshes[where]));
  const double first = out.rows.front().error, last = out.rows.back().error;
  if (cfg.experiment == "rbvp-convergence") {
    rep.add("finest_over_coarsest", last / first, cfg.max_ratio);
    double worst = 0;
    for (auto& r : out.rows) worst = std::max(worst, r.extra["rbvp_residual"].get<double>());
    rep.add("rbvp_residuals", worst, 1e-10);
  } else if (cfg.experiment == "gff-covariance") {
    rep.add("final_relative_error", last, cfg.max_final_rel);
  } else {
    double worst = 0;
    for (auto& r : out.rows) {
      double v = r.extra["rank1_residual"].get<double>();
      worst = std::max(worst, std::isfinite(v) ? v : INFINITY);
    }
    rep.add("rank1_residual", worst, cfg.rank1_tol);
    rep.add("final_sup_error", last, cfg.max_final_err);
  }
  json rows = json::array();
  for (auto& r : out.rows) {
    json e = r.extra;
    e["mesh"] = r.mesh;
    e["squares"] = r.squares;
    e["error"] = r.error;
    rows.push_back(e);
  }
  rep.data["rows"] = rows;
  return out;
}

std::string ExperimentResult::csv() const {
  std::ostringstream os;
  os << "mesh,delta,squares,error\n";
  for (auto& r : rows)
    os << fmt_double(r.mesh) << ',' << fmt_double(r.mesh * config.radius) << ',' << r.squares << ','
       << fmt_double(r.error) << '\n';
  return os.str();
}

std::string ExperimentResult::svg() const {
  Series s{config.experiment, {}};
  for (auto& r : rows) s.points.push_back({r.mesh * config.radius, r.error});
  return render_error_plot_svg({s}, config.experiment + ": error vs mesh");
}

}  // namespace hedgehog
