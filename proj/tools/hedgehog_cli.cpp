// hedgehog: domain generation, verification, sampling, rendering and the
// convergence experiments. Exit codes: 0 all checks pass, 1 a check failed,
// 2 malformed input or configuration.

#include <algorithm>
#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "hedgehog/experiments.hpp"
#include "hedgehog/io.hpp"
#include "hedgehog/rbvp.hpp"
#include "hedgehog/svg.hpp"
#include "hedgehog/tiling.hpp"

namespace fs = std::filesystem;
using namespace hedgehog;
using nlohmann::json;

namespace {

constexpr const char* kOutDirEnv = "HEDGEHOG_OUTPUT_DIR";

struct Global {
  int threads = 1;
  std::uint64_t seed = 1;
  std::string out_dir;
};

std::string out_path(const Global& g, const std::string& explicit_path, const std::string& name) {
  if (!explicit_path.empty()) return explicit_path;
  std::string dir = g.out_dir;
  if (dir.empty()) {
    const char* env = std::getenv(kOutDirEnv);
    dir = env && *env ? env : ".";
  }
  fs::create_directories(dir);
  return (fs::path(dir) / name).string();
}

// Report JSON with provenance of the run.
std::string stamped(const Report& rep, const json& config, std::uint64_t seed) {
  json j = rep.to_json();
  j["config"] = config;
  j["config_hash"] = fnv1a_hex(config.dump());
  j["seed"] = seed;
  return j.dump(2) + "\n";
}

cplx parse_point(const std::string& s) {
  if (s.empty()) throw ConfigError("empty point");
  auto comma = s.find(',');
  try {
    if (comma == std::string::npos) return std::stod(s);
    return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
  } catch (const std::exception&) {
    throw ConfigError("bad point '" + s + "' (expected x or x,y)");
  }
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("bad list entry '" + item + "'");
    }
  }
  return out;
}

std::vector<std::pair<int, int>> parse_cells(std::string s) {
  std::vector<std::pair<int, int>> cells;
  std::replace(s.begin(), s.end(), ':', ';');  // ':' avoids shell and CMake list quoting
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ';')) {
    auto v = parse_list(item);
    if (v.size() != 2) throw ConfigError("cells are written i,j;i,j;...");
    cells.push_back({static_cast<int>(v[0]), static_cast<int>(v[1])});
  }
  return cells;
}

Domain load_domain(const std::string& path, const Domain& fallback) {
  if (path.empty()) return fallback;
  return domain_from_json(read_json_file(path));
}

std::optional<LatticeCoord> source_square(const Domain& d, const std::string& spec) {
  if (spec.empty()) return std::nullopt;
  return interior_w0_near(d, parse_point(spec));
}

LatticeCoord source_or_centroid(const Domain& d, const std::string& spec) {
  if (!spec.empty()) return interior_w0_near(d, parse_point(spec));
  cplx c = 0;
  for (auto s : d.squares) c += position(s, d.delta);
  return interior_w0_near(d, c / static_cast<double>(d.squares.size()));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dimer model on hedgehog domains"};
  app.require_subcommand(1);
  Global g;
  app.add_option("--threads", g.threads, "worker cap (1 = bit-reproducible)")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "random seed");
  app.add_option("--out-dir", g.out_dir, std::string("output directory (default $") + kOutDirEnv + " or .)");
  app.fallthrough();

  // gen
  auto* gen = app.add_subcommand("gen", "write a domain JSON");
  std::string shape = "disk", cells_spec, gen_out;
  double radius = 1.0, delta = 0.05;
  int rect_a = 2, rect_b = 2;
  gen->add_option("--shape", shape, "disk | cells | rect")->check(CLI::IsMember({"disk", "cells", "rect"}));
  gen->add_option("--radius", radius);
  gen->add_option("--delta", delta);
  gen->add_option("--cells", cells_spec, "hedgehog cells i,j;i,j;... (or i,j:i,j)");
  gen->add_option("--width", rect_a);
  gen->add_option("--height", rect_b);
  gen->add_option("-o,--output", gen_out);

  // shared domain input
  std::string domain_path, source_spec;
  double tol = 1e-10;
  const Domain default_disk = approximate_disk(1.0 / 16, 1.0);
  const Domain single_cell = build_hedgehog(1.0, {{0, 0}});

  auto* verify = app.add_subcommand("verify", "run the exact-identity suite");
  std::string verify_out;
  verify->add_option("--domain", domain_path, "domain JSON (default: unit disk, delta 1/16)");
  verify->add_option("--source", source_spec, "RBVP source point x,y");
  verify->add_option("--tol", tol);
  verify->add_option("-o,--output", verify_out);

  auto* solve = app.add_subcommand("solve", "coupling column and RBVP primitive H as CSV");
  std::string coupling_out, h_out;
  bool unmodified = false;
  solve->add_option("--domain", domain_path);
  solve->add_option("--source", source_spec);
  solve->add_flag("--unmodified", unmodified, "skip the boundary modification");
  solve->add_option("--coupling-out", coupling_out);
  solve->add_option("--h-out", h_out);

  auto* sample = app.add_subcommand("sample", "exact uniform tilings");
  int n_samples = 1;
  std::string sample_out;
  sample->add_option("--domain", domain_path, "domain JSON (default: single-cell hedgehog)");
  sample->add_option("--n", n_samples)->check(CLI::PositiveNumber);
  sample->add_option("-o,--output", sample_out);

  auto* render = app.add_subcommand("render", "SVG of a tiling or of the RBVP H field");
  std::string tiling_path, render_what = "tiling", render_out;
  render->add_option("--domain", domain_path);
  render->add_option("--tiling", tiling_path, "tiling JSON (default: one exact sample)");
  render->add_option("--what", render_what)->check(CLI::IsMember({"tiling", "H"}));
  render->add_option("--source", source_spec);
  render->add_option("-o,--output", render_out);

  auto* exp = app.add_subcommand("experiment", "convergence experiments");
  std::string exp_name, exp_config, meshes_spec, exp_prefix;
  exp->add_option("name", exp_name, "rbvp-convergence | gff-covariance | dbl-harmonic")->required();
  exp->add_option("--config", exp_config, "experiment config JSON");
  exp->add_option("--meshes", meshes_spec, "mesh fractions of the radius, e.g. 0.1,0.05,0.025");
  exp->add_option("--prefix", exp_prefix, "output file prefix");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*gen) {
      Domain d;
      if (shape == "disk") d = approximate_disk(delta, radius);
      else if (shape == "cells") d = build_hedgehog(delta, parse_cells(cells_spec));
      else d = tilted_rectangle(delta, rect_a, rect_b);
      std::string path = out_path(g, gen_out, "domain.json");
      write_text_file(path, domain_to_json(d).dump(2) + "\n");
      std::cout << path << ": " << d.squares.size() << " squares\n";
      return 0;
    }

    if (*verify) {
      Domain d = load_domain(domain_path, default_disk);
      KasteleynSystem sys(d);
      Report rep = identity_suite(sys, source_square(d, source_spec), tol);
      json cfg = {{"command", "verify"}, {"domain", domain_to_json(d)}, {"source", source_spec}, {"tol", tol}};
      std::string path = out_path(g, verify_out, "report.json");
      write_text_file(path, stamped(rep, cfg, g.seed));
      for (const auto& c : rep.checks)
        std::cout << (c.pass ? "pass " : "FAIL ") << c.name << " " << fmt_double(c.residual) << "\n";
      if (!rep.all_pass()) {
        std::cerr << "checks failed, see " << path << "\n";
        return 1;
      }
      return 0;
    }

    if (*solve) {
      Domain d = load_domain(domain_path, default_disk);
      KasteleynSystem sys(d);
      auto v0 = source_or_centroid(d, source_spec);
      write_text_file(out_path(g, coupling_out, "coupling.csv"), coupling_csv(sys, v0));
      RBVPSolution sol = solve_rbvp(sys, v0, !unmodified);
      write_text_file(out_path(g, h_out, "H.csv"), h_csv(sol.H));
      Report rep = verify_rbvp(sol);
      json cfg = {{"command", "solve"}, {"domain", domain_to_json(d)}, {"source", {v0.n, v0.m}},
                  {"modified", !unmodified}};
      std::string path = out_path(g, "", "solve_report.json");
      write_text_file(path, stamped(rep, cfg, g.seed));
      return rep.all_pass() ? 0 : 1;
    }

    if (*sample) {
      Domain d = load_domain(domain_path, single_cell);
      KasteleynSystem sys(d);
      ExactSampler sampler(sys);
      std::vector<Tiling> tilings(n_samples);
      // sample i uses its own generator, so results do not depend on --threads
      parallel_for(n_samples, g.threads, [&](int i) {
        std::seed_seq seq{g.seed, static_cast<std::uint64_t>(i)};
        std::mt19937_64 rng(seq);
        tilings[i] = sampler.sample(rng);
      });
      json cfg = {{"command", "sample"}, {"domain", domain_to_json(d)}, {"n", n_samples}};
      json out = {{"config_hash", fnv1a_hex(cfg.dump())}, {"seed", g.seed}, {"tilings", json::array()}};
      bool ok = true;
      for (auto& t : tilings) {
        ok = ok && is_perfect_matching(d, t);
        out["tilings"].push_back(tiling_to_json(t));
      }
      std::string path = out_path(g, sample_out, "tilings.json");
      write_text_file(path, out.dump(1) + "\n");
      return ok ? 0 : 1;
    }

    if (*render) {
      Domain d = load_domain(domain_path, single_cell);
      std::string svg;
      if (render_what == "tiling") {
        Tiling t;
        if (!tiling_path.empty()) {
          json j = read_json_file(tiling_path);
          t = tiling_from_json(j.is_object() && j.contains("tilings") ? j["tilings"].at(0) : j);
          if (!is_perfect_matching(d, t)) throw FormatError("tiling does not match the domain");
        } else {
          t = sample_exact(KasteleynSystem(d), g.seed);
        }
        HeightField h = height_from_tiling(d, t, d.vertices().front());
        svg = render_tiling_svg(d, t, &h);
      } else {
        KasteleynSystem sys(d);
        RBVPSolution sol = solve_rbvp(sys, source_or_centroid(d, source_spec));
        std::map<LatticeCoord, double> vals(sol.H.values.begin(), sol.H.values.end());
        svg = render_field_svg(d, vals, "H");
      }
      std::string path = out_path(g, render_out, render_what == "H" ? "H.svg" : "tiling.svg");
      write_text_file(path, svg);
      return 0;
    }

    if (*exp) {
      ExperimentConfig cfg;
      if (!exp_config.empty()) {
        json j = read_json_file(exp_config);
        if (!j.contains("experiment")) j["experiment"] = exp_name;
        if (j["experiment"] != exp_name) throw ConfigError("config is for a different experiment");
        cfg = ExperimentConfig::from_json(j);
      } else {
        cfg = ExperimentConfig::defaults(exp_name);
      }
      if (!meshes_spec.empty()) cfg.meshes = parse_list(meshes_spec);
      if (app.get_option("--seed")->count()) cfg.seed = g.seed;
      cfg.threads = g.threads;
      cfg.validate();
      ExperimentResult res = run_experiment(cfg);
      std::string prefix = exp_prefix.empty() ? exp_name : exp_prefix;
      write_text_file(out_path(g, "", prefix + ".csv"), res.csv());
      write_text_file(out_path(g, "", prefix + ".svg"), res.svg());
      std::string path = out_path(g, "", prefix + "_report.json");
      write_text_file(path, stamped(res.report, cfg.to_json(), cfg.seed));
      std::cout << res.csv();
      for (const auto& c : res.report.checks)
        std::cout << (c.pass ? "pass " : "FAIL ") << c.name << " " << fmt_double(c.residual) << "\n";
      return res.report.all_pass() ? 0 : 1;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const FormatError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const GeometryError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 2;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const NoPerfectMatching& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
