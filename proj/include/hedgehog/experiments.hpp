#pragma once

#include <functional>
#include <json.hpp>
#include <string>
#include <vector>

#include "hedgehog/lattice.hpp"
#include "hedgehog/report.hpp"
#include "hedgehog/svg.hpp"

namespace hedgehog {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::string experiment;     // rbvp-convergence | gff-covariance | dbl-harmonic
  std::vector<double> meshes;  // fractions of the radius, strictly decreasing
  double radius = 1.0;
  std::uint64_t seed = 1;
  int threads = 1;

  // rbvp-convergence
  cplx source = 0.0;  // in units of the radius
  double annulus_inner = 0.25, annulus_outer = 0.5;
  double window = 2.0;  // plane-kernel window radius in units of the radius
  double max_ratio = 0.5;

  // gff-covariance
  cplx z1{0.3, 0.0}, z2{-0.3, 0.0};
  double max_final_rel = 0.15;

  // dbl-harmonic
  double angle_u = -M_PI / 2, angle_v = 0.0;
  double compact = 0.5;
  double exclusion = 0.1;
  double rank1_tol = 1e-9;
  double max_final_err = 0.05;

  static ExperimentConfig defaults(const std::string& experiment);
  static ExperimentConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
  void validate() const;
};

struct ExperimentRow {
  double mesh = 0;  // delta / radius
  std::size_t squares = 0;
  double error = 0;
  nlohmann::json extra = nlohmann::json::object();
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<ExperimentRow> rows;
  Report report;

  std::string csv() const;
  std::string svg() const;
};

ExperimentResult run_experiment(const ExperimentConfig& cfg);

ExperimentRow rbvp_convergence_point(const ExperimentConfig& cfg, double mesh);
ExperimentRow gff_covariance_point(const ExperimentConfig& cfg, double mesh);
ExperimentRow dbl_harmonic_point(const ExperimentConfig& cfg, double mesh);

// Runs f(i) for i < n on at most `threads` workers; results land by index.
void parallel_for(int n, int threads, const std::function<void(int)>& f);

}  // namespace hedgehog
