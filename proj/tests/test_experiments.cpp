#include <doctest.h>

#include <atomic>

#include "hedgehog/experiments.hpp"

using namespace hedgehog;
using nlohmann::json;

TEST_CASE("default schedules") {
  CHECK(ExperimentConfig::defaults("rbvp-convergence").meshes == std::vector<double>{0.125, 0.0625, 0.03125});
  CHECK(ExperimentConfig::defaults("dbl-harmonic").meshes.size() == 3);
  CHECK(ExperimentConfig::defaults("gff-covariance").meshes == std::vector<double>{0.1, 0.05, 0.025});
  CHECK_THROWS_AS(ExperimentConfig::defaults("nope"), ConfigError);
  for (auto name : {"rbvp-convergence", "gff-covariance", "dbl-harmonic"})
    CHECK_NOTHROW(ExperimentConfig::defaults(name).validate());
}

TEST_CASE("config json round trip") {
  auto c = ExperimentConfig::defaults("gff-covariance");
  c.z1 = {0.2, 0.1};
  c.meshes = {0.125, 0.1};
  auto d = ExperimentConfig::from_json(json::parse(c.to_json().dump()));
  CHECK(d.z1 == c.z1);
  CHECK(d.meshes == c.meshes);
  CHECK(d.to_json() == c.to_json());
}

TEST_CASE("config validation") {
  auto bad = [](const char* text) {
    return ExperimentConfig::from_json(json::parse(text)).validate();
  };
  CHECK_THROWS_AS(bad(R"({"experiment":"rbvp-convergence","meshes":[0.1]})"), ConfigError);
  CHECK_THROWS_AS(bad(R"({"experiment":"rbvp-convergence","meshes":[0.1,0.1]})"), ConfigError);
  CHECK_THROWS_AS(bad(R"({"experiment":"rbvp-convergence","meshes":[0.5,0.1]})"), ConfigError);
  CHECK_THROWS_AS(bad(R"({"experiment":"gff-covariance","z1":[2,0]})"), ConfigError);
  CHECK_THROWS_AS(bad(R"({"experiment":"rbvp-convergence","annulus_inner":0.6})"), ConfigError);
  CHECK_THROWS_AS(bad(R"({"experiment":"rbvp-convergence","meshes":"fine"})"), ConfigError);
  CHECK_THROWS_AS(bad(R"({"experiment":"unknown"})"), ConfigError);
  CHECK_THROWS_AS(bad("[]"), ConfigError);
}

TEST_CASE("parallel_for") {
  std::vector<int> out(100, 0);
  parallel_for(100, 4, [&](int i) { out[i] = i * i; });
  for (int i = 0; i < 100; ++i) CHECK(out[i] == i * i);
  std::atomic<int> ran{0};
  CHECK_THROWS_AS(parallel_for(10, 3,
                               [&](int i) {
                                 ++ran;
                                 if (i == 4) throw std::runtime_error("boom");
                               }),
                  std::runtime_error);
}

TEST_CASE("small rbvp run") {
  auto c = ExperimentConfig::defaults("rbvp-convergence");
  c.meshes = {0.125, 0.0625};
  c.threads = 2;
  auto r = run_experiment(c);
  REQUIRE(r.rows.size() == 2);
  CHECK(r.rows[1].error < r.rows[0].error);
  CHECK(r.rows[1].squares > r.rows[0].squares);
  CHECK(r.csv().rfind("mesh,delta,squares,error\n", 0) == 0);
  CHECK(r.svg().find("<svg") != std::string::npos);
  CHECK(r.report.find("strictly_decreasing"));
  CHECK(r.report.find("rbvp_residuals")->pass);
  // threads do not change results
  c.threads = 1;
  auto s = run_experiment(c);
  CHECK(s.csv() == r.csv());
}
