#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "hedgehog/io.hpp"

using namespace hedgehog;
using nlohmann::json;

TEST_CASE("domain round trips") {
  for (const Domain& d : {build_hedgehog(0.5, {{0, 0}, {1, 0}, {0, 1}}), approximate_disk(0.125, 1.0),
                          tilted_rectangle(1.0, 3, 4)}) {
    json j = domain_to_json(d);
    Domain e = domain_from_json(json::parse(j.dump()));
    CHECK(e.delta == d.delta);
    CHECK(e.is_hedgehog == d.is_hedgehog);
    CHECK(e.squares == d.squares);
    CHECK(e.slits == d.slits);
    CHECK(domain_to_json(e).dump() == j.dump());
  }
}

TEST_CASE("malformed domains are rejected") {
  CHECK_THROWS_AS(domain_from_json(json::parse(R"({"kind":"hedgehog","cells":[[0,0]]})")), FormatError);
  CHECK_THROWS_AS(domain_from_json(json::parse(R"({"delta":-1,"kind":"hedgehog","cells":[[0,0]]})")),
                  FormatError);
  CHECK_THROWS_AS(domain_from_json(json::parse(R"({"delta":1,"kind":"torus"})")), FormatError);
  CHECK_THROWS_AS(domain_from_json(json::parse(R"({"delta":1,"kind":"hedgehog","cells":"x"})")),
                  FormatError);
  CHECK_THROWS_AS(domain_from_json(json::array()), FormatError);
}

TEST_CASE("tiling round trip") {
  KasteleynSystem sys(build_hedgehog(1.0, {{0, 0}, {1, 0}}));
  Tiling t = sample_exact(sys, 3);
  CHECK(tiling_from_json(json::parse(tiling_to_json(t).dump())) == t);
  CHECK_THROWS_AS(tiling_from_json(json::parse("[[1,2,3]]")), FormatError);
  CHECK_THROWS_AS(tiling_from_json(json::object()), FormatError);
}

TEST_CASE("csv output") {
  KasteleynSystem sys(tilted_rectangle(1.0, 2, 2));
  std::string csv = coupling_csv(sys, sys.whites()[0]);
  CHECK(csv.rfind("n,m,Re,Im\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + static_cast<long>(sys.size()));
  CHECK(fmt_double(0.1) == "0.1");
  CHECK(fmt_double(-2.0) == "-2");
  CHECK(std::stod(fmt_double(M_PI)) == M_PI);
}

TEST_CASE("files") {
  auto dir = std::filesystem::temp_directory_path() / "hedgehog_io_test";
  std::filesystem::create_directories(dir);
  std::string p = (dir / "a.json").string();
  write_text_file(p, R"({"x": 1})");
  CHECK(read_json_file(p)["x"] == 1);
  write_text_file(p, "{broken");
  CHECK_THROWS_AS(read_json_file(p), FormatError);
  CHECK_THROWS_AS(read_json_file((dir / "missing.json").string()), FormatError);
  std::filesystem::remove_all(dir);
}
