#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "ngrpd/acceptance.hpp"
#include "ngrpd/json_io.hpp"

using namespace ngrpd;
namespace fs = std::filesystem;

namespace {
  fs::path scratch(std::string const& name) {
    auto dir = fs::temp_directory_path() / ("ngrpd_acc_" + name);
    fs::remove_all(dir);
    write_fixtures(dir.string());
    return dir;
  }
}  // namespace

TEST_CASE("regenerated fixtures match the shipped ones byte for byte") {
  auto dir = scratch("regen");
  for (auto const& e : fs::directory_iterator(default_fixture_dir())) {
    std::ifstream a(e.path()), b(dir / e.path().filename());
    std::string   sa((std::istreambuf_iterator<char>(a)), {}), sb((std::istreambuf_iterator<char>(b)), {});
    CHECK_MESSAGE(sa == sb, e.path().filename().string());
  }
}

TEST_CASE("a truncated fixture fails its criterion and names the file") {
  auto dir = scratch("corrupt");
  std::ofstream(dir / "fig8.json") << "{\"vertices\": [\"v\"], \"edges\": [";
  auto out = run_acceptance({dir.string(), "galois-roundtrip", 1});
  REQUIRE(out.size() == 1);
  CHECK(out[0].report.overall() == Status::fail);
  auto w = out[0].report.first_witness("fixtures load");
  CHECK(w["fixture"] == "fig8.json");
  CHECK(w["error"].get<std::string>().find("malformed JSON") != std::string::npos);
}

TEST_CASE("a fixture that parses but violates the schema fails") {
  auto dir = scratch("schema");
  std::ofstream(dir / "nerve_z2.json") << "{\"N\": 1, \"levels\": [[\"a\"], [\"x\"]], \"d\": [[{\"x\": \"zz\"}, {\"x\": \"a\"}]]}";
  auto out = run_acceptance({dir.string(), "nerve-groupoid", 1});
  REQUIRE(out.size() == 1);
  CHECK(out[0].report.overall() == Status::fail);
  CHECK(out[0].report.first_witness("fixtures load")["fixture"] == "nerve_z2.json");
}

TEST_CASE("a missing fixture fails rather than skipping") {
  auto dir = scratch("missing");
  fs::remove(dir / "desk_cfo.json");
  auto out = run_acceptance({dir.string(), "localization", 1});
  REQUIRE(out.size() == 1);
  CHECK(out[0].report.overall() == Status::fail);
  CHECK(out[0].report.first_witness("fixtures load")["fixture"] == "desk_cfo.json");
}

TEST_CASE("selftest report has one check per criterion") {
  auto out = run_acceptance({default_fixture_dir(), "delta", 1});
  auto r   = selftest_report(out);
  auto j   = r.to_json();
  CHECK(j["checks"].size() == 1);
  CHECK(j["checks"].contains("criterion 1: delta-combinatorics"));
  CHECK(r.passed());
}
