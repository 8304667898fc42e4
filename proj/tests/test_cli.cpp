#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "ngrpd/json_io.hpp"

using ngrpd::json;
namespace fs = std::filesystem;

namespace {
  struct Run {
    int         code = -1;
    std::string out;
  };

  Run ngrpd_run(std::string const& args, std::string const& env = "") {
    std::string cmd = env + " " + NGRPD_CLI + " " + args + " 2>/dev/null";
    Run         r;
    FILE*       p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof buf, p)) {
      r.out.append(buf, n);
    }
    int status = pclose(p);
    r.code     = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
  }

  std::string fx(std::string const& name) {
    return std::string(NGRPD_FIXTURES) + "/" + name;
  }

  json parsed(Run const& r) {
    return json::parse(r.out);
  }
}  // namespace

TEST_CASE("groupoid check on the nerve of Z/2 passes at n = 1") {
  auto r = ngrpd_run("check --kind groupoid --n 1 --input " + fx("nerve_z2.json"));
  CHECK(r.code == 0);
  CHECK(parsed(r)["status"] == "pass");
}

TEST_CASE("groupoid check at n = 0 fails with the (1, 0) witness") {
  auto r = ngrpd_run("check --kind groupoid --n 0 --input " + fx("nerve_z2.json"));
  CHECK(r.code == 1);
  auto j = parsed(r);
  CHECK(j["status"] == "fail");
  auto w = j["checks"]["groupoid matching maps"]["witnesses"][0];
  CHECK(w["k"] == 1);
  CHECK(w["i"] == 0);
}

TEST_CASE("fibre of the double cover is the swap on a") {
  auto r = ngrpd_run("fiber --base " + fx("fig8.json") + " --cover " + fx("double_a.json"));
  CHECK(r.code == 0);
  auto j = parsed(r);
  CHECK(j["cycles"]["a"] == "(1 2)");
  CHECK(j["cycles"]["b"] == "id");
  CHECK(j["perms"] == json::parse("[[1,0],[0,1]]"));
}

TEST_CASE("build-cover inverts fiber on the bundled action") {
  auto r = ngrpd_run("build-cover --base " + fx("fig8.json") + " --action " + fx("action_double_a.json"));
  CHECK(r.code == 0);
  CHECK(parsed(r) == ngrpd::read_json_file(fx("double_a.json")));
}

TEST_CASE("malformed JSON is refused with a location") {
  auto bad = fs::temp_directory_path() / "ngrpd_cli_bad.json";
  std::ofstream(bad) << "{\"N\": 1,\n \"levels\": [";
  auto r = ngrpd_run("check --kind groupoid --input " + bad.string());
  CHECK(r.code == 2);
  auto j = parsed(r);
  CHECK(j["status"] == "refused");
  std::string err = j["checks"]["input"]["witnesses"][0]["error"];
  CHECK(err.find(":2:") != std::string::npos);
  CHECK(err.find("malformed JSON") != std::string::npos);
}

TEST_CASE("unknown flag exits 2 and prints usage") {
  std::string cmd = std::string(NGRPD_CLI) + " check --kind groupoid --frobnicate 2>&1";
  FILE*       p   = popen(cmd.c_str(), "r");
  std::string text;
  char        buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, p)) {
    text.append(buf, n);
  }
  int status = pclose(p);
  CHECK(WEXITSTATUS(status) == 2);
  CHECK(text.find("--frobnicate") != std::string::npos);
  CHECK(text.find("Usage") != std::string::npos);
}

TEST_CASE("exit codes follow the report status") {
  auto fail = ngrpd_run("audit-site --site finsets --covers injective --bound 2");
  CHECK(fail.code == 1);
  CHECK(parsed(fail)["status"] == "fail");
  auto inc = ngrpd_run("compare-models --cat " + fx("desk_cfo.json") + " --from X --to Y --max-length 1");
  CHECK(inc.code == 3);
  CHECK(parsed(inc)["status"] == "inconclusive");
  auto ok = ngrpd_run("compare-models --cat " + fx("desk_cfo.json") + " --max-length 4");
  CHECK(ok.code == 0);
  CHECK(parsed(ok)["verified_range"]["pairs"] == 25);
}

TEST_CASE("NGRPD_MAX_CELLS caps enumeration and is refused") {
  auto r = ngrpd_run("localize --site finsets --n 0 --bound 2", "NGRPD_MAX_CELLS=3");
  CHECK(r.code == 2);
  CHECK(parsed(r)["status"] == "refused");
  auto ok = ngrpd_run("localize --site finsets --n 0 --bound 2");
  CHECK(ok.code == 0);
  CHECK(parsed(ok)["category"]["objects"].size() == 3);
}

TEST_CASE("--out writes the same JSON as stdout") {
  auto out = fs::temp_directory_path() / "ngrpd_cli_out.json";
  auto r   = ngrpd_run("--out " + out.string() + " delta --k 2 --boundary --N 3");
  CHECK(r.code == 0);
  std::ifstream f(out);
  std::string   written((std::istreambuf_iterator<char>(f)), {});
  CHECK(written == r.out);
  CHECK(parsed(r)["levels"][0].size() == 3);
}

TEST_CASE("factorize writes three files and passes") {
  auto dir = fs::temp_directory_path() / "ngrpd_cli_pf";
  fs::create_directories(dir);
  auto mapf = dir / "f.json";
  auto r0   = ngrpd_run("--out " + mapf.string() + " delta --k 1 --N 2");
  REQUIRE(r0.code == 0);
  // the terminal map of Delta^1 as a simplicial morphism
  json d1 = parsed(r0), pt = parsed(ngrpd_run("delta --k 0 --N 2"));
  json levels = json::array();
  for (auto const& lvl : d1["levels"]) {
    json m = json::object();
    for (auto const& c : lvl) {
      m[c.get<std::string>()] = pt["levels"][levels.size()][0];
    }
    levels.push_back(m);
  }
  std::ofstream(mapf) << json{{"source", d1}, {"target", pt}, {"levels", levels}}.dump();
  auto prefix = (dir / "pf_").string();
  auto r      = ngrpd_run("factorize --map " + mapf.string() + " --out-prefix " + prefix);
  CHECK(r.code == 0);
  for (auto name : {"path_space", "r", "q"}) {
    CHECK(fs::exists(prefix + name + ".json"));
  }
}

TEST_CASE("selftest --filter galois runs only galois criteria") {
  auto r = ngrpd_run("selftest --filter galois");
  CHECK(r.code == 0);
  auto j = parsed(r);
  CHECK(j["checks"].size() == 3);
  CHECK(j["checks"].contains("criterion 6: galois-roundtrip"));
  CHECK(j["checks"].contains("criterion 7: galois-exactness"));
  CHECK(j["checks"].contains("criterion 8: pull-out-action"));
}

TEST_CASE("selftest output is byte-identical across runs") {
  auto a = ngrpd_run("selftest --jobs 2");
  auto b = ngrpd_run("selftest --jobs 3");
  CHECK(a.code == 0);
  CHECK(b.code == 0);
  auto ja = parsed(a), jb = parsed(b);
  ja.erase("command");
  jb.erase("command");
  CHECK(ja == jb);
  auto c = ngrpd_run("selftest --jobs 2");
  CHECK(a.out == c.out);
}
