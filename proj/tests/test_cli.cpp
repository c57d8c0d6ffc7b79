#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "ghk/cli.hpp"
#include "ghk/json_io.hpp"

using namespace ghk;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

fs::path scratch(std::string const& name) {
  auto dir = fs::temp_directory_path() / "ghk_test_cli";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(fs::path const& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("sha256") {
  CHECK(cli::sha256_hex("") ==
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(cli::sha256_hex("abc") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("validate") {
  CHECK(run({"validate", fixtures::path("fx-diamond.json")}).code == 0);
  CHECK(run({"validate", fixtures::path("fx-swap.json")}).code == 0);
  CHECK(run({"validate", fixtures::path("fx-n2.json")}).code == 0);
  auto bad = run({"validate", fixtures::path("fx-diamond-dangling.json")});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("InvalidDocument") != std::string::npos);
  CHECK(run({"validate", fixtures::path("fx-swap-ss7.json")}).code == 2);
  CHECK(run({"validate", fixtures::path("does-not-exist.json")}).code == 2);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 3);
  CHECK(run({"frobnicate"}).code == 3);
  CHECK(run({"check", "nonsense", fixtures::path("fx-diamond.json")}).code ==
        3);
  // skeleton and action documents need a window
  CHECK(run({"check", "wfp", fixtures::path("fx-swap.json")}).code == 3);
}

TEST_CASE("check") {
  CHECK(run({"check", "wfp", fixtures::path("fx-diamond.json")}).code == 1);
  CHECK(run({"check", "cancel-left", fixtures::path("fx-diamond.json")})
            .code == 0);
  CHECK(run({"check", "levi", fixtures::path("fx-diamond.json")}).code == 0);
  CHECK(run({"check", "r-cond", fixtures::path("fx-stuck.json")}).code == 1);
  CHECK(run({"check", "wfp", fixtures::path("fx-swap.json"), "--bound", "2"})
            .code == 0);
  CHECK(run({"check", "wfp", fixtures::path("fx-n2.json"), "--bound",
             "(2,2)"})
            .code == 0);
}

TEST_CASE("json report") {
  auto report = scratch("wfp.json");
  auto r = run({"check", "wfp", fixtures::path("fx-diamond.json"), "--json",
                report.string()});
  CHECK(r.code == 1);
  Json j = Json::parse(slurp(report));
  CHECK(j["command"] == "check wfp");
  CHECK(j["exit"] == 1);
  REQUIRE(j["inputs"].size() == 1);
  CHECK(j["inputs"][0]["sha256"] ==
        cli::sha256_hex(slurp(fixtures::path("fx-diamond.json"))));
  CHECK(j["results"]["holds"] == false);
  CHECK_FALSE(j["results"]["witnesses"].empty());
}

TEST_CASE("product, decompose and roundtrip") {
  auto prod = scratch("swap-product.json");
  auto dec = scratch("swap-decomposition.json");
  CHECK(run({"product", "build", fixtures::path("fx-swap.json"), "--bound",
             "2", "-o", prod.string()})
            .code == 0);
  auto pj = Json::parse(slurp(prod));
  CHECK(pj["arrows"].size() == 14);
  CHECK(run({"validate", prod.string()}).code == 0);

  CHECK(run({"decompose", prod.string(), "-o", dec.string()}).code == 0);
  auto dj = Json::parse(slurp(dec));
  CHECK(dj["transversal"].size() == 2);
  CHECK(dj["iso"]["holds"] == true);

  CHECK(run({"decompose", fixtures::path("fx-diamond.json"), "-o",
             scratch("diamond-dec.json").string()})
            .code == 1);

  auto rt = run({"roundtrip", fixtures::path("fx-swap.json"), "--bound", "2"});
  CHECK(rt.code == 0);
  CHECK(rt.out.find("theta bijective on 14 arrows") != std::string::npos);
}

TEST_CASE("reports are byte-identical across runs") {
  auto a = scratch("det-a.json");
  auto b = scratch("det-b.json");
  for (auto const& p : {a, b}) {
    run({"check", "wfp", fixtures::path("fx-swap.json"), "--bound", "2",
         "--json", p.string()});
  }
  CHECK(slurp(a) == slurp(b));
  for (auto const& p : {a, b}) {
    run({"fuzz", "--seed", "3", "--count", "5", "--json", p.string()});
  }
  CHECK(slurp(a) == slurp(b));
}

TEST_CASE("fuzz") {
  auto r = run({"fuzz", "--seed", "0", "--count", "10", "--params",
                "k=2,objects=2,edges=2,groupoid=4"});
  CHECK(r.code == 0);
  CHECK(run({"fuzz", "--params", "k=9"}).code == 3);
}

TEST_CASE("the installed binary") {
  auto report = scratch("bin.json");
  std::string cmd = std::string(GHK_CLI_PATH) + " validate " +
                    fixtures::path("fx-swap.json") + " --json " +
                    report.string() + " > /dev/null";
  CHECK(std::system(cmd.c_str()) == 0);
  CHECK(Json::parse(slurp(report))["exit"] == 0);
}
