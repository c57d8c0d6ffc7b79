#include <doctest.h>

#include <string>

#include "fixtures.hpp"
#include "ghk/error.hpp"
#include "ghk/fuzz.hpp"
#include "ghk/json_io.hpp"
#include "ghk/kgraph.hpp"

using namespace ghk;

namespace {

GenParams params(std::uint64_t seed, std::size_t k) {
  GenParams p;
  p.seed = seed;
  p.k = k;
  p.bound = Degree::uniform(k, 2);
  return p;
}

}  // namespace

TEST_CASE("generation is deterministic") {
  for (std::uint64_t seed : {0u, 1u, 17u, 4242u}) {
    auto p = params(seed, 1 + seed % 3);
    CHECK(gen_action(p).dump() == gen_action(p).dump());
    CHECK(to_json(gen_skeleton(p)).dump() == to_json(gen_skeleton(p)).dump());
  }
  CHECK(gen_action(params(1, 2)).dump() != gen_action(params(2, 2)).dump());
}

TEST_CASE("parameter ranges") {
  auto p = params(0, 1);
  p.k = 4;
  CHECK_THROWS_AS(p.check(), Error);
  p = params(0, 1);
  p.max_objects = 0;
  CHECK_THROWS_AS(p.check(), Error);
  p = params(0, 1);
  p.groupoid_budget = 0;
  CHECK_THROWS_AS(p.check(), Error);
  CHECK_NOTHROW(params(0, 3).check());
}

TEST_CASE("generated skeletons are k-graphs") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    auto p = params(seed, 1 + seed % 3);
    CHECK_NOTHROW(KGraph::validate(gen_skeleton(p)));
  }
}

TEST_CASE("no edges gives a valid action") {
  auto p = params(5, 2);
  p.max_edges_per_color = 0;
  Json doc = gen_action(p);
  CHECK(doc["kgraph"]["edges"].empty());
  CHECK(diagnose(doc).empty());
  auto out = run_candidate(doc, Degree{2, 2}, Degree{2, 2});
  CHECK(out.valid);
  CHECK(out.problems.empty());
}

TEST_CASE("generated actions that validate pass every law") {
  std::size_t valid = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto p = params(seed, 1 + seed % 3);
    auto out = run_candidate(gen_action(p), p.bound, p.bound);
    if (!out.valid) {
      CHECK_FALSE(out.failures.empty());
      continue;
    }
    ++valid;
    INFO("seed " << seed);
    CHECK(out.path_laws);
    CHECK(out.product_laws);
    CHECK(out.roundtrip);
    CHECK(out.problems.empty());
  }
  CHECK(valid > 20);
}

TEST_CASE("diagnose reports parse errors by kind") {
  Json doc = fixtures::load("fx-swap.json");
  doc["on_edges"][0]["g"] = "nope";
  auto fs = diagnose(doc);
  REQUIRE(fs.size() == 1);
  CHECK(fs[0].axiom == "InvalidDocument");
}

TEST_CASE("shrinking keeps the failure") {
  Json doc = fixtures::load("fx-swap-ss7.json");
  REQUIRE(fails_with(doc, "SS7"));
  Json small = shrink(doc, "SS7");
  CHECK(fails_with(small, "SS7"));
  CHECK(small["on_edges"].size() <= doc["on_edges"].size());
  CHECK(shrink(small, "SS7").dump() == small.dump());
}

TEST_CASE("shrinking a passing document is an error") {
  try {
    shrink(fixtures::load("fx-swap.json"), "SS7");
    FAIL("expected NotFailing");
  } catch (Error const& e) {
    CHECK(e.kind() == ErrorKind::NotFailing);
  }
}

TEST_CASE("swap action as a candidate") {
  auto out = run_candidate(fixtures::load("fx-swap.json"), Degree{3},
                           Degree{2});
  CHECK(out.valid);
  CHECK(out.path_laws);
  CHECK(out.product_laws);
  CHECK(out.roundtrip);
  CHECK(out.product_arrows == 14);
}
