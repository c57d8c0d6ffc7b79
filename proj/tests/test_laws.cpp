#include <doctest.h>

#include <string>
#include <vector>

#include "fixtures.hpp"
#include "ghk/error.hpp"
#include "ghk/json_io.hpp"
#include "ghk/kgraph.hpp"
#include "ghk/laws.hpp"
#include "ghk/product.hpp"

using namespace ghk;

namespace {

bool fact(LawReport const& r, std::string const& name) {
  for (auto const& [n, v] : r.facts) {
    if (n == name) return v;
  }
  FAIL("missing fact " << name);
  return false;
}

PathCategory free2(int bound) {
  auto k = KGraph::validate(parse_skeleton(fixtures::load("fx-free2.json")));
  return path_category(k, Degree{static_cast<Degree::value_type>(bound)});
}

}  // namespace

TEST_CASE("diamond fails the WFP with the crossing witness") {
  auto lc = load_category(fixtures::load("fx-diamond.json"));
  auto const& c = lc.category;
  auto r = check_wfp(c, *lc.size);
  CHECK_FALSE(r.holds);
  REQUIRE(r.witnesses.size() == 1);
  auto const& w = r.witnesses[0];
  CHECK(w.kind == "disconnected");
  REQUIRE(w.arrows.size() == 5);
  CHECK(c.name(w.arrows[0]) == "x");
  CHECK(c.name(w.arrows[1]) == "c");
  CHECK(c.name(w.arrows[2]) == "a");
  CHECK(c.name(w.arrows[3]) == "d");
  CHECK(c.name(w.arrows[4]) == "b");
  REQUIRE(w.split.has_value());
  CHECK(w.split->first == Degree{1});
  CHECK(w.split->second == Degree{1});
  CHECK(witness_reverifies(c, &*lc.size, Law::WFP, w));
}

TEST_CASE("diamond is not equidivisible but is cancellative") {
  auto lc = load_category(fixtures::load("fx-diamond.json"));
  auto const& c = lc.category;
  auto e = check_equidivisible(c);
  CHECK_FALSE(e.holds);
  REQUIRE_FALSE(e.witnesses.empty());
  CHECK(witness_reverifies(c, nullptr, Law::Equidivisible, e.witnesses[0]));
  CHECK(check_cancellative(c, Side::Left).holds);
  CHECK(check_cancellative(c, Side::TwoSided).holds);
}

TEST_CASE("Levi equivalence") {
  SUBCASE("diamond: both sides false") {
    auto lc = load_category(fixtures::load("fx-diamond.json"));
    auto r = check_levi_equivalence(lc.category, *lc.size);
    CHECK(r.holds);
    CHECK_FALSE(fact(r, "levi"));
    CHECK_FALSE(fact(r, "wfp"));
  }
  SUBCASE("free monoid on two letters: both sides true") {
    auto pc = free2(3);
    auto r = check_levi_equivalence(pc.category, pc.size);
    CHECK(r.holds);
    CHECK(fact(r, "levi"));
    CHECK(fact(r, "wfp"));
    CHECK(check_equidivisible(pc.category).holds);
  }
  SUBCASE("swap product: both sides true") {
    auto p = build_product(load_action(fixtures::load("fx-swap.json")),
                           Degree{2});
    auto r = check_levi_equivalence(p.category, p.size);
    CHECK(r.holds);
    CHECK(fact(r, "wfp"));
  }
  SUBCASE("rank two is rejected") {
    auto k = KGraph::validate(parse_skeleton(fixtures::load("fx-n2.json")));
    auto pc = path_category(k, Degree{1, 1});
    try {
      check_levi_equivalence(pc.category, pc.size);
      FAIL("expected WrongRank");
    } catch (Error const& e) {
      CHECK(e.kind() == ErrorKind::WrongRank);
    }
  }
}

TEST_CASE("swap product laws") {
  auto p = build_product(load_action(fixtures::load("fx-swap.json")),
                         Degree{3});
  CHECK(check_wfp(p.category, p.size).holds);
  CHECK(check_cancellative(p.category, Side::Left).holds);
  auto x = transversal(p.category, p.size);
  CHECK(check_r_condition(p.category, p.size, x).holds);
  CHECK(check_atom_degree(p.category, p.size).holds);
  CHECK(check_trivial_stabilizers(p.category, x).holds);
}

TEST_CASE("stuck monoid fails the R-condition and left cancellation") {
  auto lc = load_category(fixtures::load("fx-stuck.json"));
  auto const& c = lc.category;
  REQUIRE(c.bound() == Degree{1});
  auto x = transversal(c, *lc.size);
  auto r = check_r_condition(c, *lc.size, x);
  CHECK_FALSE(r.holds);
  REQUIRE_FALSE(r.witnesses.empty());
  CHECK(witness_reverifies(c, &*lc.size, Law::RCondition, r.witnesses[0]));
  auto lcan = check_cancellative(c, Side::Left);
  CHECK_FALSE(lcan.holds);
  REQUIRE_FALSE(lcan.witnesses.empty());
  CHECK(witness_reverifies(c, nullptr, Law::LeftCancellative,
                           lcan.witnesses[0]));
}

TEST_CASE("path categories satisfy the WFP") {
  auto pc = free2(3);
  CHECK(check_wfp(pc.category, pc.size).holds);
  auto k = KGraph::validate(parse_skeleton(fixtures::load("fx-n2.json")));
  auto n2 = path_category(k, Degree{2, 2});
  CHECK(check_wfp(n2.category, n2.size).holds);
  CHECK(check_cancellative(n2.category, Side::TwoSided).holds);
  CHECK(check_atom_degree(n2.category, n2.size).holds);
}
