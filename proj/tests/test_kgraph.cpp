#include <doctest.h>

#include <string>
#include <vector>

#include "fixtures.hpp"
#include "ghk/error.hpp"
#include "ghk/json_io.hpp"
#include "ghk/kgraph.hpp"
#include "ghk/laws.hpp"

using namespace ghk;

namespace {

KGraph load(std::string const& name) {
  return KGraph::validate(parse_skeleton(fixtures::load(name)));
}

ErrorKind skeleton_error(Json const& doc) {
  try {
    KGraph::validate(parse_skeleton(doc));
  } catch (Error const& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::NotFailing;
}

std::vector<EdgeId> word(KGraph const& k, std::vector<std::string> ids) {
  std::vector<EdgeId> out;
  for (auto const& id : ids) out.push_back(*k.find_edge(id));
  return out;
}

std::vector<std::string> ids(KGraph const& k, Path const& p) {
  std::vector<std::string> out;
  for (EdgeId e : p.edges) out.push_back(k.edge(e).id);
  return out;
}

using Ids = std::vector<std::string>;

}  // namespace

TEST_CASE("skeletons validate") {
  auto n2 = load("fx-n2.json");
  CHECK(n2.rank() == 2);
  CHECK(n2.num_edges() == 2);
  auto free2 = load("fx-free2.json");
  CHECK(free2.rank() == 1);
  CHECK(free2.num_edges() == 2);
}

TEST_CASE("skeleton errors") {
  SUBCASE("missing square") {
    Json doc = fixtures::load("fx-n2.json");
    doc["squares"] = Json::array();
    CHECK(skeleton_error(doc) == ErrorKind::NotBijective);
  }
  SUBCASE("duplicate square") {
    Json doc = fixtures::load("fx-n2.json");
    doc["squares"].push_back(doc["squares"][0]);
    CHECK(skeleton_error(doc) == ErrorKind::NotBijective);
  }
  SUBCASE("square with wrong colours") {
    Json doc = fixtures::load("fx-n2.json");
    doc["squares"][0]["rhs"] = Json::array({"f", "e"});
    CHECK(skeleton_error(doc) == ErrorKind::InvalidDocument);
  }
  SUBCASE("square endpoints disagree") {
    Json doc = fixtures::load("fx-n2.json");
    doc["objects"].push_back("v");
    doc["edges"].push_back(
        {{"id", "g"}, {"color", 1}, {"dom", "v"}, {"cod", "*"}});
    doc["squares"].push_back({{"lhs", Json::array({"f", "g"})},
                              {"rhs", Json::array({"e", "f"})}});
    ErrorKind k = skeleton_error(doc);
    CHECK(k == ErrorKind::EndpointMismatch);
  }
}

TEST_CASE("normalize sorts colours through squares") {
  auto k = load("fx-n2.json");
  auto p = k.normalize(word(k, {"f", "e"}));
  CHECK(ids(k, p) == Ids{"e", "f"});
  CHECK(p.degree == Degree{1, 1});
  CHECK(ids(k, k.normalize(word(k, {"f", "f", "e"}))) == Ids{"e", "f", "f"});
  CHECK(k.normalize(word(k, {"f", "f", "e"})).degree == Degree{1, 2});
}

TEST_CASE("compose") {
  auto k = load("fx-n2.json");
  auto e = k.normalize(word(k, {"e"}));
  auto f = k.normalize(word(k, {"f"}));
  CHECK(ids(k, k.compose(e, f)) == Ids{"e", "f"});
  CHECK(ids(k, k.compose(f, e)) == Ids{"e", "f"});
  auto id = k.identity(0);
  CHECK(k.compose(id, e) == e);
  CHECK(k.compose(e, id) == e);
}

TEST_CASE("factor") {
  auto k = load("fx-n2.json");
  auto p = k.normalize(word(k, {"e", "f"}));
  auto [front, back] = k.factor(p, Degree{0, 1});
  CHECK(ids(k, front) == Ids{"f"});
  CHECK(ids(k, back) == Ids{"e"});
  CHECK(k.compose(front, back) == p);

  auto [f2, b2] = k.factor(p, Degree{1, 0});
  CHECK(ids(k, f2) == Ids{"e"});
  CHECK(ids(k, b2) == Ids{"f"});

  try {
    k.factor(p, Degree{2, 0});
    FAIL("expected BadSplit");
  } catch (Error const& err) {
    CHECK(err.kind() == ErrorKind::BadSplit);
  }
}

TEST_CASE("enumerate paths") {
  auto n2 = load("fx-n2.json");
  auto ps = n2.enumerate_paths(Degree{1, 1});
  REQUIRE(ps.size() == 4);
  CHECK(ps[0].is_identity());
  CHECK(ids(n2, ps[3]) == Ids{"e", "f"});

  auto free2 = load("fx-free2.json");
  std::vector<std::string> names;
  for (auto const& p : free2.enumerate_paths(Degree{2})) {
    names.push_back(free2.path_name(p));
  }
  CHECK(names.size() == 7);
  CHECK(names == std::vector<std::string>{"*", "a", "b", "a.a", "a.b", "b.a",
                                          "b.b"});
}

TEST_CASE("path category is a k-graph window") {
  auto k = load("fx-n2.json");
  auto pc = path_category(k, Degree{2, 2});
  CHECK(pc.category.num_arrows() == 9);
  CHECK(check_wfp(pc.category, pc.size).holds);
  // unique factorization: every arrow of degree (1,1) splits once per split
  for (ArrowId a = 0; a < pc.category.num_arrows(); ++a) {
    if (pc.size(a) != Degree{1, 1}) continue;
    std::size_t n = 0;
    for (auto const& f : pc.category.factorizations(a)) {
      if (pc.size(f.right) == Degree{1, 0}) ++n;
    }
    CHECK(n == 1);
  }
}
