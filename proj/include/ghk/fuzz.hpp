#ifndef GHK_FUZZ_HPP_
#define GHK_FUZZ_HPP_

// Deterministic random generation of skeletons and action documents, and
// greedy shrinking of failing candidates.
//
// Generation is a pure function of the parameters. Randomness comes from
// std::mt19937_64 with a modulo pick, so documents are identical across
// standard library implementations.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ghk/json_io.hpp"
#include "ghk/kgraph.hpp"
#include "ghk/zsaction.hpp"

namespace ghk {

struct GenParams {
  std::uint64_t seed = 0;
  std::size_t max_objects = 3;          // 1..3
  std::size_t max_edges_per_color = 4;
  std::size_t k = 1;                    // 1..3
  std::size_t groupoid_budget = 8;      // arrows, identities included
  Degree bound;                         // window used by the property suites

  // Throws InvalidDocument for out-of-range values.
  void check() const;
};

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  // Uniform-ish in [0, n); 0 when n == 0.
  std::size_t pick(std::size_t n) {
    return n == 0 ? 0 : static_cast<std::size_t>(eng_() % n);
  }
  bool coin() { return (eng_() & 1u) != 0; }

 private:
  std::mt19937_64 eng_;
};

// Always a valid skeleton.
SkeletonData gen_skeleton(GenParams const& p);

// Candidate action document; may violate any axiom.
Json gen_action(GenParams const& p);

// Parse errors become a single failure tagged with the error kind name;
// otherwise the axiom failures of the action.
std::vector<ActionFailure> diagnose(Json const& action_doc);

bool fails_with(Json const& action_doc, std::string const& tag);

// Greedy single removals (edges, groupoid arrows with their inverses, rows,
// squares, unused objects) while the named failure persists. Throws
// NotFailing when the input does not fail with `tag`.
Json shrink(Json doc, std::string const& tag);

// Outcome of pushing one candidate through the property suites.
struct SeedOutcome {
  bool valid = false;
  std::vector<ActionFailure> failures;  // when invalid
  bool path_laws = true;
  bool product_laws = true;
  bool roundtrip = true;
  std::size_t product_arrows = 0;
  std::vector<std::string> problems;    // falsifications, if any
};

// `path_bound` drives the path-level laws, `product_bound` the product and
// round-trip checks. Either may be omitted to skip that stage.
SeedOutcome run_candidate(Json const& doc, std::optional<Degree> path_bound,
                          std::optional<Degree> product_bound);

}  // namespace ghk

#endif  // GHK_FUZZ_HPP_
