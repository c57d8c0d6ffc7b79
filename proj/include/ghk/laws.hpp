#ifndef GHK_LAWS_HPP_
#define GHK_LAWS_HPP_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ghk/fincat.hpp"

namespace ghk {

enum class Law {
  WFP,
  Equidivisible,
  LeftCancellative,
  Cancellative,
  RCondition,
  LeviEquivalence,
  AtomDegree,
};

std::string_view to_string(Law law);

// A single counterexample. `arrows` lists the tuple involved in the order
// documented for each `kind`; `split` is set for WFP witnesses.
struct Witness {
  std::string kind;
  std::vector<ArrowId> arrows;
  std::optional<std::pair<Degree, Degree>> split;
};

struct LawReport {
  Law law = Law::WFP;
  bool holds = true;
  std::vector<Witness> witnesses;
  std::optional<Degree> bound;
  // Named sub-results (e.g. both sides of the Levi equivalence).
  std::vector<std::pair<std::string, bool>> facts;
};

// Witness kinds:
//   "missing-split"   arrows = {a}, split = (m, n): no a = a1 a2 at that split.
//   "disconnected"    arrows = {a, b1, b2, c1, c2}, split = (m, n): the
//                     factorizations (b1, b2) and (c1, c2) lie in different
//                     orbits of (a1, a2) -> (a1 g, g^-1 a2).
LawReport check_wfp(FinCategory const& c, SizeFunctor const& size);

//   "no-interpolant"  arrows = {a, b, c, d} with ab = cd.
LawReport check_equidivisible(FinCategory const& c);

//   "left"   arrows = {a, x, y}: ax = ay, x != y.
//   "right"  arrows = {b, x, y}: xb = yb, x != y.
// Side::TwoSided reports Law::Cancellative with both kinds.
LawReport check_cancellative(FinCategory const& c, Side side);

// Wide subcategory generated by `x`: identities plus all composites of
// entries of `x` recorded in the table. Sorted lexicographically.
std::vector<ArrowId> generated_subcategory(FinCategory const& c,
                                           std::span<ArrowId const> x);

//   "non-unique"  arrows = {u, v, g} with u = vg, u, v in <X>, and u != v or
//                 g not an identity.
LawReport check_r_condition(FinCategory const& c, SizeFunctor const& size,
                            std::span<ArrowId const> x);

// Holds iff (equidivisible and degree-1 arrows are exactly the atoms) is
// equivalent to the WFP. Requires rank 1 (WrongRank otherwise).
//   "mismatch"  arrows = {}, facts carry both sides.
LawReport check_levi_equivalence(FinCategory const& c, SizeFunctor const& size);

// Under the WFP the atoms are exactly the arrows of degree e_i.
//   "atom-not-unit"     arrows = {a}: an atom whose degree is not some e_i.
//   "unit-not-atom"     arrows = {a}: degree e_i but not an atom.
LawReport check_atom_degree(FinCategory const& c, SizeFunctor const& size);

// ug = u with u in <X>, g invertible, forces g = d(u).
//   "stabilizer"  arrows = {u, g}.
LawReport check_trivial_stabilizers(FinCategory const& c,
                                    std::span<ArrowId const> x);

// Re-evaluates the law on the witness tuple; true when the violation is
// reproduced by the table.
bool witness_reverifies(FinCategory const& c, SizeFunctor const* size,
                        Law law, Witness const& w);

}  // namespace ghk

#endif  // GHK_LAWS_HPP_
