#ifndef GHK_ZSACTION_HPP_
#define GHK_ZSACTION_HPP_

// Zappa-Szep (self-similar) actions of a groupoid on a k-graph.
//
// The action is given on edges only: for every groupoid arrow g and edge e
// with dom(g) == cod(e) a table row supplies g.e (an edge) and g|e (a
// groupoid arrow). Validation checks the axioms on generators plus
// compatibility with every factorization square, which is what makes the
// extension to paths well defined:
//
//   g.(e p)  = (g.e) ((g|e).p)        g|(e p) = (g|e)|p

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ghk/fincat.hpp"
#include "ghk/kgraph.hpp"

namespace ghk {

struct ActionRow {
  ArrowId g = kNoArrow;
  EdgeId e = 0;
  EdgeId ge = 0;        // g.e
  ArrowId rest = kNoArrow;  // g|e
};

// One failed axiom instance. `axiom` is the tag: C1, C2, C3, SS1, SS2, SS4,
// SS7, Color, Square, or Structure for malformed tables.
struct ActionFailure {
  std::string axiom;
  std::string message;
  std::vector<std::string> witness;
};

// Checks every axiom instance and returns all failures (empty when valid).
// The groupoid must be a valid FinCategory with every arrow invertible and
// the same object ids as the k-graph, in the same order.
std::vector<ActionFailure> diagnose_action(KGraph const& k,
                                           FinCategory const& groupoid,
                                           std::vector<ActionRow> const& rows);

class ZSAction {
 public:
  // Throws the first failure: AxiomFailure, SquareIncompatible,
  // ColorChanged, or InvalidDocument for malformed tables.
  static ZSAction validate(KGraph k, FinCategory groupoid,
                           std::vector<ActionRow> rows);

  KGraph const& kgraph() const noexcept { return k_; }
  FinCategory const& groupoid() const noexcept { return g_; }
  std::vector<ActionRow> const& rows() const noexcept { return rows_; }

  EdgeId act_edge(ArrowId g, EdgeId e) const;
  ArrowId restrict_edge(ArrowId g, EdgeId e) const;

  // g.p and g|p; both need dom(g) == cod(p).
  Path act(ArrowId g, Path const& p) const;
  ArrowId restrict(ArrowId g, Path const& p) const;

 private:
  ZSAction(KGraph k, FinCategory g) : k_(std::move(k)), g_(std::move(g)) {}
  std::size_t slot(ArrowId g, EdgeId e) const;

  KGraph k_;
  FinCategory g_;
  std::vector<ActionRow> rows_;
  std::vector<EdgeId> act_;
  std::vector<ArrowId> rest_;
};

// Path-level action laws over every path of degree <= bound:
// (gh).p = g.(h.p), g|(pq) = (g|p)|q, (gh)|p = g|(h.p) h|p,
// g.(pq) = (g.p)((g|p).q), g^-1|p = (g|(g^-1.p))^-1, deg(g.p) = deg(p),
// and g. is injective on paths of each degree.
struct PathLawCheck {
  std::string law;
  std::size_t instances = 0;
  std::vector<std::string> violations;
  bool holds() const { return violations.empty(); }
};

std::vector<PathLawCheck> check_path_laws(ZSAction const& a,
                                          Degree const& bound);

}  // namespace ghk

#endif  // GHK_ZSACTION_HPP_
