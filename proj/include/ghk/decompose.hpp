#ifndef GHK_DECOMPOSE_HPP_
#define GHK_DECOMPOSE_HPP_

// Recovers a k-graph, a groupoid and a Zappa-Szep action from a category
// with a size functor satisfying the WFP and the R-condition, together with
// the isomorphism theta onto the product.
//
// The k-graph has the transversal X as edges (named by the arrow ids of C).
// The action comes from the unique splittings g x = (g.x) g|x with g.x in X.

#include <cstddef>
#include <string>
#include <vector>

#include "ghk/fincat.hpp"
#include "ghk/kgraph.hpp"
#include "ghk/laws.hpp"
#include "ghk/product.hpp"
#include "ghk/zsaction.hpp"

namespace ghk {

struct Decomposition {
  std::vector<ArrowId> transversal;      // arrows of C, sorted
  std::vector<ArrowId> group_arrows;     // groupoid arrow i is C arrow [i]
  ZSAction action;
  Degree bound;
  std::vector<ProductArrow> theta;       // indexed by arrow of C
};

// Throws PreconditionFailed when the WFP or the R-condition fails (the
// message names the law and the first witness), BoundTooSmall when the
// window cannot hold the squares of X, and NonUniqueRepresentation when a
// splitting is not unique.
Decomposition decompose(FinCategory const& c, SizeFunctor const& size);

struct IsoReport {
  bool holds = true;
  std::size_t arrows = 0;
  std::vector<std::string> witnesses;
};

// Checks that theta is a bijection onto the product window at d.bound, that
// it preserves and reflects composition, and that the size functor equals
// the degree of the path component.
IsoReport verify_iso(FinCategory const& c, SizeFunctor const& size,
                     Decomposition const& d);

}  // namespace ghk

#endif  // GHK_DECOMPOSE_HPP_
