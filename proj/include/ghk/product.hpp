#ifndef GHK_PRODUCT_HPP_
#define GHK_PRODUCT_HPP_

// The Zappa-Szep product X |><| G of a k-graph by a groupoid acting on it:
// pairs (x, g) with dom(x) == cod(g), composed as
//
//   (x, g)(y, h) = (x (g.y), g|y h).
//
// The size functor is the degree of the path component.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ghk/fincat.hpp"
#include "ghk/kgraph.hpp"
#include "ghk/laws.hpp"
#include "ghk/zsaction.hpp"

namespace ghk {

struct ProductArrow {
  Path path;
  ArrowId g = kNoArrow;

  friend bool operator==(ProductArrow const&, ProductArrow const&) = default;
  friend auto operator<=>(ProductArrow const&, ProductArrow const&) = default;
};

// dom(p) is dom(g_p); cod(p) is cod(path_p).
ProductArrow compose_product(ZSAction const& a, ProductArrow const& p,
                             ProductArrow const& q);

// "(<path>,<g>)", e.g. "(a.b,s)" or "(*,1)".
std::string product_arrow_name(ZSAction const& a, ProductArrow const& p);

// Degree-bounded window of the product as an explicit category.
struct Product {
  std::vector<ProductArrow> arrows;   // arrow i of `category`
  FinCategory category;
  SizeFunctor size;
  Degree bound;
  std::vector<Path> paths;            // the k-graph window
  std::vector<ArrowId> embed_path;    // path i -> (path, d(path))
  std::vector<ArrowId> embed_group;   // g -> (r(g), g)
  std::map<ProductArrow, ArrowId> index;

  std::optional<ArrowId> find(ProductArrow const& p) const;
};

// Enumerates every pair with degree <= bound and records a composite exactly
// when it stays within the bound. Checks that both embeddings are injective
// functors and that every arrow is embed_path(x) embed_group(g).
Product build_product(ZSAction const& a, Degree const& bound);

struct ProductLawBundle {
  bool category_valid = false;
  bool size_functor_valid = false;
  std::string category_error;
  std::vector<ArrowId> transversal;
  LawReport wfp;
  LawReport r_condition;
  LawReport left_cancellative;

  bool all_hold() const {
    return category_valid && size_functor_valid && wfp.holds &&
           r_condition.holds && left_cancellative.holds;
  }
};

// Re-validates the window from its document form and runs the WFP,
// R-condition and left cancellation checks on it.
ProductLawBundle verify_product_laws(ZSAction const& a, Degree const& bound);
ProductLawBundle verify_product_laws(Product const& p);

}  // namespace ghk

#endif  // GHK_PRODUCT_HPP_
