#ifndef GHK_JSON_IO_HPP_
#define GHK_JSON_IO_HPP_

// JSON documents for categories, skeletons and actions, and serializers for
// the reports produced by the checkers. Every parse error raises
// Error(InvalidDocument) naming the offending key or id.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ghk/decompose.hpp"
#include "ghk/fincat.hpp"
#include "ghk/kgraph.hpp"
#include "ghk/laws.hpp"
#include "ghk/product.hpp"
#include "ghk/zsaction.hpp"

namespace ghk {

using Json = nlohmann::json;

enum class DocKind { Category, Skeleton, Action };

// Action documents carry `on_edges`, skeletons carry `squares` or `k`
// without `arrows`, everything else is read as a category.
DocKind detect_kind(Json const& doc);

struct SizeData {
  std::size_t k = 1;
  std::vector<Degree> deg;  // indexed like CategoryData::arrows
};

struct CategoryDoc {
  CategoryData data;
  std::optional<SizeData> size;
};

CategoryDoc parse_category(Json const& doc);
SkeletonData parse_skeleton(Json const& doc);

// The three parts of an action document, resolved to indices. The groupoid
// objects are reordered to match the k-graph. Axioms are not checked.
struct ActionParts {
  KGraph kgraph;
  FinCategory groupoid;
  std::vector<ActionRow> rows;
};
ActionParts parse_action(Json const& doc);
ZSAction load_action(Json const& doc);

// Category plus size functor, both validated.
struct LoadedCategory {
  FinCategory category;
  std::optional<SizeFunctor> size;
};
LoadedCategory load_category(Json const& doc);

Json to_json(FinCategory const& c, SizeFunctor const* size = nullptr);
Json to_json(SkeletonData const& d);
Json to_json(KGraph const& k);
Json to_json(ZSAction const& a);
Json to_json(FinCategory const& c, LawReport const& r);
Json to_json(ZSAction const& a, Product const& p);
Json to_json(FinCategory const& c, Decomposition const& d);
Json to_json(IsoReport const& r);

Json degree_json(Degree const& d);
Degree parse_degree(Json const& j, std::size_t k);

}  // namespace ghk

#endif  // GHK_JSON_IO_HPP_
