#ifndef GHK_KGRAPH_HPP_
#define GHK_KGRAPH_HPP_

// Higher rank k-graphs presented by a k-coloured skeleton plus factorization
// squares.
//
// A path is a sequence [p1, ..., pn] of edges with dom(pi) == cod(pi+1); p1
// is the outermost factor. The normal form sorts colours non-decreasingly
// from left to right. A square (f, e, e2, f2) records f e = e2 f2 where e, e2
// have colour i, f, f2 have colour j and i < j.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ghk/degree.hpp"
#include "ghk/fincat.hpp"

namespace ghk {

using EdgeId = std::uint32_t;

struct Edge {
  std::string id;
  std::size_t color = 0;  // 0-based; documents use 1..k
  ObjectId dom = 0;
  ObjectId cod = 0;
};

struct Square {
  EdgeId f = 0, e = 0;    // lhs: f e, colours (j, i)
  EdgeId e2 = 0, f2 = 0;  // rhs: e2 f2, colours (i, j)
};

struct SkeletonData {
  std::size_t k = 1;
  std::vector<std::string> objects;
  std::vector<Edge> edges;
  std::vector<Square> squares;
};

struct Path {
  ObjectId cod = 0;
  ObjectId dom = 0;
  std::vector<EdgeId> edges;
  Degree degree;

  bool is_identity() const { return edges.empty(); }
  friend bool operator==(Path const&, Path const&) = default;
  friend auto operator<=>(Path const&, Path const&) = default;
};

class KGraph {
 public:
  static KGraph validate(SkeletonData data);

  std::size_t rank() const noexcept { return data_.k; }
  std::size_t num_objects() const noexcept { return data_.objects.size(); }
  std::size_t num_edges() const noexcept { return data_.edges.size(); }
  Edge const& edge(EdgeId e) const { return data_.edges[e]; }
  std::string const& object_name(ObjectId o) const { return data_.objects[o]; }
  SkeletonData const& data() const noexcept { return data_; }
  std::optional<EdgeId> find_edge(std::string const& id) const;
  std::optional<ObjectId> find_object(std::string const& id) const;

  // Identity path at an object.
  Path identity(ObjectId o) const;
  // Bubble-sorts colours with the squares. NotComposable if the chain
  // breaks; an empty sequence needs `at` to name its object.
  Path normalize(std::span<EdgeId const> edges,
                 std::optional<ObjectId> at = std::nullopt) const;
  // Applies the square (or its inverse) at position i, i+1 of a raw
  // sequence whose entries there have distinct colours.
  void swap_adjacent(std::vector<EdgeId>& edges, std::size_t i) const;

  Path compose(Path const& p, Path const& q) const;
  // The unique (p1, p2) with p = p1 p2 and degree(p1) = m.
  std::pair<Path, Path> factor(Path const& p, Degree const& m) const;
  // All normal-form paths of degree <= bound, ordered by degree, then by
  // codomain, then by edge sequence.
  std::vector<Path> enumerate_paths(Degree const& bound) const;

  // Human-readable id: edge ids joined by '.', or the object id for an
  // identity path.
  std::string path_name(Path const& p) const;

 private:
  KGraph() = default;

  SkeletonData data_;
  std::map<std::pair<EdgeId, EdgeId>, std::pair<EdgeId, EdgeId>> forward_;
  std::map<std::pair<EdgeId, EdgeId>, std::pair<EdgeId, EdgeId>> backward_;
  std::map<std::string, EdgeId> edge_by_name_;
  std::map<std::string, ObjectId> object_by_name_;
};

// Degree-bounded window of the path category as a FinCategory, together
// with its degree functor. Arrow i is paths[i].
struct PathCategory {
  std::vector<Path> paths;
  FinCategory category;
  SizeFunctor size;
};

PathCategory path_category(KGraph const& k, Degree const& bound);

}  // namespace ghk

#endif  // GHK_KGRAPH_HPP_
