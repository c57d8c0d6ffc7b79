#ifndef GHK_FINCAT_HPP_
#define GHK_FINCAT_HPP_

// Explicit finite categories, size functors and the ideal/atom machinery
// that sits on top of them.
//
// Composition follows the usual arrow convention: compose(f, g) is "f after
// g" and is defined only when dom(f) == cod(g). A category may be a
// degree-bounded window of an infinite one: in that case it carries a
// `bound`, and a composite is recorded exactly when its degree stays within
// the bound.

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ghk/degree.hpp"

namespace ghk {

using ArrowId = std::uint32_t;
using ObjectId = std::uint32_t;
inline constexpr ArrowId kNoArrow = std::numeric_limits<ArrowId>::max();

struct ArrowSpec {
  std::string id;
  ObjectId dom = 0;
  ObjectId cod = 0;
};

// Structurally parsed category document; nothing here has been checked
// against the category axioms yet.
struct CategoryData {
  std::vector<std::string> objects;
  std::vector<ArrowSpec> arrows;
  std::vector<ArrowId> identities;                  // one per object
  std::vector<std::array<ArrowId, 3>> composites;   // [f, g, fg]
  std::optional<std::vector<std::pair<ArrowId, ArrowId>>> inverses;
  std::optional<Degree> bound;
};

struct Factorization {
  ArrowId left = kNoArrow;
  ArrowId right = kNoArrow;
  friend bool operator==(Factorization const&, Factorization const&) = default;
};

class FinCategory {
 public:
  // Exhaustive check of the category axioms. Identity composites that are
  // missing from the table are filled in; present ones must agree.
  static FinCategory validate(CategoryData data);
  // Builds the lookup structures without checking any axiom. Conflicting
  // table entries keep the last one. Used to inspect corrupted inputs.
  static FinCategory unchecked(CategoryData data);

  std::size_t num_arrows() const noexcept { return arrows_.size(); }
  std::size_t num_objects() const noexcept { return objects_.size(); }

  ObjectId dom(ArrowId a) const { return arrows_[a].dom; }
  ObjectId cod(ArrowId a) const { return arrows_[a].cod; }
  ArrowId identity(ObjectId o) const { return identities_[o]; }
  bool is_identity(ArrowId a) const { return identity(dom(a)) == a; }

  bool composable(ArrowId f, ArrowId g) const { return dom(f) == cod(g); }
  // kNoArrow when undefined or outside the truncation window.
  ArrowId compose(ArrowId f, ArrowId g) const;
  // Left-to-right fold; kNoArrow if any step is undefined.
  ArrowId compose_word(std::span<ArrowId const> word) const;

  bool is_invertible(ArrowId a) const { return inverse_[a] != kNoArrow; }
  ArrowId inverse(ArrowId a) const { return inverse_[a]; }
  std::span<ArrowId const> invertibles() const { return invertibles_; }

  // All (g, fg) with fg recorded, sorted by g.
  std::span<std::pair<ArrowId, ArrowId> const> right_composites(
      ArrowId f) const {
    return right_[f];
  }
  // All (b, c) with bc = a.
  std::span<Factorization const> factorizations(ArrowId a) const {
    return factorizations_[a];
  }

  std::string const& name(ArrowId a) const { return arrows_[a].id; }
  std::string const& object_name(ObjectId o) const { return objects_[o]; }
  std::optional<ArrowId> find(std::string_view name) const;
  std::optional<ObjectId> find_object(std::string_view name) const;
  // Position of the arrow id in lexicographic order; used for every
  // deterministic tie-break.
  std::size_t rank(ArrowId a) const { return rank_[a]; }
  bool lex_less(ArrowId a, ArrowId b) const { return rank_[a] < rank_[b]; }
  std::vector<ArrowId> sorted(std::vector<ArrowId> arrows) const;

  std::optional<Degree> const& bound() const noexcept { return bound_; }

  // Re-assembles a document equivalent to this category (identity
  // composites included, inverses listed).
  CategoryData data() const;

 private:
  FinCategory() = default;
  static FinCategory build(CategoryData data, bool check);

  std::vector<std::string> objects_;
  std::vector<ArrowSpec> arrows_;
  std::vector<ArrowId> identities_;
  std::vector<std::vector<std::pair<ArrowId, ArrowId>>> right_;
  std::vector<std::vector<Factorization>> factorizations_;
  std::vector<ArrowId> inverse_;
  std::vector<ArrowId> invertibles_;
  std::vector<std::size_t> rank_;
  std::unordered_map<std::string, ArrowId> by_name_;
  std::unordered_map<std::string, ObjectId> object_by_name_;
  std::optional<Degree> bound_;
};

// A functor to N^k whose zero fibre is exactly the invertible arrows.
class SizeFunctor {
 public:
  static SizeFunctor validate(FinCategory const& c, std::vector<Degree> deg,
                              std::size_t k);

  std::size_t rank() const noexcept { return k_; }
  Degree const& operator()(ArrowId a) const { return deg_[a]; }
  std::vector<Degree> const& degrees() const noexcept { return deg_; }

 private:
  SizeFunctor() = default;
  std::size_t k_ = 0;
  std::vector<Degree> deg_;
};

enum class Side { Right, Left, TwoSided };
std::string_view to_string(Side side);

struct IdealReport {
  Side side = Side::Right;
  // Classes of arrows with equal principal ideals, each sorted
  // lexicographically; classes ordered by their least member.
  std::vector<std::vector<ArrowId>> classes;
  // Indices into `classes` whose ideal aC is maximal (right side only).
  std::vector<std::size_t> maximal_right_classes;
  // Whether the partition was compared against the coset partition
  // (aG = bG, Ga = Gb, GaG = GbG).
  bool coset_cross_checked = false;
};

enum class CrossCheck { Auto, Always, Never };

// Principal ideal classes by table scan. With CrossCheck::Auto the coset
// comparison runs only when a size functor is supplied. A mismatch raises
// IdealCosetMismatch.
IdealReport ideal_classes(FinCategory const& c, Side side,
                          SizeFunctor const* size = nullptr,
                          CrossCheck cross = CrossCheck::Auto);

// Non-invertible arrows with no factorization into two non-invertibles.
// Cross-checked against the maximal principal right ideals.
std::vector<ArrowId> atoms(FinCategory const& c, SizeFunctor const& size);

// a = a1 ... an with each ai an atom, splitting on the lexicographically
// least factorization into non-invertibles.
std::vector<ArrowId> atom_factorize(FinCategory const& c,
                                    SizeFunctor const& size, ArrowId a);

// Lexicographically least generator of every maximal principal right ideal.
std::vector<ArrowId> transversal(FinCategory const& c,
                                 SizeFunctor const& size);

struct XGFactorization {
  std::vector<ArrowId> word;  // entries of the transversal
  ArrowId residue = kNoArrow; // invertible
};

// a = x1 ... xn h with xi in `x` and h invertible.
XGFactorization xg_factorize(FinCategory const& c, SizeFunctor const& size,
                             std::span<ArrowId const> x, ArrowId a);

// Outcome of one exhaustive lemma check over a (category, size functor).
struct LemmaCheck {
  std::string lemma;
  std::size_t instances = 0;
  std::vector<std::string> violations;
  bool holds() const { return violations.empty(); }
};

// The ideal/atom lemmas for categories with a size functor:
// ideal equality vs coset equality on all three sides, invertibility via
// identity ideals, atoms vs maximal right ideals, atom factorization,
// invertibles acting on atoms, and the <X>G factorization.
std::vector<LemmaCheck> check_size_lemmas(FinCategory const& c,
                                          SizeFunctor const& size);

}  // namespace ghk

#endif  // GHK_FINCAT_HPP_
