#include "ghk/fincat.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include <boost/dynamic_bitset.hpp>

#include "ghk/error.hpp"

namespace ghk {

namespace {

using Bits = boost::dynamic_bitset<>;

std::string arrow_list(FinCategory const& c, std::span<ArrowId const> as) {
  std::string s;
  for (auto a : as) {
    if (!s.empty()) s += " ";
    s += c.name(a);
  }
  return s;
}

}  // namespace

FinCategory FinCategory::validate(CategoryData data) {
  return build(std::move(data), true);
}

FinCategory FinCategory::unchecked(CategoryData data) {
  return build(std::move(data), false);
}

FinCategory FinCategory::build(CategoryData data, bool check) {
  FinCategory c;
  std::size_t const n = data.arrows.size();
  std::size_t const n_obj = data.objects.size();

  for (ObjectId o = 0; o < n_obj; ++o) {
    if (!c.object_by_name_.emplace(data.objects[o], o).second) {
      throw Error(ErrorKind::InvalidDocument,
                  "duplicate object id '" + data.objects[o] + "'");
    }
  }
  for (ArrowId a = 0; a < n; ++a) {
    auto const& spec = data.arrows[a];
    if (spec.dom >= n_obj || spec.cod >= n_obj) {
      throw Error(ErrorKind::InvalidDocument,
                  "arrow '" + spec.id + "' has a dangling endpoint");
    }
    if (!c.by_name_.emplace(spec.id, a).second) {
      throw Error(ErrorKind::InvalidDocument,
                  "duplicate arrow id '" + spec.id + "'");
    }
  }
  if (data.identities.size() != n_obj) {
    throw Error(ErrorKind::BadIdentity, "every object needs one identity");
  }
  for (ObjectId o = 0; o < n_obj; ++o) {
    ArrowId e = data.identities[o];
    if (e >= n || data.arrows[e].dom != o || data.arrows[e].cod != o) {
      throw Error(ErrorKind::BadIdentity,
                  "identity of '" + data.objects[o] + "' is not a loop on it");
    }
  }

  c.objects_ = std::move(data.objects);
  c.arrows_ = std::move(data.arrows);
  c.identities_ = std::move(data.identities);
  c.bound_ = std::move(data.bound);

  // (f, g) -> fg, kept sorted per f.
  std::vector<std::map<ArrowId, ArrowId>> table(n);
  for (auto const& [f, g, fg] : data.composites) {
    if (f >= n || g >= n || fg >= n) {
      throw Error(ErrorKind::InvalidDocument, "composite names unknown arrow");
    }
    if (check) {
      std::vector<std::string> w{c.name(f), c.name(g), c.name(fg)};
      if (c.dom(f) != c.cod(g)) {
        throw Error(ErrorKind::NotComposable,
                    "entry " + c.name(f) + "*" + c.name(g) +
                        " but dom(f) != cod(g)",
                    w);
      }
      if (c.dom(fg) != c.dom(g) || c.cod(fg) != c.cod(f)) {
        throw Error(ErrorKind::NotComposable,
                    "entry " + c.name(f) + "*" + c.name(g) + " = " +
                        c.name(fg) + " has wrong endpoints",
                    w);
      }
      auto [it, inserted] = table[f].emplace(g, fg);
      if (!inserted && it->second != fg) {
        throw Error(ErrorKind::InvalidDocument,
                    "conflicting entries for " + c.name(f) + "*" + c.name(g),
                    w);
      }
    } else {
      table[f][g] = fg;
    }
  }

  for (ArrowId a = 0; a < n; ++a) {
    ArrowId const left_id = c.identity(c.cod(a));
    ArrowId const right_id = c.identity(c.dom(a));
    for (auto [f, g] : {std::pair{left_id, a}, std::pair{a, right_id}}) {
      auto [it, inserted] = table[f].emplace(g, a);
      if (check && !inserted && it->second != a) {
        throw Error(ErrorKind::BadIdentity,
                    c.name(f) + "*" + c.name(g) + " should be " + c.name(a),
                    {c.name(f), c.name(g)});
      }
    }
  }

  c.right_.resize(n);
  c.factorizations_.resize(n);
  for (ArrowId f = 0; f < n; ++f) {
    c.right_[f].assign(table[f].begin(), table[f].end());
    for (auto [g, fg] : c.right_[f]) c.factorizations_[fg].push_back({f, g});
  }

  if (check && !c.bound_) {
    std::vector<std::size_t> into(n_obj, 0);
    for (auto const& spec : c.arrows_) ++into[spec.cod];
    for (ArrowId f = 0; f < n; ++f) {
      if (c.right_[f].size() == into[c.dom(f)]) continue;
      for (ArrowId g = 0; g < n; ++g) {
        if (c.composable(f, g) && c.compose(f, g) == kNoArrow) {
          throw Error(ErrorKind::IncompleteTable,
                      "no entry for " + c.name(f) + "*" + c.name(g),
                      {c.name(f), c.name(g)});
        }
      }
    }
  }

  if (check) {
    for (ArrowId f = 0; f < n; ++f) {
      for (auto [g, fg] : c.right_[f]) {
        for (auto [h, gh] : c.right_[g]) {
          ArrowId lhs = c.compose(fg, h);
          ArrowId rhs = c.compose(f, gh);
          if (lhs != rhs) {
            throw Error(ErrorKind::NonAssociative,
                        "(" + c.name(f) + c.name(g) + ")" + c.name(h) +
                            " != " + c.name(f) + "(" + c.name(g) +
                            c.name(h) + ")",
                        {c.name(f), c.name(g), c.name(h)});
          }
        }
      }
    }
  }

  c.inverse_.assign(n, kNoArrow);
  for (ArrowId a = 0; a < n; ++a) {
    ArrowId const e = c.identity(c.cod(a));
    for (auto [b, ab] : c.right_[a]) {
      if (ab == e && c.compose(b, a) == c.identity(c.dom(a))) {
        c.inverse_[a] = b;
        break;
      }
    }
    if (c.inverse_[a] != kNoArrow) c.invertibles_.push_back(a);
  }

  if (check && data.inverses) {
    std::vector<bool> listed(n, false);
    for (auto [a, b] : *data.inverses) {
      if (a >= n || b >= n) {
        throw Error(ErrorKind::InvalidDocument, "inverse names unknown arrow");
      }
      if (c.inverse_[a] != b) {
        throw Error(ErrorKind::BadInverse,
                    c.name(b) + " is not an inverse of " + c.name(a),
                    {c.name(a), c.name(b)});
      }
      listed[a] = listed[b] = true;
    }
    for (ArrowId a = 0; a < n; ++a) {
      if (c.is_invertible(a) && !c.is_identity(a) && !listed[a]) {
        throw Error(ErrorKind::BadInverse,
                    c.name(a) + " is invertible but not listed",
                    {c.name(a)});
      }
    }
  }

  std::vector<ArrowId> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](ArrowId x, ArrowId y) {
    return c.name(x) < c.name(y);
  });
  c.rank_.resize(n);
  for (std::size_t i = 0; i < n; ++i) c.rank_[order[i]] = i;
  return c;
}

ArrowId FinCategory::compose(ArrowId f, ArrowId g) const {
  auto const& row = right_[f];
  auto it = std::lower_bound(
      row.begin(), row.end(), g,
      [](std::pair<ArrowId, ArrowId> const& p, ArrowId v) {
        return p.first < v;
      });
  if (it == row.end() || it->first != g) return kNoArrow;
  return it->second;
}

ArrowId FinCategory::compose_word(std::span<ArrowId const> word) const {
  if (word.empty()) return kNoArrow;
  ArrowId acc = word.front();
  for (std::size_t i = 1; i < word.size() && acc != kNoArrow; ++i) {
    acc = compose(acc, word[i]);
  }
  return acc;
}

std::optional<ArrowId> FinCategory::find(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

std::optional<ObjectId> FinCategory::find_object(std::string_view name) const {
  auto it = object_by_name_.find(std::string(name));
  if (it == object_by_name_.end()) return std::nullopt;
  return it->second;
}

std::vector<ArrowId> FinCategory::sorted(std::vector<ArrowId> arrows) const {
  std::sort(arrows.begin(), arrows.end(),
            [&](ArrowId x, ArrowId y) { return rank_[x] < rank_[y]; });
  return arrows;
}

CategoryData FinCategory::data() const {
  CategoryData d;
  d.objects = objects_;
  d.arrows = arrows_;
  d.identities = identities_;
  for (ArrowId f = 0; f < num_arrows(); ++f) {
    for (auto [g, fg] : right_[f]) d.composites.push_back({f, g, fg});
  }
  std::vector<std::pair<ArrowId, ArrowId>> inv;
  for (auto a : invertibles_) {
    if (!is_identity(a) && a <= inverse_[a]) inv.emplace_back(a, inverse_[a]);
  }
  d.inverses = std::move(inv);
  d.bound = bound_;
  return d;
}

SizeFunctor SizeFunctor::validate(FinCategory const& c, std::vector<Degree> deg,
                                  std::size_t k) {
  if (k == 0) throw Error(ErrorKind::InvalidDocument, "size rank must be >= 1");
  if (deg.size() != c.num_arrows()) {
    throw Error(ErrorKind::InvalidDocument,
                "size functor must assign a degree to every arrow");
  }
  for (ArrowId a = 0; a < deg.size(); ++a) {
    if (deg[a].rank() != k) {
      throw Error(ErrorKind::InvalidDocument,
                  "degree of " + c.name(a) + " has wrong rank", {c.name(a)});
    }
  }
  if (c.bound() && c.bound()->rank() != k) {
    throw Error(ErrorKind::InvalidDocument, "bound has wrong rank");
  }
  for (ArrowId f = 0; f < c.num_arrows(); ++f) {
    for (auto [g, fg] : c.right_composites(f)) {
      if (deg[fg] != deg[f] + deg[g]) {
        throw Error(ErrorKind::NotFunctorial,
                    "deg(" + c.name(f) + "*" + c.name(g) + ") = " +
                        deg[fg].to_string() + " != " + deg[f].to_string() +
                        " + " + deg[g].to_string(),
                    {c.name(f), c.name(g)});
      }
    }
  }
  for (ArrowId a = 0; a < c.num_arrows(); ++a) {
    if (deg[a].is_zero() && !c.is_invertible(a)) {
      throw Error(ErrorKind::ZeroOnNonInvertible,
                  c.name(a) + " has degree 0 but is not invertible",
                  {c.name(a)});
    }
    if (!deg[a].is_zero() && c.is_invertible(a)) {
      throw Error(ErrorKind::NonZeroOnInvertible,
                  c.name(a) + " is invertible with degree " +
                      deg[a].to_string(),
                  {c.name(a)});
    }
  }
  if (auto const& bound = c.bound()) {
    // A truncated window must contain every composite that fits.
    for (ArrowId a = 0; a < c.num_arrows(); ++a) {
      if (!deg[a].leq(*bound)) {
        throw Error(ErrorKind::TruncationMismatch,
                    c.name(a) + " lies outside the bound", {c.name(a)});
      }
    }
    for (ArrowId f = 0; f < c.num_arrows(); ++f) {
      for (ArrowId g = 0; g < c.num_arrows(); ++g) {
        if (!c.composable(f, g)) continue;
        bool fits = (deg[f] + deg[g]).leq(*bound);
        bool present = c.compose(f, g) != kNoArrow;
        if (fits != present) {
          throw Error(ErrorKind::TruncationMismatch,
                      c.name(f) + "*" + c.name(g) +
                          (fits ? " fits the bound but is missing"
                                : " exceeds the bound but is recorded"),
                      {c.name(f), c.name(g)});
        }
      }
    }
  }
  SizeFunctor s;
  s.k_ = k;
  s.deg_ = std::move(deg);
  return s;
}

std::string_view to_string(Side side) {
  switch (side) {
    case Side::Right: return "right";
    case Side::Left: return "left";
    case Side::TwoSided: return "two-sided";
  }
  return "?";
}

namespace {

struct IdealTables {
  std::vector<Bits> right, left;
};

IdealTables principal_ideals(FinCategory const& c) {
  std::size_t const n = c.num_arrows();
  IdealTables t{std::vector<Bits>(n, Bits(n)), std::vector<Bits>(n, Bits(n))};
  for (ArrowId f = 0; f < n; ++f) {
    for (auto [g, fg] : c.right_composites(f)) {
      t.right[f].set(fg);
      t.left[g].set(fg);
    }
  }
  return t;
}

std::vector<Bits> ideals_for(FinCategory const& c, Side side,
                             IdealTables const& t) {
  if (side == Side::Right) return t.right;
  if (side == Side::Left) return t.left;
  std::size_t const n = c.num_arrows();
  std::vector<Bits> two(n, Bits(n));
  for (ArrowId a = 0; a < n; ++a) {
    for (auto b = t.right[a].find_first(); b != Bits::npos;
         b = t.right[a].find_next(b)) {
      two[a] |= t.left[b];
    }
  }
  return two;
}

std::vector<Bits> cosets_for(FinCategory const& c, Side side) {
  std::size_t const n = c.num_arrows();
  std::vector<Bits> right(n, Bits(n)), left(n, Bits(n));
  for (ArrowId a = 0; a < n; ++a) {
    for (auto [g, ag] : c.right_composites(a)) {
      if (c.is_invertible(g)) right[a].set(ag);
    }
  }
  for (auto g : c.invertibles()) {
    for (auto [a, ga] : c.right_composites(g)) left[a].set(ga);
  }
  if (side == Side::Right) return right;
  if (side == Side::Left) return left;
  std::vector<Bits> two(n, Bits(n));
  for (ArrowId a = 0; a < n; ++a) {
    for (auto b = right[a].find_first(); b != Bits::npos;
         b = right[a].find_next(b)) {
      two[a] |= left[b];
    }
  }
  return two;
}

// Label every arrow by the least-ranked arrow with an equal set.
std::vector<ArrowId> partition_labels(FinCategory const& c,
                                      std::vector<Bits> const& sets) {
  std::map<Bits, ArrowId> first;
  std::vector<ArrowId> labels(sets.size());
  for (ArrowId a = 0; a < sets.size(); ++a) {
    auto [it, inserted] = first.emplace(sets[a], a);
    if (!inserted && c.lex_less(a, it->second)) it->second = a;
  }
  for (ArrowId a = 0; a < sets.size(); ++a) labels[a] = first.at(sets[a]);
  return labels;
}

std::vector<std::size_t> maximal_classes(
    FinCategory const& c, std::vector<std::vector<ArrowId>> const& classes,
    std::vector<Bits> const& right) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    ArrowId const a = classes[i].front();
    Bits const& top = right[c.identity(c.cod(a))];
    if (!right[a].is_proper_subset_of(top)) continue;
    bool maximal = true;
    for (ArrowId b = 0; b < c.num_arrows() && maximal; ++b) {
      if (c.cod(b) != c.cod(a)) continue;
      if (right[a].is_proper_subset_of(right[b]) &&
          right[b].is_proper_subset_of(top)) {
        maximal = false;
      }
    }
    if (maximal) out.push_back(i);
  }
  return out;
}

}  // namespace

IdealReport ideal_classes(FinCategory const& c, Side side,
                          SizeFunctor const* size, CrossCheck cross) {
  auto const tables = principal_ideals(c);
  auto const ideals = ideals_for(c, side, tables);
  auto const labels = partition_labels(c, ideals);

  IdealReport report;
  report.side = side;
  std::map<std::size_t, std::vector<ArrowId>> by_label;  // keyed by rank
  for (ArrowId a = 0; a < c.num_arrows(); ++a) {
    by_label[c.rank(labels[a])].push_back(a);
  }
  for (auto& [rank, members] : by_label) {
    report.classes.push_back(c.sorted(std::move(members)));
  }
  if (side == Side::Right) {
    report.maximal_right_classes =
        maximal_classes(c, report.classes, tables.right);
  }

  bool const run_cross = cross == CrossCheck::Always ||
                         (cross == CrossCheck::Auto && size != nullptr);
  if (run_cross) {
    auto const coset_labels = partition_labels(c, cosets_for(c, side));
    for (ArrowId a = 0; a < c.num_arrows(); ++a) {
      if (coset_labels[a] != labels[a]) {
        ArrowId b = labels[a] == a ? coset_labels[a] : labels[a];
        throw Error(ErrorKind::IdealCosetMismatch,
                    std::string(to_string(side)) +
                        " ideal partition differs from coset partition at " +
                        c.name(a) + ", " + c.name(b),
                    {c.name(a), c.name(b)});
      }
    }
    report.coset_cross_checked = true;
  }
  return report;
}

namespace {

bool is_atom_by_definition(FinCategory const& c, ArrowId a) {
  if (c.is_invertible(a)) return false;
  for (auto const& f : c.factorizations(a)) {
    if (!c.is_invertible(f.left) && !c.is_invertible(f.right)) return false;
  }
  return true;
}

}  // namespace

std::vector<ArrowId> atoms(FinCategory const& c, SizeFunctor const& size) {
  std::vector<ArrowId> by_definition;
  for (ArrowId a = 0; a < c.num_arrows(); ++a) {
    if (is_atom_by_definition(c, a)) by_definition.push_back(a);
  }
  by_definition = c.sorted(std::move(by_definition));

  auto const report = ideal_classes(c, Side::Right, &size);
  std::vector<ArrowId> by_ideal;
  for (auto i : report.maximal_right_classes) {
    by_ideal.insert(by_ideal.end(), report.classes[i].begin(),
                    report.classes[i].end());
  }
  by_ideal = c.sorted(std::move(by_ideal));
  if (by_ideal != by_definition) {
    throw Error(ErrorKind::LemmaViolation,
                "atoms {" + arrow_list(c, by_definition) +
                    "} differ from maximal right ideal generators {" +
                    arrow_list(c, by_ideal) + "}");
  }
  return by_definition;
}

std::vector<ArrowId> atom_factorize(FinCategory const& c,
                                    SizeFunctor const& size, ArrowId a) {
  if (c.is_invertible(a)) {
    throw Error(ErrorKind::InvertibleInput, c.name(a) + " is invertible",
                {c.name(a)});
  }
  std::optional<Factorization> best;
  for (auto const& f : c.factorizations(a)) {
    if (c.is_invertible(f.left) || c.is_invertible(f.right)) continue;
    if (!best || std::pair(c.rank(f.left), c.rank(f.right)) <
                     std::pair(c.rank(best->left), c.rank(best->right))) {
      best = f;
    }
  }
  if (!best) return {a};
  // Both factors have strictly smaller degree, so the recursion is finite.
  if (!(size(best->left).total() < size(a).total() &&
        size(best->right).total() < size(a).total())) {
    throw Error(ErrorKind::LemmaViolation,
                "factorization of " + c.name(a) + " does not lower degree");
  }
  auto out = atom_factorize(c, size, best->left);
  auto tail = atom_factorize(c, size, best->right);
  out.insert(out.end(), tail.begin(), tail.end());
  return out;
}

std::vector<ArrowId> transversal(FinCategory const& c,
                                 SizeFunctor const& size) {
  auto const report = ideal_classes(c, Side::Right, &size);
  std::vector<ArrowId> x;
  for (auto i : report.maximal_right_classes) {
    x.push_back(report.classes[i].front());
  }
  return c.sorted(std::move(x));
}

namespace {

// x in X and invertible h with t = xh; the transversal holds one generator
// per class, so the first hit is the only one.
std::optional<std::pair<ArrowId, ArrowId>> split_against_transversal(
    FinCategory const& c, std::span<ArrowId const> x, ArrowId t) {
  for (auto xi : x) {
    if (c.cod(xi) != c.cod(t)) continue;
    for (auto [h, xh] : c.right_composites(xi)) {
      if (xh == t && c.is_invertible(h)) return std::pair{xi, h};
    }
  }
  return std::nullopt;
}

}  // namespace

XGFactorization xg_factorize(FinCategory const& c, SizeFunctor const& size,
                             std::span<ArrowId const> x, ArrowId a) {
  if (c.is_invertible(a)) return {{}, a};
  XGFactorization out;
  ArrowId h = c.identity(c.cod(a));
  for (auto atom : atom_factorize(c, size, a)) {
    ArrowId const t = c.compose(h, atom);
    if (t == kNoArrow) {
      throw Error(ErrorKind::LemmaViolation,
                  c.name(h) + "*" + c.name(atom) + " missing from the table");
    }
    auto split = split_against_transversal(c, x, t);
    if (!split) {
      throw Error(ErrorKind::LemmaViolation,
                  "atom " + c.name(t) + " is not xh for any x in X",
                  {c.name(t)});
    }
    out.word.push_back(split->first);
    h = split->second;
  }
  out.residue = h;
  std::vector<ArrowId> all = out.word;
  all.push_back(h);
  if (c.compose_word(all) != a) {
    throw Error(ErrorKind::LemmaViolation,
                "<X>G factorization does not recompose to " + c.name(a),
                {c.name(a)});
  }
  return out;
}

std::vector<LemmaCheck> check_size_lemmas(FinCategory const& c,
                                          SizeFunctor const& size) {
  std::vector<LemmaCheck> out;
  std::size_t const n = c.num_arrows();

  for (Side side : {Side::Right, Side::Left, Side::TwoSided}) {
    LemmaCheck check{"ideal-equals-coset-" + std::string(to_string(side)), n, {}};
    try {
      ideal_classes(c, side, &size, CrossCheck::Always);
    } catch (Error const& e) {
      check.violations.push_back(e.what());
    }
    out.push_back(std::move(check));
  }

  {
    LemmaCheck check{"invertible-iff-identity-ideal", n, {}};
    auto const t = principal_ideals(c);
    for (ArrowId a = 0; a < n; ++a) {
      bool same = t.right[a] == t.right[c.identity(c.cod(a))];
      if (same != c.is_invertible(a)) {
        check.violations.push_back(c.name(a));
      }
    }
    out.push_back(std::move(check));
  }

  std::vector<ArrowId> atom_set;
  {
    LemmaCheck check{"atom-iff-maximal-right-ideal", n, {}};
    try {
      atom_set = atoms(c, size);
    } catch (Error const& e) {
      check.violations.push_back(e.what());
    }
    out.push_back(std::move(check));
  }
  std::vector<bool> is_atom(n, false);
  for (auto a : atom_set) is_atom[a] = true;

  {
    LemmaCheck check{"atom-factorization", 0, {}};
    for (ArrowId a = 0; a < n; ++a) {
      if (c.is_invertible(a)) continue;
      ++check.instances;
      try {
        auto word = atom_factorize(c, size, a);
        bool ok = c.compose_word(word) == a;
        for (auto w : word) ok = ok && is_atom[w];
        if (!ok) check.violations.push_back(c.name(a));
      } catch (Error const& e) {
        check.violations.push_back(e.what());
      }
    }
    out.push_back(std::move(check));
  }

  std::vector<ArrowId> x;
  try {
    x = transversal(c, size);
  } catch (Error const&) {
  }

  {
    LemmaCheck check{"invertible-times-atom", 0, {}};
    for (auto g : c.invertibles()) {
      for (auto a : atom_set) {
        ArrowId ga = c.composable(g, a) ? c.compose(g, a) : kNoArrow;
        ArrowId ag = c.composable(a, g) ? c.compose(a, g) : kNoArrow;
        if (ga != kNoArrow) {
          ++check.instances;
          if (!is_atom[ga]) {
            check.violations.push_back(c.name(g) + c.name(a) + " not atom");
          } else if (!split_against_transversal(c, x, ga)) {
            check.violations.push_back(c.name(g) + c.name(a) + " not in XG");
          }
        }
        if (ag != kNoArrow) {
          ++check.instances;
          if (!is_atom[ag]) {
            check.violations.push_back(c.name(a) + c.name(g) + " not atom");
          }
        }
      }
    }
    out.push_back(std::move(check));
  }

  {
    LemmaCheck check{"transversal-factorization", n, {}};
    std::vector<bool> in_x(n, false);
    for (auto xi : x) in_x[xi] = true;
    for (ArrowId a = 0; a < n; ++a) {
      try {
        auto f = xg_factorize(c, size, x, a);
        bool ok = c.is_invertible(f.residue);
        for (auto w : f.word) ok = ok && in_x[w];
        if (!ok) check.violations.push_back(c.name(a));
      } catch (Error const& e) {
        check.violations.push_back(e.what());
      }
    }
    out.push_back(std::move(check));
  }
  return out;
}

}  // namespace ghk
