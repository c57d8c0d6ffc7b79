#include "ghk/decompose.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "ghk/error.hpp"

namespace ghk {

namespace {

Degree window_of(FinCategory const& c, SizeFunctor const& size) {
  if (c.bound()) return *c.bound();
  Degree b = Degree::zero(size.rank());
  for (ArrowId a = 0; a < c.num_arrows(); ++a) {
    for (std::size_t i = 0; i < b.rank(); ++i) {
      b[i] = std::max(b[i], size(a)[i]);
    }
  }
  return b;
}

[[noreturn]] void precondition(FinCategory const& c, LawReport const& r) {
  std::vector<std::string> w;
  if (!r.witnesses.empty()) {
    for (auto a : r.witnesses.front().arrows) w.push_back(c.name(a));
  }
  throw Error(ErrorKind::PreconditionFailed,
              std::string(to_string(r.law)) + " does not hold", w);
}

}  // namespace

Decomposition decompose(FinCategory const& c, SizeFunctor const& size) {
  auto const wfp = check_wfp(c, size);
  if (!wfp.holds) precondition(c, wfp);
  auto const x = transversal(c, size);
  auto const rc = check_r_condition(c, size, x);
  if (!rc.holds) precondition(c, rc);

  std::size_t const k = size.rank();
  Degree const bound = window_of(c, size);

  SkeletonData sk;
  sk.k = k;
  for (ObjectId o = 0; o < c.num_objects(); ++o) {
    sk.objects.push_back(c.object_name(o));
  }
  std::map<ArrowId, EdgeId> edge_of;
  for (auto a : x) {
    int const i = size(a).unit_index();
    if (i < 0) {
      throw Error(ErrorKind::PreconditionFailed,
                  "transversal arrow " + c.name(a) + " has degree " +
                      size(a).to_string(),
                  {c.name(a)});
    }
    edge_of.emplace(a, static_cast<EdgeId>(sk.edges.size()));
    sk.edges.push_back(
        {c.name(a), static_cast<std::size_t>(i), c.dom(a), c.cod(a)});
  }
  auto is_x = [&](ArrowId a) { return edge_of.count(a) > 0; };

  // Squares: f e = e2 f2 read off the table inside <X>.
  for (auto f : x) {
    for (auto e : x) {
      if (!c.composable(f, e)) continue;
      auto const cf = sk.edges[edge_of[f]].color;
      auto const ce = sk.edges[edge_of[e]].color;
      if (cf <= ce) continue;
      ArrowId const fe = c.compose(f, e);
      if (fe == kNoArrow) {
        throw Error(ErrorKind::BoundTooSmall,
                    c.name(f) + " * " + c.name(e) + " lies outside the window",
                    {c.name(f), c.name(e)});
      }
      std::vector<Factorization> hits;
      for (auto const& fz : c.factorizations(fe)) {
        if (is_x(fz.left) && is_x(fz.right) &&
            sk.edges[edge_of[fz.left]].color == ce) {
          hits.push_back(fz);
        }
      }
      if (hits.size() != 1) {
        throw Error(ErrorKind::NonUniqueRepresentation,
                    c.name(fe) + " has " + std::to_string(hits.size()) +
                        " splittings in X at the swapped degree",
                    {c.name(f), c.name(e)});
      }
      sk.squares.push_back({edge_of[f], edge_of[e], edge_of[hits[0].left],
                            edge_of[hits[0].right]});
    }
  }
  KGraph kg = KGraph::validate(std::move(sk));

  // Groupoid of invertibles, arrows in lexicographic order.
  std::vector<ArrowId> inv(c.invertibles().begin(), c.invertibles().end());
  inv = c.sorted(std::move(inv));
  std::map<ArrowId, ArrowId> g_of;
  CategoryData gd;
  for (ObjectId o = 0; o < c.num_objects(); ++o) {
    gd.objects.push_back(c.object_name(o));
  }
  for (auto a : inv) {
    g_of.emplace(a, static_cast<ArrowId>(gd.arrows.size()));
    gd.arrows.push_back({c.name(a), c.dom(a), c.cod(a)});
  }
  for (ObjectId o = 0; o < c.num_objects(); ++o) {
    gd.identities.push_back(g_of.at(c.identity(o)));
  }
  for (auto a : inv) {
    for (auto [b, ab] : c.right_composites(a)) {
      if (g_of.count(b)) gd.composites.push_back({g_of[a], g_of[b], g_of[ab]});
    }
  }
  FinCategory grp = FinCategory::validate(std::move(gd));

  std::vector<ActionRow> rows;
  for (auto g : inv) {
    for (auto e : x) {
      if (!c.composable(g, e)) continue;
      ArrowId const ge = c.compose(g, e);
      std::vector<Factorization> hits;
      for (auto const& fz : c.factorizations(ge)) {
        if (is_x(fz.left) && g_of.count(fz.right)) hits.push_back(fz);
      }
      if (hits.size() != 1) {
        throw Error(ErrorKind::NonUniqueRepresentation,
                    c.name(g) + " * " + c.name(e) + " has " +
                        std::to_string(hits.size()) + " splittings in X G",
                    {c.name(g), c.name(e)});
      }
      if (size(hits[0].left) != size(e)) {
        throw Error(ErrorKind::ColorChanged,
                    c.name(g) + " . " + c.name(e) + " changes degree",
                    {c.name(g), c.name(e)});
      }
      rows.push_back({g_of[g], edge_of[e], edge_of[hits[0].left],
                      g_of[hits[0].right]});
    }
  }
  ZSAction action = ZSAction::validate(std::move(kg), std::move(grp), rows);

  std::vector<ProductArrow> theta;
  theta.reserve(c.num_arrows());
  for (ArrowId a = 0; a < c.num_arrows(); ++a) {
    auto const f = xg_factorize(c, size, x, a);
    std::vector<EdgeId> w;
    for (auto u : f.word) w.push_back(edge_of.at(u));
    theta.push_back(
        {action.kgraph().normalize(w, c.cod(a)), g_of.at(f.residue)});
  }
  return Decomposition{x, std::move(inv), std::move(action), bound,
                       std::move(theta)};
}

IsoReport verify_iso(FinCategory const& c, SizeFunctor const& size,
                     Decomposition const& d) {
  IsoReport r;
  auto const p = build_product(d.action, d.bound);
  r.arrows = c.num_arrows();
  auto fail = [&](std::string s) {
    r.holds = false;
    if (r.witnesses.size() < 16) r.witnesses.push_back(std::move(s));
  };

  std::vector<ArrowId> img(c.num_arrows(), kNoArrow);
  std::vector<ArrowId> pre(p.arrows.size(), kNoArrow);
  for (ArrowId a = 0; a < c.num_arrows(); ++a) {
    auto const i = p.find(d.theta[a]);
    if (!i) {
      fail("theta(" + c.name(a) + ") is outside the product window");
      continue;
    }
    img[a] = *i;
    if (pre[*i] != kNoArrow) {
      fail("theta(" + c.name(a) + ") = theta(" + c.name(pre[*i]) + ")");
    }
    pre[*i] = a;
    if (size(a) != p.size(*i)) {
      fail("degree of " + c.name(a) + " differs from " + p.category.name(*i));
    }
  }
  for (ArrowId i = 0; i < p.arrows.size(); ++i) {
    if (pre[i] == kNoArrow) fail(p.category.name(i) + " is not hit by theta");
  }
  if (!r.holds) return r;

  for (ArrowId a = 0; a < c.num_arrows(); ++a) {
    for (auto [b, ab] : c.right_composites(a)) {
      if (p.category.compose(img[a], img[b]) != img[ab]) {
        fail("theta(" + c.name(a) + " * " + c.name(b) + ") != theta(" +
             c.name(a) + ") theta(" + c.name(b) + ")");
      }
    }
  }
  for (ArrowId i = 0; i < p.arrows.size(); ++i) {
    for (auto [j, ij] : p.category.right_composites(i)) {
      if (c.compose(pre[i], pre[j]) != pre[ij]) {
        fail("inverse of theta breaks " + p.category.name(i) + " * " +
             p.category.name(j));
      }
    }
  }
  return r;
}

}  // namespace ghk
