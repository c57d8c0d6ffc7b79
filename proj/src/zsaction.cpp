#include "ghk/zsaction.hpp"

#include <map>
#include <set>

#include "ghk/error.hpp"

namespace ghk {

namespace {

constexpr EdgeId kNoEdge = static_cast<EdgeId>(-1);

// Dense (g, e) -> row lookup used during diagnosis, before the action is
// known to be consistent.
struct Tables {
  std::size_t n_edges = 0;
  std::vector<EdgeId> act;
  std::vector<ArrowId> rest;

  EdgeId act_at(ArrowId g, EdgeId e) const { return act[g * n_edges + e]; }
  ArrowId rest_at(ArrowId g, EdgeId e) const { return rest[g * n_edges + e]; }
};

std::string row_name(KGraph const& k, FinCategory const& g, ArrowId ga,
                     EdgeId e) {
  return "(" + g.name(ga) + ", " + k.edge(e).id + ")";
}

}  // namespace

std::vector<ActionFailure> diagnose_action(KGraph const& k,
                                           FinCategory const& g,
                                           std::vector<ActionRow> const& rows) {
  std::vector<ActionFailure> out;
  auto fail = [&](std::string axiom, std::string message,
                  std::vector<std::string> witness) {
    out.push_back({std::move(axiom), std::move(message), std::move(witness)});
  };

  bool same_objects = g.num_objects() == k.num_objects();
  for (ObjectId o = 0; same_objects && o < k.num_objects(); ++o) {
    same_objects = g.object_name(o) == k.object_name(o);
  }
  if (!same_objects) {
    fail("Structure", "groupoid and k-graph objects differ", {});
    return out;
  }
  for (ArrowId a = 0; a < g.num_arrows(); ++a) {
    if (!g.is_invertible(a)) {
      fail("Structure", g.name(a) + " is not invertible", {g.name(a)});
    }
  }
  if (!out.empty()) return out;

  std::size_t const nE = k.num_edges(), nG = g.num_arrows();
  Tables t{nE, std::vector<EdgeId>(nE * nG, kNoEdge),
           std::vector<ArrowId>(nE * nG, kNoArrow)};
  for (auto const& r : rows) {
    if (r.g >= nG || r.rest >= nG || r.e >= nE || r.ge >= nE) {
      fail("Structure", "row names an unknown arrow or edge", {});
      continue;
    }
    std::string const name = row_name(k, g, r.g, r.e);
    if (g.dom(r.g) != k.edge(r.e).cod) {
      fail("Structure", name + ": dom(g) != cod(e)",
           {g.name(r.g), k.edge(r.e).id});
      continue;
    }
    std::size_t const s = r.g * nE + r.e;
    if (t.act[s] != kNoEdge) {
      fail("Structure", name + " appears twice",
           {g.name(r.g), k.edge(r.e).id});
      continue;
    }
    t.act[s] = r.ge;
    t.rest[s] = r.rest;
  }
  for (ArrowId a = 0; a < nG; ++a) {
    for (EdgeId e = 0; e < nE; ++e) {
      if (g.dom(a) == k.edge(e).cod && t.act_at(a, e) == kNoEdge) {
        fail("Structure", "no row for " + row_name(k, g, a, e),
             {g.name(a), k.edge(e).id});
      }
    }
  }
  if (!out.empty()) return out;

  for (ArrowId a = 0; a < nG; ++a) {
    for (EdgeId e = 0; e < nE; ++e) {
      if (g.dom(a) != k.edge(e).cod) continue;
      EdgeId const ge = t.act_at(a, e);
      ArrowId const r = t.rest_at(a, e);
      std::string const name = row_name(k, g, a, e);
      std::vector<std::string> w{g.name(a), k.edge(e).id};
      if (k.edge(ge).cod != g.cod(a)) {
        fail("C1", name + ": cod(g.e) != cod(g)", w);
      }
      if (k.edge(ge).dom != g.cod(r)) {
        fail("C2", name + ": dom(g.e) != cod(g|e)", w);
      }
      if (k.edge(e).dom != g.dom(r)) {
        fail("C3", name + ": dom(e) != dom(g|e)", w);
      }
      if (k.edge(ge).color != k.edge(e).color) {
        fail("Color", name + ": g.e has a different colour", w);
      }
      if (g.is_identity(a)) {
        if (ge != e) fail("SS1", name + ": identity moves the edge", w);
        if (r != g.identity(k.edge(e).dom)) {
          fail("SS4", name + ": identity restricts to a non-identity", w);
        }
      }
    }
  }

  // Lookups below only follow composable chains; rows that broke C1-C3 have
  // already been reported and are skipped.
  auto act = [&](ArrowId a, EdgeId e) {
    return g.dom(a) == k.edge(e).cod ? t.act_at(a, e) : kNoEdge;
  };
  auto rest = [&](ArrowId a, EdgeId e) {
    return g.dom(a) == k.edge(e).cod ? t.rest_at(a, e) : kNoArrow;
  };

  for (ArrowId a = 0; a < nG; ++a) {
    for (auto [h, ah] : g.right_composites(a)) {
      for (EdgeId e = 0; e < nE; ++e) {
        if (k.edge(e).cod != g.dom(h)) continue;
        std::vector<std::string> w{g.name(a), g.name(h), k.edge(e).id};
        EdgeId const he = act(h, e);
        if (he == kNoEdge) continue;
        EdgeId const lhs = act(ah, e);
        EdgeId const rhs = act(a, he);
        if (rhs != kNoEdge && lhs != rhs) {
          fail("SS2", "(" + g.name(a) + g.name(h) + ")." + k.edge(e).id +
                          " != " + g.name(a) + ".(" + g.name(h) + "." +
                          k.edge(e).id + ")",
               w);
        }
        ArrowId const r1 = rest(a, he);
        ArrowId const r2 = rest(h, e);
        if (r1 == kNoArrow || r2 == kNoArrow || !g.composable(r1, r2)) {
          continue;
        }
        if (rest(ah, e) != g.compose(r1, r2)) {
          fail("SS7", "(" + g.name(a) + g.name(h) + ")|" + k.edge(e).id +
                          " != " + g.name(a) + "|(" + g.name(h) + "." +
                          k.edge(e).id + ") " + g.name(h) + "|" +
                          k.edge(e).id,
               w);
        }
      }
    }
  }

  for (auto const& sq : k.data().squares) {
    for (ArrowId a = 0; a < nG; ++a) {
      if (g.dom(a) != k.edge(sq.f).cod) continue;
      std::vector<std::string> w{g.name(a), k.edge(sq.f).id, k.edge(sq.e).id,
                                 k.edge(sq.e2).id, k.edge(sq.f2).id};
      // g.(f e) via the lhs word and via the rhs word of the square.
      auto route = [&](EdgeId first, EdgeId second)
          -> std::optional<std::pair<std::vector<EdgeId>, ArrowId>> {
        EdgeId const x = act(a, first);
        ArrowId const r = rest(a, first);
        if (x == kNoEdge || r == kNoArrow) return std::nullopt;
        EdgeId const y = act(r, second);
        ArrowId const rr = rest(r, second);
        if (y == kNoEdge || rr == kNoArrow) return std::nullopt;
        return std::pair{std::vector<EdgeId>{x, y}, rr};
      };
      auto lhs = route(sq.f, sq.e);
      auto rhs = route(sq.e2, sq.f2);
      if (!lhs || !rhs) continue;
      bool same = lhs->second == rhs->second;
      if (same) {
        try {
          same = k.normalize(lhs->first) == k.normalize(rhs->first);
        } catch (Error const&) {
          same = false;
        }
      }
      if (!same) {
        fail("Square",
             g.name(a) + " acting on " + k.edge(sq.f).id + "." +
                 k.edge(sq.e).id + " = " + k.edge(sq.e2).id + "." +
                 k.edge(sq.f2).id + " gives different results",
             w);
      }
    }
  }
  return out;
}

ZSAction ZSAction::validate(KGraph k, FinCategory groupoid,
                            std::vector<ActionRow> rows) {
  auto failures = diagnose_action(k, groupoid, rows);
  if (!failures.empty()) {
    auto const& f = failures.front();
    ErrorKind kind = ErrorKind::AxiomFailure;
    if (f.axiom == "Structure") kind = ErrorKind::InvalidDocument;
    if (f.axiom == "Color") kind = ErrorKind::ColorChanged;
    if (f.axiom == "Square") kind = ErrorKind::SquareIncompatible;
    throw Error(kind, f.axiom + ": " + f.message, f.witness);
  }
  ZSAction z(std::move(k), std::move(groupoid));
  std::size_t const nE = z.k_.num_edges(), nG = z.g_.num_arrows();
  z.act_.assign(nE * nG, kNoEdge);
  z.rest_.assign(nE * nG, kNoArrow);
  for (auto const& r : rows) {
    z.act_[r.g * nE + r.e] = r.ge;
    z.rest_[r.g * nE + r.e] = r.rest;
  }
  z.rows_ = std::move(rows);
  return z;
}

std::size_t ZSAction::slot(ArrowId g, EdgeId e) const {
  if (g_.dom(g) != k_.edge(e).cod) {
    throw Error(ErrorKind::NotComposable,
                g_.name(g) + " cannot act on " + k_.edge(e).id);
  }
  return g * k_.num_edges() + e;
}

EdgeId ZSAction::act_edge(ArrowId g, EdgeId e) const { return act_[slot(g, e)]; }

ArrowId ZSAction::restrict_edge(ArrowId g, EdgeId e) const {
  return rest_[slot(g, e)];
}

Path ZSAction::act(ArrowId g, Path const& p) const {
  if (g_.dom(g) != p.cod) {
    throw Error(ErrorKind::NotComposable,
                g_.name(g) + " cannot act on " + k_.path_name(p));
  }
  if (p.is_identity()) return k_.identity(g_.cod(g));
  std::vector<EdgeId> out;
  out.reserve(p.edges.size());
  ArrowId h = g;
  for (auto e : p.edges) {
    out.push_back(act_edge(h, e));
    h = restrict_edge(h, e);
  }
  return k_.normalize(out, g_.cod(g));
}

ArrowId ZSAction::restrict(ArrowId g, Path const& p) const {
  if (g_.dom(g) != p.cod) {
    throw Error(ErrorKind::NotComposable,
                g_.name(g) + " cannot restrict to " + k_.path_name(p));
  }
  ArrowId h = g;
  for (auto e : p.edges) h = restrict_edge(h, e);
  return h;
}

std::vector<PathLawCheck> check_path_laws(ZSAction const& a,
                                          Degree const& bound) {
  auto const& k = a.kgraph();
  auto const& g = a.groupoid();
  auto const paths = k.enumerate_paths(bound);
  std::vector<std::vector<std::size_t>> by_cod(k.num_objects());
  for (std::size_t i = 0; i < paths.size(); ++i) {
    by_cod[paths[i].cod].push_back(i);
  }

  PathLawCheck ss2{"SS2", 0, {}}, ss6{"SS6", 0, {}}, ss7{"SS7", 0, {}},
      ss8{"SS8", 0, {}};
  PathLawCheck inv{"inverse-restriction", 0, {}},
      deg{"degree-preserved", 0, {}}, bij{"bijective", 0, {}};
  auto name = [&](ArrowId x, Path const& p) {
    return g.name(x) + " on " + k.path_name(p);
  };

  for (ArrowId x = 0; x < g.num_arrows(); ++x) {
    std::set<Path> images;
    for (auto i : by_cod[g.dom(x)]) {
      Path const& p = paths[i];
      Path const xp = a.act(x, p);
      ArrowId const xr = a.restrict(x, p);

      ++deg.instances;
      if (xp.degree != p.degree) deg.violations.push_back(name(x, p));

      ++bij.instances;
      bool fresh = images.insert(xp).second;
      if (!fresh || a.act(g.inverse(x), xp) != p) {
        bij.violations.push_back(name(x, p));
      }

      ++inv.instances;
      // Instantiated at x.p, which runs over every path at r(x).
      ArrowId const xinv = g.inverse(x);
      if (a.restrict(xinv, xp) != g.inverse(a.restrict(x, a.act(xinv, xp)))) {
        inv.violations.push_back(name(x, p));
      }

      for (auto j : by_cod[p.dom]) {
        Path const& q = paths[j];
        if (!(p.degree + q.degree).leq(bound)) continue;
        Path const pq = k.compose(p, q);
        ++ss6.instances;
        if (a.restrict(x, pq) != a.restrict(xr, q)) {
          ss6.violations.push_back(name(x, p) + " then " + k.path_name(q));
        }
        ++ss8.instances;
        if (a.act(x, pq) != k.compose(xp, a.act(xr, q))) {
          ss8.violations.push_back(name(x, p) + " then " + k.path_name(q));
        }
      }
    }
    for (auto [h, xh] : g.right_composites(x)) {
      for (auto j : by_cod[g.dom(h)]) {
        Path const& q = paths[j];
        Path const hq = a.act(h, q);
        ++ss2.instances;
        if (a.act(xh, q) != a.act(x, hq)) {
          ss2.violations.push_back(g.name(x) + g.name(h) + " on " +
                                   k.path_name(q));
        }
        ++ss7.instances;
        if (a.restrict(xh, q) !=
            g.compose(a.restrict(x, hq), a.restrict(h, q))) {
          ss7.violations.push_back(g.name(x) + g.name(h) + " on " +
                                   k.path_name(q));
        }
      }
    }
  }
  return {ss2, ss6, ss7, ss8, inv, deg, bij};
}

}  // namespace ghk
