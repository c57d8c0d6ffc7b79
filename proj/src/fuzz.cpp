#include "ghk/fuzz.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

#include "ghk/decompose.hpp"
#include "ghk/error.hpp"
#include "ghk/product.hpp"

namespace ghk {

void GenParams::check() const {
  auto bad = [](std::string const& m) {
    throw Error(ErrorKind::InvalidDocument, "fuzz parameters: " + m);
  };
  if (max_objects < 1 || max_objects > 3) bad("max objects must be 1..3");
  if (k < 1 || k > 3) bad("k must be 1..3");
  if (groupoid_budget < max_objects) {
    bad("groupoid budget must cover the identities");
  }
  if (bound.rank() != 0 && bound.rank() != k) bad("bound must have k entries");
}

namespace {

// Skeletons are built from two kinds of colour: copies of one shared base
// graph, or a fixed number of loops at every vertex. The canonical squares
// (swap the colours of two base edges in place; slide a loop past anything)
// make this a pullback of a 1-graph along the sum map times bouquets, so the
// cube condition holds for every k.
struct Shape {
  std::size_t nv = 1;
  std::vector<bool> base_color;
  std::vector<std::size_t> loops;
  std::vector<std::pair<ObjectId, ObjectId>> base;  // (dom, cod)
  SkeletonData sk;
  // per edge: (is_loop, label, vertex for loops)
  std::vector<std::tuple<bool, std::size_t, ObjectId>> label;
  std::map<std::tuple<std::size_t, bool, std::size_t, ObjectId>, EdgeId> id;
  bool canonical = true;

  EdgeId base_edge(std::size_t c, std::size_t b) const {
    return id.at({c, false, b, 0});
  }
  EdgeId loop_edge(std::size_t c, std::size_t l, ObjectId v) const {
    return id.at({c, true, l, v});
  }
};

template <class T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.pick(i)]);
}

void add_squares(Shape& s, Rng& rng, bool allow_random) {
  auto& sk = s.sk;
  auto const& E = sk.edges;
  std::vector<Square> canon;
  for (EdgeId f = 0; f < E.size(); ++f) {
    for (EdgeId e = 0; e < E.size(); ++e) {
      if (E[f].dom != E[e].cod || E[f].color <= E[e].color) continue;
      auto const j = E[f].color, i = E[e].color;
      auto const [fl, flab, fv] = s.label[f];
      auto const [el, elab, ev] = s.label[e];
      Square q{f, e, 0, 0};
      if (!fl && !el) {
        q.e2 = s.base_edge(i, flab);
        q.f2 = s.base_edge(j, elab);
      } else if (fl) {
        q.e2 = e;
        q.f2 = s.loop_edge(j, flab, E[e].dom);
      } else {
        q.e2 = s.loop_edge(i, elab, E[f].cod);
        q.f2 = f;
      }
      canon.push_back(q);
    }
  }
  sk.squares = canon;
  if (!allow_random || sk.k < 2 || !rng.coin()) return;

  // Any bijection per (colour pair, endpoints) group is a valid 2-graph; for
  // k = 3 the result must also pass the cube check.
  std::map<std::tuple<std::size_t, std::size_t, ObjectId, ObjectId>,
           std::vector<std::size_t>>
      groups;
  for (std::size_t t = 0; t < canon.size(); ++t) {
    auto const& q = canon[t];
    groups[{E[q.f].color, E[q.e].color, E[q.f].cod, E[q.e].dom}].push_back(t);
  }
  auto rnd = canon;
  for (auto& [_, members] : groups) {
    auto rhs = members;
    shuffle(rhs, rng);
    for (std::size_t t = 0; t < members.size(); ++t) {
      rnd[members[t]].e2 = canon[rhs[t]].e2;
      rnd[members[t]].f2 = canon[rhs[t]].f2;
    }
  }
  SkeletonData trial = sk;
  trial.squares = rnd;
  try {
    KGraph::validate(trial);
    sk.squares = std::move(rnd);
    s.canonical = false;
  } catch (Error const&) {
  }
}

void add_edge(Shape& s, std::size_t c, bool loop, std::size_t lab, ObjectId v,
              ObjectId dom, ObjectId cod) {
  auto const e = static_cast<EdgeId>(s.sk.edges.size());
  std::string name(1, static_cast<char>('a' + c));
  name += std::to_string(std::count_if(
      s.sk.edges.begin(), s.sk.edges.end(),
      [&](Edge const& x) { return x.color == c; }));
  s.sk.edges.push_back({name, c, dom, cod});
  s.label.emplace_back(loop, lab, v);
  s.id.emplace(std::tuple{c, loop, lab, loop ? v : ObjectId{0}}, e);
}

Shape make_shape(GenParams const& p, Rng& rng, std::size_t nv,
                 bool complete, std::size_t mult, bool allow_random) {
  Shape s;
  s.nv = nv;
  s.sk.k = p.k;
  for (ObjectId v = 0; v < nv; ++v) s.sk.objects.push_back("v" + std::to_string(v));
  std::size_t const me = p.max_edges_per_color;
  s.base_color.assign(p.k, true);
  s.loops.assign(p.k, 0);
  if (complete) {
    for (std::size_t l = 0; l < mult; ++l) {
      for (ObjectId u = 0; u < nv; ++u) {
        for (ObjectId w = 0; w < nv; ++w) s.base.push_back({w, u});
      }
    }
  } else {
    for (std::size_t c = 0; c < p.k; ++c) {
      if (rng.coin()) {
        s.base_color[c] = false;
        s.loops[c] = me / nv == 0 ? 0 : 1 + rng.pick(me / nv);
      }
    }
    // Half the time the base edges come from a small pool of endpoint pairs,
    // so that parallel edges (and hence non-trivial automorphisms) are common.
    std::size_t const m = me == 0 ? 0 : 1 + rng.pick(me);
    std::size_t const pool = rng.coin() ? 1 + rng.pick(2) : m;
    std::vector<std::pair<ObjectId, ObjectId>> ends;
    for (std::size_t b = 0; b < pool; ++b) {
      ends.push_back({static_cast<ObjectId>(rng.pick(nv)),
                      static_cast<ObjectId>(rng.pick(nv))});
    }
    for (std::size_t b = 0; b < m; ++b) s.base.push_back(ends[rng.pick(pool)]);
  }
  for (std::size_t c = 0; c < p.k; ++c) {
    if (s.base_color[c]) {
      for (std::size_t b = 0; b < s.base.size(); ++b) {
        add_edge(s, c, false, b, 0, s.base[b].first, s.base[b].second);
      }
    } else {
      for (ObjectId v = 0; v < nv; ++v) {
        for (std::size_t l = 0; l < s.loops[c]; ++l) add_edge(s, c, true, l, v, v, v);
      }
    }
  }
  add_squares(s, rng, allow_random);
  return s;
}

// A permutation of [0, n) whose order divides `order`, built from cycles
// of length `order` inside each block of `blocks`.
std::vector<std::size_t> perm_of_order(std::vector<std::vector<std::size_t>> blocks,
                                       std::size_t n, std::size_t order, Rng& rng) {
  std::vector<std::size_t> pi(n);
  std::iota(pi.begin(), pi.end(), 0);
  if (order <= 1) return pi;
  for (auto& block : blocks) {
    shuffle(block, rng);
    std::size_t t = 0;
    while (t + order <= block.size()) {
      if (rng.pick(4) != 0) {
        for (std::size_t r = 0; r < order; ++r) {
          pi[block[t + r]] = block[t + (r + 1) % order];
        }
        t += order;
      } else {
        ++t;
      }
    }
  }
  return pi;
}

struct Groupoid {
  std::size_t n = 1;
  bool transitive = false;
  std::size_t nv = 1;
  CategoryData data;
  std::map<std::tuple<ObjectId, ObjectId, std::size_t>, ArrowId> id;

  ArrowId at(ObjectId u, ObjectId v, std::size_t t) const {
    return id.at({u, v, t % n});
  }
};

// Pair groupoid (transitive) or bundle of groups over the vertices, times
// Z/n. Arrow (u, v, t) goes v -> u.
Groupoid make_groupoid(std::vector<std::string> const& objects, bool transitive,
                       std::size_t n) {
  Groupoid g;
  g.n = n;
  g.transitive = transitive;
  g.nv = objects.size();
  g.data.objects = objects;
  for (ObjectId u = 0; u < g.nv; ++u) {
    for (ObjectId v = 0; v < g.nv; ++v) {
      if (!transitive && u != v) continue;
      for (std::size_t t = 0; t < n; ++t) {
        std::string name = "g" + std::to_string(u);
        if (transitive) name += std::to_string(v);
        name += "_" + std::to_string(t);
        g.id.emplace(std::tuple{u, v, t}, static_cast<ArrowId>(g.data.arrows.size()));
        g.data.arrows.push_back({name, v, u});
      }
    }
  }
  for (ObjectId v = 0; v < g.nv; ++v) g.data.identities.push_back(g.at(v, v, 0));
  for (auto const& [a, ia] : g.id) {
    for (auto const& [b, ib] : g.id) {
      auto const [u, v, t] = a;
      auto const [v2, w, s] = b;
      if (v != v2) continue;
      g.data.composites.push_back({ia, ib, g.at(u, w, t + s)});
    }
  }
  return g;
}

Json category_json(CategoryData const& d) {
  Json doc;
  doc["objects"] = d.objects;
  doc["arrows"] = Json::array();
  for (auto const& a : d.arrows) {
    doc["arrows"].push_back(
        {{"id", a.id}, {"dom", d.objects[a.dom]}, {"cod", d.objects[a.cod]}});
  }
  doc["identities"] = Json::object();
  for (ObjectId o = 0; o < d.objects.size(); ++o) {
    doc["identities"][d.objects[o]] = d.arrows[d.identities[o]].id;
  }
  doc["compose"] = Json::array();
  for (auto const& [f, g, fg] : d.composites) {
    doc["compose"].push_back({d.arrows[f].id, d.arrows[g].id, d.arrows[fg].id});
  }
  return doc;
}

Json action_json(Shape const& s, Groupoid const& g,
                 std::vector<ActionRow> const& rows) {
  Json doc;
  doc["kgraph"] = to_json(s.sk);
  doc["groupoid"] = category_json(g.data);
  doc["on_edges"] = Json::array();
  for (auto const& r : rows) {
    doc["on_edges"].push_back({{"g", g.data.arrows[r.g].id},
                               {"e", s.sk.edges[r.e].id},
                               {"ge", s.sk.edges[r.ge].id},
                               {"rest", g.data.arrows[r.rest].id}});
  }
  return doc;
}

// Vertex-fixing bundle of Z/n acting through a colour- and square-preserving
// automorphism rho with rho^n = 1, restriction g|e = g at d(e).
std::vector<ActionRow> bundle_rows(Shape const& s, Groupoid const& g, Rng& rng) {
  auto const& E = s.sk.edges;
  std::vector<EdgeId> rho(E.size());
  std::iota(rho.begin(), rho.end(), 0);
  if (s.canonical) {
    std::map<std::pair<ObjectId, ObjectId>, std::vector<std::size_t>> par;
    for (std::size_t b = 0; b < s.base.size(); ++b) par[s.base[b]].push_back(b);
    std::vector<std::vector<std::size_t>> blocks;
    for (auto& [_, v] : par) blocks.push_back(v);
    auto const pi = perm_of_order(blocks, s.base.size(), g.n, rng);
    std::vector<std::vector<std::size_t>> tau(s.sk.k);
    for (std::size_t c = 0; c < s.sk.k; ++c) {
      std::vector<std::size_t> all(s.loops[c]);
      std::iota(all.begin(), all.end(), 0);
      tau[c] = perm_of_order({all}, s.loops[c], g.n, rng);
    }
    for (EdgeId e = 0; e < E.size(); ++e) {
      auto const [loop, lab, v] = s.label[e];
      rho[e] = loop ? s.loop_edge(E[e].color, tau[E[e].color][lab], v)
                    : s.base_edge(E[e].color, pi[lab]);
    }
  }
  std::vector<ActionRow> rows;
  for (ObjectId v = 0; v < g.nv; ++v) {
    for (std::size_t t = 0; t < g.n; ++t) {
      for (EdgeId e = 0; e < E.size(); ++e) {
        if (E[e].cod != v) continue;
        EdgeId x = e;
        for (std::size_t r = 0; r < t; ++r) x = rho[x];
        rows.push_back({g.at(v, v, t), e, x, g.at(E[e].dom, E[e].dom, t)});
      }
    }
  }
  return rows;
}

// Pair groupoid times Z/n on the complete multigraph: (u, v, t) moves the
// edge (v <- w, label l) to (u <- w, pi^t l) and restricts to (w, w, t).
std::vector<ActionRow> transitive_rows(Shape const& s, Groupoid const& g,
                                       std::size_t mult, Rng& rng) {
  std::vector<std::size_t> all(mult);
  std::iota(all.begin(), all.end(), 0);
  auto const pi = perm_of_order({all}, mult, g.n, rng);
  auto const nv = s.nv;
  auto index = [&](std::size_t l, ObjectId u, ObjectId w) {
    return (l * nv + u) * nv + w;
  };
  auto const& E = s.sk.edges;
  std::vector<ActionRow> rows;
  for (ObjectId u = 0; u < nv; ++u) {
    for (ObjectId v = 0; v < nv; ++v) {
      for (std::size_t t = 0; t < g.n; ++t) {
        for (EdgeId e = 0; e < E.size(); ++e) {
          if (E[e].cod != v) continue;
          auto const [loop, b, _] = s.label[e];
          std::size_t const l = b / (nv * nv);
          ObjectId const w = E[e].dom;
          std::size_t lt = l;
          for (std::size_t r = 0; r < t; ++r) lt = pi[lt];
          rows.push_back({g.at(u, v, t), e,
                          s.base_edge(E[e].color, index(lt, u, w)),
                          g.at(w, w, t)});
        }
      }
    }
  }
  return rows;
}

std::size_t largest_n(std::size_t budget, std::size_t per, Rng& rng) {
  std::size_t n = 1 + rng.pick(3);
  while (n > 1 && per * n > budget) --n;
  return n;
}

}  // namespace

SkeletonData gen_skeleton(GenParams const& p) {
  p.check();
  Rng rng(p.seed * 0x9E3779B97F4A7C15ull + p.k);
  std::size_t const nv = 1 + rng.pick(p.max_objects);
  return make_shape(p, rng, nv, false, 0, true).sk;
}

Json gen_action(GenParams const& p) {
  p.check();
  Rng rng(p.seed * 0x9E3779B97F4A7C15ull + 0x51ED27ull * p.k + 1);
  std::size_t const mode = rng.pick(4);
  std::size_t nv = 1 + rng.pick(p.max_objects);

  if (mode == 3) {
    // Transitive groupoid on a complete multigraph.
    std::size_t const me = p.max_edges_per_color;
    while (nv > 1 && (nv * nv > p.groupoid_budget || (me > 0 && nv * nv > me))) {
      --nv;
    }
    std::size_t const mult = me == 0 ? 0 : 1 + rng.pick(std::max<std::size_t>(1, me / (nv * nv)));
    Shape s = make_shape(p, rng, nv, true, std::min(mult, me / (nv * nv)), false);
    Groupoid g = make_groupoid(s.sk.objects, true,
                               largest_n(p.groupoid_budget, nv * nv, rng));
    auto rows = transitive_rows(s, g, std::min(mult, me / (nv * nv)), rng);
    return action_json(s, g, rows);
  }

  Shape s = make_shape(p, rng, nv, false, 0, true);
  std::size_t const n = mode == 1 ? 1 : largest_n(p.groupoid_budget, nv, rng);
  Groupoid g = make_groupoid(s.sk.objects, false, n);
  auto rows = bundle_rows(s, g, rng);
  if (mode == 0 && !rows.empty()) {
    // Random tables: overwrite a few entries.
    std::size_t const hits = 1 + rng.pick(2);
    for (std::size_t h = 0; h < hits; ++h) {
      auto& r = rows[rng.pick(rows.size())];
      if (rng.coin()) {
        r.ge = static_cast<EdgeId>(rng.pick(s.sk.edges.size()));
      } else {
        r.rest = static_cast<ArrowId>(rng.pick(g.data.arrows.size()));
      }
    }
  }
  return action_json(s, g, rows);
}

std::vector<ActionFailure> diagnose(Json const& doc) {
  try {
    auto parts = parse_action(doc);
    return diagnose_action(parts.kgraph, parts.groupoid, parts.rows);
  } catch (Error const& e) {
    return {{std::string(to_string(e.kind())), e.what(), e.witness()}};
  }
}

bool fails_with(Json const& doc, std::string const& tag) {
  for (auto const& f : diagnose(doc)) {
    if (f.axiom == tag) return true;
  }
  return false;
}

namespace {

template <class Pred>
void erase_if(Json& arr, Pred pred) {
  Json out = Json::array();
  for (auto const& x : arr) {
    if (!pred(x)) out.push_back(x);
  }
  arr = std::move(out);
}

bool mentions(Json const& row, std::set<std::string> const& ids,
              std::initializer_list<char const*> keys) {
  for (auto const* k : keys) {
    if (row.contains(k) && row.at(k).is_string() &&
        ids.count(row.at(k).get<std::string>())) {
      return true;
    }
  }
  return false;
}

bool any_string_in(Json const& arr, std::set<std::string> const& ids) {
  for (auto const& x : arr) {
    if (x.is_string() && ids.count(x.get<std::string>())) return true;
  }
  return false;
}

std::vector<Json> removals(Json const& doc) {
  std::vector<Json> out;
  if (!doc.is_object() || !doc.contains("kgraph") || !doc.contains("groupoid") ||
      !doc.contains("on_edges")) {
    return out;
  }
  auto const& kg = doc["kgraph"];
  auto const& gr = doc["groupoid"];

  if (kg.contains("edges")) {
    for (auto const& e : kg["edges"]) {
      std::set<std::string> const id{e.value("id", "")};
      Json d = doc;
      erase_if(d["kgraph"]["edges"],
               [&](Json const& x) { return x.value("id", "") == *id.begin(); });
      if (d["kgraph"].contains("squares")) {
        erase_if(d["kgraph"]["squares"], [&](Json const& s) {
          return any_string_in(s.value("lhs", Json::array()), id) ||
                 any_string_in(s.value("rhs", Json::array()), id);
        });
      }
      erase_if(d["on_edges"],
               [&](Json const& r) { return mentions(r, id, {"e", "ge"}); });
      out.push_back(std::move(d));
    }
  }

  std::set<std::string> identities;
  if (gr.contains("identities") && gr["identities"].is_object()) {
    for (auto const& [_, a] : gr["identities"].items()) {
      if (a.is_string()) identities.insert(a.get<std::string>());
    }
  }
  if (gr.contains("arrows")) {
    for (auto const& a : gr["arrows"]) {
      std::string const name = a.value("id", "");
      if (identities.count(name)) continue;
      std::set<std::string> ids{name};
      for (auto const& t : gr.value("compose", Json::array())) {
        if (t.is_array() && t.size() == 3 && t[0] == name && t[2].is_string() &&
            identities.count(t[2].get<std::string>()) && t[1].is_string()) {
          ids.insert(t[1].get<std::string>());
        }
      }
      Json d = doc;
      erase_if(d["groupoid"]["arrows"],
               [&](Json const& x) { return ids.count(x.value("id", "")) > 0; });
      erase_if(d["groupoid"]["compose"],
               [&](Json const& t) { return any_string_in(t, ids); });
      if (d["groupoid"].contains("inverses")) {
        erase_if(d["groupoid"]["inverses"],
                 [&](Json const& t) { return any_string_in(t, ids); });
      }
      erase_if(d["on_edges"],
               [&](Json const& r) { return mentions(r, ids, {"g", "rest"}); });
      out.push_back(std::move(d));
    }
  }

  for (std::size_t i = 0; i < doc["on_edges"].size(); ++i) {
    Json d = doc;
    d["on_edges"].erase(i);
    out.push_back(std::move(d));
  }
  if (kg.contains("squares")) {
    for (std::size_t i = 0; i < kg["squares"].size(); ++i) {
      Json d = doc;
      d["kgraph"]["squares"].erase(i);
      out.push_back(std::move(d));
    }
  }

  if (kg.contains("objects")) {
    for (auto const& o : kg["objects"]) {
      if (!o.is_string()) continue;
      std::string const name = o.get<std::string>();
      bool used = false;
      for (auto const& e : kg.value("edges", Json::array())) {
        if (e.value("dom", "") == name || e.value("cod", "") == name) used = true;
      }
      std::string ident;
      if (gr.contains("identities") && gr["identities"].contains(name) &&
          gr["identities"][name].is_string()) {
        ident = gr["identities"][name].get<std::string>();
      }
      for (auto const& a : gr.value("arrows", Json::array())) {
        if (a.value("id", "") == ident) continue;
        if (a.value("dom", "") == name || a.value("cod", "") == name) used = true;
      }
      if (used) continue;
      std::set<std::string> const ids{ident};
      Json d = doc;
      erase_if(d["kgraph"]["objects"], [&](Json const& x) { return x == name; });
      erase_if(d["groupoid"]["objects"], [&](Json const& x) { return x == name; });
      if (d["groupoid"].contains("identities")) d["groupoid"]["identities"].erase(name);
      erase_if(d["groupoid"]["arrows"],
               [&](Json const& x) { return x.value("id", "") == ident; });
      erase_if(d["groupoid"]["compose"],
               [&](Json const& t) { return any_string_in(t, ids); });
      if (d["groupoid"].contains("inverses")) {
        erase_if(d["groupoid"]["inverses"],
                 [&](Json const& t) { return any_string_in(t, ids); });
      }
      erase_if(d["on_edges"],
               [&](Json const& r) { return mentions(r, ids, {"g", "rest"}); });
      out.push_back(std::move(d));
    }
  }
  return out;
}

}  // namespace

Json shrink(Json doc, std::string const& tag) {
  if (!fails_with(doc, tag)) {
    throw Error(ErrorKind::NotFailing, "candidate does not fail " + tag);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& cand : removals(doc)) {
      if (fails_with(cand, tag)) {
        doc = std::move(cand);
        changed = true;
        break;
      }
    }
  }
  return doc;
}

SeedOutcome run_candidate(Json const& doc, std::optional<Degree> path_bound,
                          std::optional<Degree> product_bound) {
  SeedOutcome out;
  out.failures = diagnose(doc);
  out.valid = out.failures.empty();
  if (!out.valid) return out;
  ZSAction const a = load_action(doc);

  if (path_bound) {
    for (auto const& c : check_path_laws(a, *path_bound)) {
      if (c.holds()) continue;
      out.path_laws = false;
      out.problems.push_back(c.law + ": " + c.violations.front());
    }
  }
  if (product_bound) {
    std::optional<Product> p;
    try {
      p = build_product(a, *product_bound);
    } catch (Error const& e) {
      out.product_laws = out.roundtrip = false;
      out.problems.push_back(std::string("product: ") + e.what());
      return out;
    }
    out.product_arrows = p->arrows.size();
    auto const laws = verify_product_laws(*p);
    if (!laws.all_hold()) {
      out.product_laws = false;
      std::string m = "product laws:";
      if (!laws.category_valid || !laws.size_functor_valid) m += " " + laws.category_error;
      if (!laws.wfp.holds) m += " wfp";
      if (!laws.r_condition.holds) m += " r-condition";
      if (!laws.left_cancellative.holds) m += " left-cancellation";
      out.problems.push_back(m);
    }
    try {
      auto const d = decompose(p->category, p->size);
      auto const iso = verify_iso(p->category, p->size, d);
      if (!iso.holds || iso.arrows != p->arrows.size()) {
        out.roundtrip = false;
        out.problems.push_back(
            "round trip: " +
            (iso.witnesses.empty() ? std::string("arrow count") : iso.witnesses.front()));
      }
    } catch (Error const& e) {
      out.roundtrip = false;
      out.problems.push_back(std::string("round trip: ") + e.what());
    }
  }
  return out;
}

}  // namespace ghk
