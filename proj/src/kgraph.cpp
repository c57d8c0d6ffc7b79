#include "ghk/kgraph.hpp"

#include <algorithm>
#include <set>

#include "ghk/error.hpp"

namespace ghk {

namespace {

std::string pair_name(SkeletonData const& d, EdgeId a, EdgeId b) {
  return d.edges[a].id + "." + d.edges[b].id;
}

}  // namespace

KGraph KGraph::validate(SkeletonData input) {
  KGraph g;
  g.data_ = std::move(input);
  auto const& data = g.data_;
  if (data.k == 0) throw Error(ErrorKind::InvalidDocument, "k must be >= 1");
  for (ObjectId o = 0; o < data.objects.size(); ++o) {
    if (!g.object_by_name_.emplace(data.objects[o], o).second) {
      throw Error(ErrorKind::InvalidDocument,
                  "duplicate object id '" + data.objects[o] + "'");
    }
  }
  for (EdgeId e = 0; e < data.edges.size(); ++e) {
    auto const& edge = data.edges[e];
    if (edge.color >= data.k) {
      throw Error(ErrorKind::InvalidDocument,
                  "edge '" + edge.id + "' has colour out of range");
    }
    if (edge.dom >= data.objects.size() || edge.cod >= data.objects.size()) {
      throw Error(ErrorKind::InvalidDocument,
                  "edge '" + edge.id + "' has a dangling endpoint");
    }
    if (g.object_by_name_.count(edge.id)) {
      throw Error(ErrorKind::InvalidDocument,
                  "edge id '" + edge.id + "' clashes with an object id");
    }
    if (!g.edge_by_name_.emplace(edge.id, e).second) {
      throw Error(ErrorKind::InvalidDocument,
                  "duplicate edge id '" + edge.id + "'");
    }
  }

  auto const& E = data.edges;
  for (auto const& s : data.squares) {
    if (std::max({s.f, s.e, s.e2, s.f2}) >= E.size()) {
      throw Error(ErrorKind::InvalidDocument, "square names unknown edge");
    }
    std::vector<std::string> w{E[s.f].id, E[s.e].id, E[s.e2].id, E[s.f2].id};
    std::size_t const i = E[s.e].color, j = E[s.f].color;
    if (!(i < j) || E[s.e2].color != i || E[s.f2].color != j) {
      throw Error(ErrorKind::InvalidDocument,
                  "square " + pair_name(data, s.f, s.e) + " = " +
                      pair_name(data, s.e2, s.f2) + " has wrong colours",
                  w);
    }
    if (E[s.f].dom != E[s.e].cod || E[s.e2].dom != E[s.f2].cod ||
        E[s.f].cod != E[s.e2].cod || E[s.e].dom != E[s.f2].dom) {
      throw Error(ErrorKind::EndpointMismatch,
                  "square " + pair_name(data, s.f, s.e) + " = " +
                      pair_name(data, s.e2, s.f2),
                  w);
    }
    if (!g.forward_.emplace(std::pair{s.f, s.e}, std::pair{s.e2, s.f2})
             .second) {
      throw Error(ErrorKind::NotBijective,
                  pair_name(data, s.f, s.e) + " has two squares", w);
    }
    if (!g.backward_.emplace(std::pair{s.e2, s.f2}, std::pair{s.f, s.e})
             .second) {
      throw Error(ErrorKind::NotBijective,
                  pair_name(data, s.e2, s.f2) + " has two squares", w);
    }
  }
  for (EdgeId x = 0; x < E.size(); ++x) {
    for (EdgeId y = 0; y < E.size(); ++y) {
      if (E[x].dom != E[y].cod || E[x].color == E[y].color) continue;
      auto const& map = E[x].color > E[y].color ? g.forward_ : g.backward_;
      if (!map.count({x, y})) {
        throw Error(ErrorKind::NotBijective,
                    "no square for " + pair_name(data, x, y),
                    {E[x].id, E[y].id});
      }
    }
  }
  if (data.k >= 3) {
    // Both reduced words of the longest permutation on three colours must
    // reach the same normal form.
    for (EdgeId x = 0; x < E.size(); ++x) {
      for (EdgeId y = 0; y < E.size(); ++y) {
        if (E[x].dom != E[y].cod || E[x].color <= E[y].color) continue;
        for (EdgeId z = 0; z < E.size(); ++z) {
          if (E[y].dom != E[z].cod || E[y].color <= E[z].color) continue;
          std::vector<EdgeId> a{x, y, z}, b{x, y, z};
          g.swap_adjacent(a, 0);
          g.swap_adjacent(a, 1);
          g.swap_adjacent(a, 0);
          g.swap_adjacent(b, 1);
          g.swap_adjacent(b, 0);
          g.swap_adjacent(b, 1);
          if (a != b) {
            throw Error(ErrorKind::CubeFailure,
                        "normal forms of " + E[x].id + "." + E[y].id + "." +
                            E[z].id + " disagree",
                        {E[x].id, E[y].id, E[z].id});
          }
        }
      }
    }
  }
  return g;
}

std::optional<EdgeId> KGraph::find_edge(std::string const& id) const {
  auto it = edge_by_name_.find(id);
  if (it == edge_by_name_.end()) return std::nullopt;
  return it->second;
}

std::optional<ObjectId> KGraph::find_object(std::string const& id) const {
  auto it = object_by_name_.find(id);
  if (it == object_by_name_.end()) return std::nullopt;
  return it->second;
}

Path KGraph::identity(ObjectId o) const {
  return Path{o, o, {}, Degree::zero(rank())};
}

void KGraph::swap_adjacent(std::vector<EdgeId>& edges, std::size_t i) const {
  std::pair<EdgeId, EdgeId> const key{edges[i], edges[i + 1]};
  std::size_t const ci = edge(key.first).color, cj = edge(key.second).color;
  auto const& map = ci > cj ? forward_ : backward_;
  auto it = map.find(key);
  if (ci == cj || it == map.end()) {
    throw Error(ErrorKind::NotBijective,
                "no square applies to " + pair_name(data_, key.first,
                                                    key.second));
  }
  edges[i] = it->second.first;
  edges[i + 1] = it->second.second;
}

Path KGraph::normalize(std::span<EdgeId const> edges,
                       std::optional<ObjectId> at) const {
  if (edges.empty()) {
    if (!at) {
      throw Error(ErrorKind::NotComposable, "empty path without an object");
    }
    return identity(*at);
  }
  for (auto e : edges) {
    if (e >= num_edges()) {
      throw Error(ErrorKind::InvalidDocument, "unknown edge index");
    }
  }
  for (std::size_t t = 0; t + 1 < edges.size(); ++t) {
    if (edge(edges[t]).dom != edge(edges[t + 1]).cod) {
      throw Error(ErrorKind::NotComposable,
                  pair_name(data_, edges[t], edges[t + 1]) +
                      " is not a composable chain",
                  {edge(edges[t]).id, edge(edges[t + 1]).id});
    }
  }
  if (at && *at != edge(edges.front()).cod) {
    throw Error(ErrorKind::NotComposable, "path does not start at object");
  }
  std::vector<EdgeId> w(edges.begin(), edges.end());
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t t = 0; t + 1 < w.size(); ++t) {
      if (edge(w[t]).color > edge(w[t + 1]).color) {
        swap_adjacent(w, t);
        changed = true;
        break;
      }
    }
  }
  Path p{edge(w.front()).cod, edge(w.back()).dom, std::move(w),
         Degree::zero(rank())};
  for (auto e : p.edges) ++p.degree[edge(e).color];
  return p;
}

Path KGraph::compose(Path const& p, Path const& q) const {
  if (p.dom != q.cod) {
    throw Error(ErrorKind::NotComposable,
                path_name(p) + " * " + path_name(q) + ": dom != cod");
  }
  std::vector<EdgeId> w = p.edges;
  w.insert(w.end(), q.edges.begin(), q.edges.end());
  return normalize(w, p.cod);
}

std::pair<Path, Path> KGraph::factor(Path const& p, Degree const& m) const {
  if (m.rank() != rank() || !m.leq(p.degree)) {
    throw Error(ErrorKind::BadSplit,
                m.to_string() + " is not below " + p.degree.to_string());
  }
  Degree const n = p.degree - m;
  std::vector<std::size_t> target;
  for (auto const* part : {&m, &n}) {
    for (std::size_t c = 0; c < rank(); ++c) {
      target.insert(target.end(), (*part)[c], c);
    }
  }
  // Walk the normal form into the colour order demanded by the split, one
  // square (or inverse square) at a time.
  std::vector<EdgeId> w = p.edges;
  for (std::size_t t = 0; t < w.size(); ++t) {
    std::size_t s = t;
    while (edge(w[s]).color != target[t]) ++s;
    for (; s > t; --s) swap_adjacent(w, s - 1);
  }
  std::size_t const cut = m.total();
  std::vector<EdgeId> left(w.begin(), w.begin() + cut);
  std::vector<EdgeId> right(w.begin() + cut, w.end());
  Path p1 = normalize(left, p.cod);
  Path p2 = normalize(right, p1.dom);
  if (compose(p1, p2) != p) {
    throw Error(ErrorKind::LemmaViolation,
                "factor of " + path_name(p) + " does not recompose");
  }
  return {std::move(p1), std::move(p2)};
}

std::vector<Path> KGraph::enumerate_paths(Degree const& bound) const {
  if (bound.rank() != rank()) {
    throw Error(ErrorKind::BoundTooSmall,
                "bound " + bound.to_string() + " has the wrong rank");
  }
  std::vector<Path> out;
  std::vector<Path> stack;
  for (ObjectId o = 0; o < num_objects(); ++o) stack.push_back(identity(o));
  while (!stack.empty()) {
    Path p = std::move(stack.back());
    stack.pop_back();
    std::size_t const min_color =
        p.edges.empty() ? 0 : edge(p.edges.back()).color;
    for (EdgeId e = 0; e < num_edges(); ++e) {
      auto const& ed = edge(e);
      if (ed.cod != p.dom || ed.color < min_color) continue;
      if (p.degree[ed.color] + 1 > bound[ed.color]) continue;
      Path q = p;
      q.edges.push_back(e);
      q.dom = ed.dom;
      ++q.degree[ed.color];
      stack.push_back(std::move(q));
    }
    out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end(), [](Path const& a, Path const& b) {
    return std::tie(a.degree, a.cod, a.edges, a.dom) <
           std::tie(b.degree, b.cod, b.edges, b.dom);
  });
  return out;
}

std::string KGraph::path_name(Path const& p) const {
  if (p.edges.empty()) return object_name(p.cod);
  std::string s;
  for (auto e : p.edges) {
    if (!s.empty()) s += ".";
    s += edge(e).id;
  }
  return s;
}

PathCategory path_category(KGraph const& k, Degree const& bound) {
  auto paths = k.enumerate_paths(bound);
  std::map<Path, ArrowId> index;
  CategoryData d;
  d.objects = k.data().objects;
  d.identities.assign(k.num_objects(), kNoArrow);
  std::vector<std::vector<ArrowId>> by_cod(k.num_objects());
  for (ArrowId i = 0; i < paths.size(); ++i) {
    auto const& p = paths[i];
    index.emplace(p, i);
    d.arrows.push_back({k.path_name(p), p.dom, p.cod});
    if (p.is_identity()) d.identities[p.cod] = i;
    by_cod[p.cod].push_back(i);
  }
  for (ArrowId i = 0; i < paths.size(); ++i) {
    for (ArrowId j : by_cod[paths[i].dom]) {
      if (!(paths[i].degree + paths[j].degree).leq(bound)) continue;
      d.composites.push_back({i, j, index.at(k.compose(paths[i], paths[j]))});
    }
  }
  d.bound = bound;
  auto category = FinCategory::validate(std::move(d));
  std::vector<Degree> deg;
  for (auto const& p : paths) deg.push_back(p.degree);
  auto size = SizeFunctor::validate(category, std::move(deg), k.rank());
  return {std::move(paths), std::move(category), std::move(size)};
}

}  // namespace ghk
