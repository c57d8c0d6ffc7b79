#include "ghk/json_io.hpp"

#include <map>
#include <set>

#include "ghk/error.hpp"

namespace ghk {

namespace {

[[noreturn]] void bad(std::string const& msg) {
  throw Error(ErrorKind::InvalidDocument, msg);
}

Json const& need(Json const& doc, char const* key) {
  if (!doc.is_object() || !doc.contains(key)) {
    bad(std::string("missing key '") + key + "'");
  }
  return doc.at(key);
}

std::string str(Json const& j, char const* what) {
  if (!j.is_string()) bad(std::string(what) + " must be a string");
  return j.get<std::string>();
}

void allow_keys(Json const& doc, std::set<std::string> const& keys,
                char const* what) {
  if (!doc.is_object()) bad(std::string(what) + " must be an object");
  for (auto const& [key, _] : doc.items()) {
    if (!keys.count(key)) {
      bad("unknown key '" + key + "' in " + what);
    }
  }
}

// Non-negative integers arrive as unsigned from text but as signed when a
// document is built in code.
bool is_count(Json const& j) {
  return j.is_number_unsigned() ||
         (j.is_number_integer() && j.get<long long>() >= 0);
}

template <class Map>
auto lookup(Map const& m, std::string const& id, char const* what) {
  auto it = m.find(id);
  if (it == m.end()) bad(std::string("unknown ") + what + " '" + id + "'");
  return it->second;
}

}  // namespace

Json degree_json(Degree const& d) { return Json(d.components()); }

Degree parse_degree(Json const& j, std::size_t k) {
  if (!j.is_array() || j.size() != k) {
    bad("degree must be an array of " + std::to_string(k) + " integers");
  }
  std::vector<Degree::value_type> v;
  for (auto const& x : j) {
    if (!is_count(x)) {
      bad("degree entries must be non-negative integers");
    }
    auto const n = x.get<unsigned long long>();
    if (n > std::numeric_limits<Degree::value_type>::max()) {
      bad("degree entry out of range");
    }
    v.push_back(static_cast<Degree::value_type>(n));
  }
  return Degree(std::move(v));
}

DocKind detect_kind(Json const& doc) {
  if (!doc.is_object()) bad("document must be a JSON object");
  if (doc.contains("on_edges")) return DocKind::Action;
  if (!doc.contains("arrows") && (doc.contains("squares") || doc.contains("edges"))) {
    return DocKind::Skeleton;
  }
  return DocKind::Category;
}

CategoryDoc parse_category(Json const& doc) {
  allow_keys(doc,
             {"objects", "arrows", "identities", "compose", "inverses", "size",
              "bound", "embeddings"},
             "category document");
  CategoryDoc out;
  auto& d = out.data;
  std::map<std::string, ObjectId> obj;
  for (auto const& o : need(doc, "objects")) {
    auto id = str(o, "object id");
    if (!obj.emplace(id, static_cast<ObjectId>(d.objects.size())).second) {
      bad("duplicate object id '" + id + "'");
    }
    d.objects.push_back(std::move(id));
  }
  std::map<std::string, ArrowId> arr;
  for (auto const& a : need(doc, "arrows")) {
    allow_keys(a, {"id", "dom", "cod"}, "arrow");
    auto id = str(need(a, "id"), "arrow id");
    auto const dom = lookup(obj, str(need(a, "dom"), "dom"), "object");
    auto const cod = lookup(obj, str(need(a, "cod"), "cod"), "object");
    if (!arr.emplace(id, static_cast<ArrowId>(d.arrows.size())).second) {
      bad("duplicate arrow id '" + id + "'");
    }
    d.arrows.push_back({std::move(id), dom, cod});
  }
  auto const& ids = need(doc, "identities");
  if (!ids.is_object()) bad("identities must be an object");
  d.identities.assign(d.objects.size(), kNoArrow);
  for (auto const& [o, a] : ids.items()) {
    d.identities[lookup(obj, o, "object")] =
        lookup(arr, str(a, "identity"), "arrow");
  }
  for (ObjectId o = 0; o < d.objects.size(); ++o) {
    if (d.identities[o] == kNoArrow) {
      bad("object '" + d.objects[o] + "' has no identity");
    }
  }
  for (auto const& t : need(doc, "compose")) {
    if (!t.is_array() || t.size() != 3) bad("compose entries are [f, g, fg]");
    d.composites.push_back({lookup(arr, str(t[0], "arrow id"), "arrow"),
                            lookup(arr, str(t[1], "arrow id"), "arrow"),
                            lookup(arr, str(t[2], "arrow id"), "arrow")});
  }
  if (doc.contains("inverses")) {
    std::vector<std::pair<ArrowId, ArrowId>> inv;
    for (auto const& p : doc.at("inverses")) {
      if (!p.is_array() || p.size() != 2) bad("inverses entries are [a, b]");
      inv.emplace_back(lookup(arr, str(p[0], "arrow id"), "arrow"),
                       lookup(arr, str(p[1], "arrow id"), "arrow"));
    }
    d.inverses = std::move(inv);
  }
  if (doc.contains("size")) {
    auto const& s = doc.at("size");
    allow_keys(s, {"k", "deg"}, "size");
    auto const& kj = need(s, "k");
    if (!is_count(kj) || kj.get<std::size_t>() == 0) {
      bad("size.k must be a positive integer");
    }
    SizeData sd;
    sd.k = kj.get<std::size_t>();
    auto const& deg = need(s, "deg");
    if (!deg.is_object()) bad("size.deg must be an object");
    std::vector<std::optional<Degree>> v(d.arrows.size());
    for (auto const& [a, dj] : deg.items()) {
      v[lookup(arr, a, "arrow")] = parse_degree(dj, sd.k);
    }
    for (ArrowId a = 0; a < v.size(); ++a) {
      if (!v[a]) bad("arrow '" + d.arrows[a].id + "' has no degree");
      sd.deg.push_back(*v[a]);
    }
    out.size = std::move(sd);
  }
  if (doc.contains("bound")) {
    auto const& b = doc.at("bound");
    std::size_t const k = out.size ? out.size->k : (b.is_array() ? b.size() : 0);
    d.bound = parse_degree(b, k);
  }
  return out;
}

LoadedCategory load_category(Json const& doc) {
  auto parsed = parse_category(doc);
  LoadedCategory out{FinCategory::validate(std::move(parsed.data)), {}};
  if (parsed.size) {
    out.size = SizeFunctor::validate(out.category, std::move(parsed.size->deg),
                                     parsed.size->k);
  }
  return out;
}

SkeletonData parse_skeleton(Json const& doc) {
  allow_keys(doc, {"k", "objects", "edges", "squares"}, "skeleton document");
  SkeletonData d;
  auto const& kj = need(doc, "k");
  if (!is_count(kj) || kj.get<std::size_t>() == 0) {
    bad("k must be a positive integer");
  }
  d.k = kj.get<std::size_t>();
  std::map<std::string, ObjectId> obj;
  for (auto const& o : need(doc, "objects")) {
    auto id = str(o, "object id");
    if (!obj.emplace(id, static_cast<ObjectId>(d.objects.size())).second) {
      bad("duplicate object id '" + id + "'");
    }
    d.objects.push_back(std::move(id));
  }
  std::map<std::string, EdgeId> edge;
  for (auto const& e : need(doc, "edges")) {
    allow_keys(e, {"id", "color", "dom", "cod"}, "edge");
    auto id = str(need(e, "id"), "edge id");
    auto const& cj = need(e, "color");
    if (!is_count(cj) || cj.get<std::size_t>() < 1 ||
        cj.get<std::size_t>() > d.k) {
      bad("edge '" + id + "' colour must be in 1.." + std::to_string(d.k));
    }
    Edge ed{id, cj.get<std::size_t>() - 1,
            lookup(obj, str(need(e, "dom"), "dom"), "object"),
            lookup(obj, str(need(e, "cod"), "cod"), "object")};
    if (!edge.emplace(id, static_cast<EdgeId>(d.edges.size())).second) {
      bad("duplicate edge id '" + id + "'");
    }
    d.edges.push_back(std::move(ed));
  }
  if (doc.contains("squares")) {
    for (auto const& s : doc.at("squares")) {
      allow_keys(s, {"lhs", "rhs"}, "square");
      auto const& l = need(s, "lhs");
      auto const& r = need(s, "rhs");
      if (!l.is_array() || l.size() != 2 || !r.is_array() || r.size() != 2) {
        bad("square sides are pairs of edge ids");
      }
      d.squares.push_back({lookup(edge, str(l[0], "edge id"), "edge"),
                           lookup(edge, str(l[1], "edge id"), "edge"),
                           lookup(edge, str(r[0], "edge id"), "edge"),
                           lookup(edge, str(r[1], "edge id"), "edge")});
    }
  }
  return d;
}

ActionParts parse_action(Json const& doc) {
  allow_keys(doc, {"kgraph", "groupoid", "on_edges"}, "action document");
  KGraph k = KGraph::validate(parse_skeleton(need(doc, "kgraph")));
  auto gdoc = parse_category(need(doc, "groupoid"));
  auto& gd = gdoc.data;
  if (gd.objects.size() != k.num_objects()) {
    bad("groupoid and k-graph have different objects");
  }
  // Reorder groupoid objects to the k-graph order.
  std::vector<ObjectId> to(gd.objects.size());
  for (ObjectId o = 0; o < gd.objects.size(); ++o) {
    auto const t = k.find_object(gd.objects[o]);
    if (!t) bad("groupoid object '" + gd.objects[o] + "' is not in the k-graph");
    to[o] = *t;
  }
  std::vector<ArrowId> ids(gd.objects.size());
  for (ObjectId o = 0; o < to.size(); ++o) ids[to[o]] = gd.identities[o];
  for (auto& a : gd.arrows) {
    a.dom = to[a.dom];
    a.cod = to[a.cod];
  }
  gd.objects = k.data().objects;
  gd.identities = std::move(ids);
  FinCategory g = FinCategory::validate(std::move(gd));

  std::vector<ActionRow> rows;
  for (auto const& r : need(doc, "on_edges")) {
    allow_keys(r, {"g", "e", "ge", "rest"}, "action row");
    auto find_g = [&](char const* key) {
      auto const id = str(need(r, key), key);
      auto const a = g.find(id);
      if (!a) bad("unknown groupoid arrow '" + id + "'");
      return *a;
    };
    auto find_e = [&](char const* key) {
      auto const id = str(need(r, key), key);
      auto const e = k.find_edge(id);
      if (!e) bad("unknown edge '" + id + "'");
      return *e;
    };
    rows.push_back({find_g("g"), find_e("e"), find_e("ge"), find_g("rest")});
  }
  return {std::move(k), std::move(g), std::move(rows)};
}

ZSAction load_action(Json const& doc) {
  auto p = parse_action(doc);
  return ZSAction::validate(std::move(p.kgraph), std::move(p.groupoid),
                            std::move(p.rows));
}

Json to_json(FinCategory const& c, SizeFunctor const* size) {
  Json doc;
  doc["objects"] = Json::array();
  for (ObjectId o = 0; o < c.num_objects(); ++o) {
    doc["objects"].push_back(c.object_name(o));
  }
  doc["arrows"] = Json::array();
  for (ArrowId a = 0; a < c.num_arrows(); ++a) {
    doc["arrows"].push_back({{"id", c.name(a)},
                             {"dom", c.object_name(c.dom(a))},
                             {"cod", c.object_name(c.cod(a))}});
  }
  doc["identities"] = Json::object();
  for (ObjectId o = 0; o < c.num_objects(); ++o) {
    doc["identities"][c.object_name(o)] = c.name(c.identity(o));
  }
  doc["compose"] = Json::array();
  for (ArrowId f = 0; f < c.num_arrows(); ++f) {
    for (auto [g, fg] : c.right_composites(f)) {
      doc["compose"].push_back({c.name(f), c.name(g), c.name(fg)});
    }
  }
  doc["inverses"] = Json::array();
  for (auto a : c.invertibles()) {
    doc["inverses"].push_back({c.name(a), c.name(c.inverse(a))});
  }
  if (size) {
    Json deg = Json::object();
    for (ArrowId a = 0; a < c.num_arrows(); ++a) {
      deg[c.name(a)] = degree_json((*size)(a));
    }
    doc["size"] = {{"k", size->rank()}, {"deg", std::move(deg)}};
  }
  if (c.bound()) doc["bound"] = degree_json(*c.bound());
  return doc;
}

Json to_json(KGraph const& k) { return to_json(k.data()); }

Json to_json(SkeletonData const& d) {
  Json doc;
  doc["k"] = d.k;
  doc["objects"] = d.objects;
  doc["edges"] = Json::array();
  for (auto const& e : d.edges) {
    doc["edges"].push_back({{"id", e.id},
                            {"color", e.color + 1},
                            {"dom", d.objects[e.dom]},
                            {"cod", d.objects[e.cod]}});
  }
  doc["squares"] = Json::array();
  for (auto const& s : d.squares) {
    doc["squares"].push_back(
        {{"lhs", {d.edges[s.f].id, d.edges[s.e].id}},
         {"rhs", {d.edges[s.e2].id, d.edges[s.f2].id}}});
  }
  return doc;
}

Json to_json(ZSAction const& a) {
  Json doc;
  doc["kgraph"] = to_json(a.kgraph());
  doc["groupoid"] = to_json(a.groupoid());
  doc["on_edges"] = Json::array();
  for (auto const& r : a.rows()) {
    doc["on_edges"].push_back({{"g", a.groupoid().name(r.g)},
                               {"e", a.kgraph().edge(r.e).id},
                               {"ge", a.kgraph().edge(r.ge).id},
                               {"rest", a.groupoid().name(r.rest)}});
  }
  return doc;
}

Json to_json(FinCategory const& c, LawReport const& r) {
  Json doc;
  doc["law"] = std::string(to_string(r.law));
  doc["holds"] = r.holds;
  if (r.bound) doc["bound"] = degree_json(*r.bound);
  doc["witnesses"] = Json::array();
  for (auto const& w : r.witnesses) {
    Json j;
    j["kind"] = w.kind;
    j["arrows"] = Json::array();
    for (auto a : w.arrows) j["arrows"].push_back(c.name(a));
    if (w.split) {
      j["split"] = {degree_json(w.split->first), degree_json(w.split->second)};
    }
    doc["witnesses"].push_back(std::move(j));
  }
  if (!r.facts.empty()) {
    doc["facts"] = Json::object();
    for (auto const& [name, v] : r.facts) doc["facts"][name] = v;
  }
  return doc;
}

Json to_json(ZSAction const& a, Product const& p) {
  Json doc = to_json(p.category, &p.size);
  Json paths = Json::object();
  for (std::size_t i = 0; i < p.paths.size(); ++i) {
    paths[a.kgraph().path_name(p.paths[i])] =
        p.category.name(p.embed_path[i]);
  }
  Json group = Json::object();
  for (ArrowId g = 0; g < p.embed_group.size(); ++g) {
    group[a.groupoid().name(g)] = p.category.name(p.embed_group[g]);
  }
  doc["embeddings"] = {{"paths", std::move(paths)},
                       {"groupoid", std::move(group)}};
  return doc;
}

Json to_json(FinCategory const& c, Decomposition const& d) {
  Json doc;
  doc["action"] = to_json(d.action);
  doc["bound"] = degree_json(d.bound);
  doc["transversal"] = Json::array();
  for (auto x : d.transversal) doc["transversal"].push_back(c.name(x));
  Json theta = Json::object();
  for (ArrowId a = 0; a < d.theta.size(); ++a) {
    theta[c.name(a)] = {
        {"path", d.action.kgraph().path_name(d.theta[a].path)},
        {"g", d.action.groupoid().name(d.theta[a].g)}};
  }
  doc["theta"] = std::move(theta);
  return doc;
}

Json to_json(IsoReport const& r) {
  return {{"holds", r.holds}, {"arrows", r.arrows}, {"witnesses", r.witnesses}};
}

}  // namespace ghk
