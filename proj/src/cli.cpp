#include "ghk/cli.hpp"

#include <CLI11.hpp>
#include <openssl/evp.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>

#include "ghk/decompose.hpp"
#include "ghk/error.hpp"
#include "ghk/fuzz.hpp"
#include "ghk/json_io.hpp"
#include "ghk/laws.hpp"
#include "ghk/product.hpp"

namespace ghk::cli {

std::string sha256_hex(std::string const& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  std::ostringstream s;
  for (unsigned int i = 0; i < len; ++i) {
    s << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  }
  return s.str();
}

namespace {

struct Run {
  std::ostream& out;
  std::ostream& err;
  Json report = Json::object();

  Json load(std::string const& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::InvalidDocument, "cannot read " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    std::string const bytes = buf.str();
    report["inputs"].push_back({{"path", path}, {"sha256", sha256_hex(bytes)}});
    try {
      return Json::parse(bytes);
    } catch (Json::parse_error const& e) {
      throw Error(ErrorKind::InvalidDocument, path + ": " + e.what());
    }
  }

  void write(std::string const& path, Json const& doc) {
    std::ofstream o(path, std::ios::binary);
    if (!o) throw Error(ErrorKind::InvalidDocument, "cannot write " + path);
    o << doc.dump(2) << "\n";
  }
};

Degree parse_bound(std::string s, std::size_t k) {
  std::vector<Degree::value_type> v;
  for (char& ch : s) {
    if (ch == '(' || ch == ')' || ch == '[' || ch == ']') ch = ' ';
    if (ch == ',') ch = ' ';
  }
  std::istringstream in(s);
  long long x = 0;
  while (in >> x) {
    if (x < 0) throw Error(ErrorKind::InvalidDocument, "negative bound");
    v.push_back(static_cast<Degree::value_type>(x));
  }
  if (!in.eof() || v.empty()) {
    throw Error(ErrorKind::InvalidDocument, "cannot parse bound '" + s + "'");
  }
  if (v.size() == 1 && k > 1) return Degree::uniform(k, v[0]);
  if (v.size() != k) {
    throw Error(ErrorKind::BoundTooSmall,
                "bound has " + std::to_string(v.size()) + " entries, need " +
                    std::to_string(k));
  }
  return Degree(std::move(v));
}

// A category with optional size functor, read from any document kind.
struct Window {
  std::optional<FinCategory> category;
  std::optional<SizeFunctor> size;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Window window_from(Json const& doc, std::optional<std::string> const& bound,
                   Json& report) {
  Window w;
  switch (detect_kind(doc)) {
    case DocKind::Category: {
      auto l = load_category(doc);
      w.category = std::move(l.category);
      w.size = std::move(l.size);
      break;
    }
    case DocKind::Skeleton: {
      if (!bound) throw UsageError("--bound is required for a skeleton document");
      auto k = KGraph::validate(parse_skeleton(doc));
      auto b = parse_bound(*bound, k.rank());
      report["bound"] = degree_json(b);
      auto pc = path_category(k, b);
      w.category = std::move(pc.category);
      w.size = std::move(pc.size);
      break;
    }
    case DocKind::Action: {
      if (!bound) throw UsageError("--bound is required for an action document");
      auto a = load_action(doc);
      auto b = parse_bound(*bound, a.kgraph().rank());
      report["bound"] = degree_json(b);
      auto p = build_product(a, b);
      w.category = std::move(p.category);
      w.size = std::move(p.size);
      break;
    }
  }
  if (w.category->bound() && !report.contains("bound")) {
    report["bound"] = degree_json(*w.category->bound());
  }
  return w;
}

SizeFunctor const& need_size(Window const& w) {
  if (!w.size) {
    throw Error(ErrorKind::InvalidDocument,
                "this check needs a size functor (`size` section)");
  }
  return *w.size;
}

std::string witness_line(FinCategory const& c, Witness const& w) {
  std::ostringstream s;
  s << "  " << w.kind;
  if (w.split) {
    s << " at " << w.split->first.to_string() << "+" << w.split->second.to_string();
  }
  auto const& a = w.arrows;
  if (w.kind == "disconnected" && a.size() == 5) {
    s << ": " << c.name(a[0]) << " = " << c.name(a[1]) << "*" << c.name(a[2])
      << " vs " << c.name(a[3]) << "*" << c.name(a[4]);
    return s.str();
  }
  s << ":";
  for (auto x : a) s << " " << c.name(x);
  return s.str();
}

LawReport run_law(std::string const& law, Window const& w) {
  auto const& c = *w.category;
  if (law == "wfp") return check_wfp(c, need_size(w));
  if (law == "equidiv") return check_equidivisible(c);
  if (law == "cancel-left") return check_cancellative(c, Side::Left);
  if (law == "cancel") return check_cancellative(c, Side::TwoSided);
  if (law == "r-cond") {
    auto const& s = need_size(w);
    return check_r_condition(c, s, transversal(c, s));
  }
  if (law == "levi") return check_levi_equivalence(c, need_size(w));
  return check_atom_degree(c, need_size(w));
}

Json error_json(Error const& e) {
  return {{"kind", std::string(to_string(e.kind()))},
          {"message", e.what()},
          {"witness", e.witness()}};
}

std::size_t param_value(std::string const& key, std::string const& v) {
  try {
    std::size_t pos = 0;
    auto const n = std::stoull(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return static_cast<std::size_t>(n);
  } catch (std::exception const&) {
    throw UsageError("bad value for fuzz parameter " + key);
  }
}

void apply_params(GenParams& p, std::string const& spec) {
  std::istringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    auto const eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("fuzz parameter needs key=value");
    auto const key = item.substr(0, eq);
    auto const n = param_value(key, item.substr(eq + 1));
    if (key == "k") p.k = n;
    else if (key == "objects") p.max_objects = n;
    else if (key == "edges") p.max_edges_per_color = n;
    else if (key == "groupoid") p.groupoid_budget = n;
    else throw UsageError("unknown fuzz parameter " + key);
  }
}

}  // namespace

int run(std::vector<std::string> const& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Finite categories, k-graphs and Zappa-Szep products", "ghk"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string json_out;
  app.add_option("--json", json_out, "Write the full JSON report here");

  std::string doc_path, law, out_path;
  std::optional<std::string> bound;

  auto* validate = app.add_subcommand("validate", "Validate a document");
  validate->add_option("doc", doc_path)->required();

  auto* check = app.add_subcommand("check", "Run one law checker");
  check->add_option("law", law)
      ->required()
      ->check(CLI::IsMember(
          {"wfp", "equidiv", "cancel-left", "cancel", "r-cond", "levi", "atoms"}));
  check->add_option("doc", doc_path)->required();
  check->add_option("--bound", bound, "Degree window, e.g. 2 or 2,1");

  auto* product = app.add_subcommand("product", "Product constructions");
  product->require_subcommand(1);
  product->fallthrough();
  auto* build = product->add_subcommand("build", "Build a product window");
  build->add_option("doc", doc_path)->required();
  build->add_option("--bound", bound)->required();
  build->add_option("-o,--output", out_path)->required();

  auto* decomp = app.add_subcommand("decompose", "Decompose a category");
  decomp->add_option("doc", doc_path)->required();
  decomp->add_option("-o,--output", out_path)->required();

  auto* roundtrip = app.add_subcommand("roundtrip", "Product then decompose");
  roundtrip->add_option("doc", doc_path)->required();
  roundtrip->add_option("--bound", bound)->required();

  std::uint64_t seed = 0;
  std::size_t count = 10;
  std::string params;
  auto* fuzz = app.add_subcommand("fuzz", "Generate and check candidates");
  fuzz->add_option("--seed", seed);
  fuzz->add_option("--count", count);
  fuzz->add_option("--params", params,
                   "k=..,objects=..,edges=..,groupoid=.. (k=0 cycles 1..3)");
  fuzz->add_option("--bound", bound, "Window for every check (default 2)");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (CLI::ParseError const& e) {
    int const code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  Run r{out, err};
  r.report["inputs"] = Json::array();
  r.report["bound"] = nullptr;
  int code = kOk;
  try {
    if (*validate) {
      r.report["command"] = "validate";
      Json const doc = r.load(doc_path);
      Json res;
      switch (detect_kind(doc)) {
        case DocKind::Category: {
          auto l = load_category(doc);
          res = {{"kind", "category"},
                 {"arrows", l.category.num_arrows()},
                 {"objects", l.category.num_objects()},
                 {"size_functor", l.size.has_value()}};
          break;
        }
        case DocKind::Skeleton: {
          auto k = KGraph::validate(parse_skeleton(doc));
          res = {{"kind", "skeleton"},
                 {"k", k.rank()},
                 {"edges", k.num_edges()},
                 {"squares", k.data().squares.size()}};
          break;
        }
        case DocKind::Action: {
          auto a = load_action(doc);
          res = {{"kind", "action"},
                 {"edges", a.kgraph().num_edges()},
                 {"groupoid_arrows", a.groupoid().num_arrows()},
                 {"rows", a.rows().size()}};
          break;
        }
      }
      res["valid"] = true;
      r.report["results"] = res;
      out << "valid " << res["kind"].get<std::string>() << "\n";
    } else if (*check) {
      r.report["command"] = "check " + law;
      Json const doc = r.load(doc_path);
      Window const w = window_from(doc, bound, r.report);
      auto const rep = run_law(law, w);
      r.report["results"] = to_json(*w.category, rep);
      out << law << ": " << (rep.holds ? "holds" : "fails") << "\n";
      for (auto const& [name, v] : rep.facts) {
        out << "  " << name << " = " << (v ? "true" : "false") << "\n";
      }
      for (auto const& wt : rep.witnesses) out << witness_line(*w.category, wt) << "\n";
      if (!rep.holds) code = kCheckFailed;
    } else if (*product) {
      r.report["command"] = "product build";
      Json const doc = r.load(doc_path);
      auto const a = load_action(doc);
      auto const b = parse_bound(*bound, a.kgraph().rank());
      r.report["bound"] = degree_json(b);
      auto const p = build_product(a, b);
      r.write(out_path, to_json(a, p));
      r.report["results"] = {{"arrows", p.arrows.size()},
                             {"paths", p.paths.size()},
                             {"groupoid_arrows", a.groupoid().num_arrows()}};
      out << "product window " << b.to_string() << ": " << p.arrows.size()
          << " arrows\n";
    } else if (*decomp) {
      r.report["command"] = "decompose";
      Json const doc = r.load(doc_path);
      auto const l = load_category(doc);
      if (!l.size) {
        throw Error(ErrorKind::InvalidDocument, "decompose needs a size functor");
      }
      try {
        auto const d = decompose(l.category, *l.size);
        auto const iso = verify_iso(l.category, *l.size, d);
        Json res = to_json(l.category, d);
        res["iso"] = to_json(iso);
        r.write(out_path, res);
        r.report["bound"] = degree_json(d.bound);
        r.report["results"] = {{"transversal", res["transversal"]},
                               {"groupoid_arrows", d.group_arrows.size()},
                               {"iso", res["iso"]}};
        out << "transversal of " << d.transversal.size() << " arrows, groupoid of "
            << d.group_arrows.size() << " arrows\n";
        out << "theta " << (iso.holds ? "bijective" : "NOT an isomorphism")
            << " on " << iso.arrows << " arrows\n";
        if (!iso.holds) code = kCheckFailed;
      } catch (Error const& e) {
        if (e.kind() != ErrorKind::PreconditionFailed) throw;
        r.report["results"] = {{"precondition", error_json(e)}};
        out << e.what() << "\n";
        code = kCheckFailed;
      }
    } else if (*roundtrip) {
      r.report["command"] = "roundtrip";
      Json const doc = r.load(doc_path);
      auto const a = load_action(doc);
      auto const b = parse_bound(*bound, a.kgraph().rank());
      r.report["bound"] = degree_json(b);
      auto const p = build_product(a, b);
      auto const d = decompose(p.category, p.size);
      auto const iso = verify_iso(p.category, p.size, d);
      bool const ok = iso.holds && iso.arrows == p.arrows.size();
      r.report["results"] = to_json(iso);
      out << "theta " << (ok ? "bijective" : "NOT an isomorphism") << " on "
          << iso.arrows << " arrows\n";
      for (auto const& w : iso.witnesses) out << "  " << w << "\n";
      if (!ok) code = kCheckFailed;
    } else if (*fuzz) {
      r.report["command"] = "fuzz";
      GenParams base;
      base.k = 0;
      base.max_edges_per_color = 3;
      apply_params(base, params);
      try {
        GenParams probe = base;
        if (probe.k == 0) probe.k = 1;
        probe.bound = Degree::uniform(probe.k, 2);
        probe.check();
      } catch (Error const& e) {
        throw UsageError(e.what());
      }
      char const* dir = std::getenv("GHK_CORPUS_DIR");
      std::size_t valid = 0, invalid = 0, falsified = 0;
      std::map<std::string, std::size_t> tags;
      Json corpus = Json::array();
      for (std::uint64_t s = seed; s < seed + count; ++s) {
        GenParams p = base;
        p.seed = s;
        if (p.k == 0) p.k = 1 + static_cast<std::size_t>(s % 3);
        Degree const b = bound ? parse_bound(*bound, p.k) : Degree::uniform(p.k, 2);
        p.bound = b;
        Json const doc = gen_action(p);
        auto const o = run_candidate(doc, b, b);
        std::string file;
        Json saved;
        if (!o.valid) {
          ++invalid;
          auto const tag = o.failures.front().axiom;
          ++tags[tag];
          saved = shrink(doc, tag);
          file = "seed-" + std::to_string(s) + "-" + tag + ".json";
        } else {
          ++valid;
          if (!o.problems.empty()) {
            ++falsified;
            saved = doc;
            file = "falsified-" + std::to_string(s) + ".json";
            for (auto const& m : o.problems) out << "seed " << s << ": " << m << "\n";
          }
        }
        if (!file.empty() && dir) {
          std::filesystem::create_directories(dir);
          r.write((std::filesystem::path(dir) / file).string(), saved);
          corpus.push_back(file);
        }
      }
      r.report["results"] = {{"seeds", count},
                             {"first_seed", seed},
                             {"valid", valid},
                             {"invalid", invalid},
                             {"falsified", falsified},
                             {"failure_tags", tags},
                             {"corpus", corpus}};
      out << "seeds " << count << ": valid " << valid << ", invalid " << invalid
          << ", falsified " << falsified << "\n";
      if (falsified > 0) code = kCheckFailed;
    }
  } catch (UsageError const& e) {
    err << "usage: " << e.what() << "\n";
    r.report["results"] = {{"usage", e.what()}};
    code = kUsage;
  } catch (Error const& e) {
    err << e.what() << "\n";
    r.report["results"] = {{"error", error_json(e)}};
    code = kInvalidInput;
  }
  r.report["exit"] = code;
  if (!json_out.empty()) {
    try {
      r.write(json_out, r.report);
    } catch (Error const& e) {
      err << e.what() << "\n";
      return kInvalidInput;
    }
  }
  return code;
}

}  // namespace ghk::cli
