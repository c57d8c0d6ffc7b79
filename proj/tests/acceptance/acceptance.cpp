// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all
// pass. Budgets and seed counts are fixed below.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "ghk/decompose.hpp"
#include "ghk/error.hpp"
#include "ghk/fincat.hpp"
#include "ghk/fuzz.hpp"
#include "ghk/json_io.hpp"
#include "ghk/kgraph.hpp"
#include "ghk/laws.hpp"
#include "ghk/product.hpp"
#include "ghk/zsaction.hpp"

using namespace ghk;

namespace {

constexpr double kLemmaBudgetSeconds = 10.0;
constexpr double kProductBudgetSeconds = 300.0;
// Seeds are drawn until this many valid actions have been checked.
constexpr std::size_t kValidSeeds = 500;
constexpr std::size_t kMaxSeeds = 1000;
constexpr std::size_t kMaxLemmaArrows = 200;
constexpr std::size_t kUfpSkeletonSeeds = 100;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

struct Instance {
  std::string name;
  FinCategory c;
  SizeFunctor size;
};

GenParams params_for(std::uint64_t seed) {
  GenParams p;
  p.seed = seed;
  p.k = 1 + static_cast<std::size_t>(seed % 3);
  p.max_objects = 3;
  p.max_edges_per_color = p.k == 1 ? 4 : (p.k == 2 ? 3 : 2);
  p.groupoid_budget = 8;
  p.bound = Degree::uniform(p.k, 2);
  return p;
}

ZSAction swap_action() { return load_action(fixtures::load("fx-swap.json")); }

Instance product_instance(std::string name, ZSAction const& a, Degree b) {
  auto p = build_product(a, b);
  return {std::move(name), std::move(p.category), std::move(p.size)};
}

Instance path_instance(std::string name, std::string const& file, Degree b) {
  auto k = KGraph::validate(parse_skeleton(fixtures::load(file)));
  auto pc = path_category(k, b);
  return {std::move(name), std::move(pc.category), std::move(pc.size)};
}

Instance category_instance(std::string name, std::string const& file) {
  auto l = load_category(fixtures::load(file));
  return {std::move(name), std::move(l.category), std::move(*l.size)};
}

std::vector<Instance> corpus() {
  std::vector<Instance> out;
  out.push_back(category_instance("FX-DIAMOND", "fx-diamond.json"));
  out.push_back(category_instance("FX-STUCK", "fx-stuck.json"));
  out.push_back(path_instance("FX-FREE2 (2)", "fx-free2.json", Degree{2}));
  out.push_back(path_instance("FX-FREE2 (3)", "fx-free2.json", Degree{3}));
  out.push_back(path_instance("FX-N2 (2,2)", "fx-n2.json", Degree{2, 2}));
  out.push_back(product_instance("FX-SWAP (2)", swap_action(), Degree{2}));
  out.push_back(product_instance("FX-SWAP (3)", swap_action(), Degree{3}));
  out.push_back(product_instance(
      "FX-N2 trivial (1,1)", load_action(fixtures::load("fx-n2-trivial.json")),
      Degree{1, 1}));
  // Fuzz-valid products, small enough for the lemma budget.
  std::size_t added = 0;
  for (std::uint64_t s = 0; s < 200 && added < 40; ++s) {
    auto const p = params_for(s);
    Json const doc = gen_action(p);
    if (!diagnose(doc).empty()) continue;
    auto const a = load_action(doc);
    auto inst = product_instance("seed " + std::to_string(s), a, p.bound);
    if (inst.c.num_arrows() > kMaxLemmaArrows) continue;
    out.push_back(std::move(inst));
    ++added;
  }
  return out;
}

struct Result {
  bool pass = true;
  std::string detail;
};

// Keeps failure details readable when many instances fail.
void note(Result& r, std::string const& s) {
  r.pass = false;
  if (r.detail.size() < 600) r.detail += s + "; ";
}

void report(int n, std::string const& title, Result const& r) {
  std::cout << (r.pass ? "PASS" : "FAIL") << " criterion " << n << ": " << title
            << " -- " << r.detail << std::endl;
}

Result criterion1(std::vector<Instance> const& cs) {
  Result r;
  auto const t = Clock::now();
  std::size_t checks = 0, instances = 0;
  for (auto const& in : cs) {
    for (auto const& lc : check_size_lemmas(in.c, in.size)) {
      checks += lc.instances;
      if (!lc.holds()) {
        note(r, in.name + ": " + lc.lemma + " " + lc.violations.front());
      }
    }
    ++instances;
  }
  double const secs = seconds_since(t);
  if (secs >= kLemmaBudgetSeconds) r.pass = false;
  std::ostringstream s;
  s << instances << " instances, " << checks << " lemma instances, " << secs
    << " s (budget " << kLemmaBudgetSeconds << " s)";
  r.detail = s.str() + (r.detail.empty() ? "" : "; " + r.detail);
  return r;
}

Result criterion2(std::vector<Instance> const& cs) {
  Result r;
  std::size_t arrows = 0;
  for (auto const& in : cs) {
    auto const x = transversal(in.c, in.size);
    for (ArrowId a = 0; a < in.c.num_arrows(); ++a) {
      ++arrows;
      try {
        auto const f = xg_factorize(in.c, in.size, x, a);
        auto w = f.word;
        w.push_back(f.residue);
        bool ok = in.c.compose_word(w) == a && in.c.is_invertible(f.residue);
        for (auto u : f.word) {
          ok = ok && std::find(x.begin(), x.end(), u) != x.end();
        }
        if (!ok) throw Error(ErrorKind::LemmaViolation, "does not recompose");
      } catch (Error const& e) {
        note(r, in.name + "/" + in.c.name(a) + ": " + e.what());
      }
    }
  }
  // The diamond: x splits through the least atom pair with residue at d(x).
  auto const& d = cs.front();
  auto const x = transversal(d.c, d.size);
  auto const f = xg_factorize(d.c, d.size, x, *d.c.find("x"));
  if (f.word != std::vector<ArrowId>{*d.c.find("c"), *d.c.find("a")} ||
      f.residue != *d.c.find("id2")) {
    note(r, "FX-DIAMOND x does not split as ([c,a], id2)");
  }
  r.detail = std::to_string(arrows) + " arrows recomposed" +
             (r.detail.empty() ? "" : "; " + r.detail);
  return r;
}

Result criterion3(std::vector<Instance> const& cs) {
  Result r;
  std::size_t n = 0;
  auto fact = [](LawReport const& rep, std::string const& key) {
    for (auto const& [k, v] : rep.facts) {
      if (k == key) return v;
    }
    return false;
  };
  for (auto const& in : cs) {
    if (in.size.rank() != 1) continue;
    ++n;
    auto const rep = check_levi_equivalence(in.c, in.size);
    if (!rep.holds) {
      r.pass = false;
      r.detail += in.name + " breaks the equivalence; ";
    }
    bool const p = fact(rep, "levi"), q = fact(rep, "wfp");
    if (in.name == "FX-DIAMOND" && (p || q)) {
      r.pass = false;
      r.detail += "FX-DIAMOND should have both sides false; ";
    }
    if ((in.name.rfind("FX-FREE2", 0) == 0 || in.name.rfind("FX-SWAP", 0) == 0) &&
        !(p && q)) {
      r.pass = false;
      r.detail += in.name + " should have both sides true; ";
    }
  }
  r.detail = std::to_string(n) + " rank-1 instances" +
             (r.detail.empty() ? "" : "; " + r.detail);
  return r;
}

Result criterion4(Instance const& diamond) {
  Result r;
  auto const& c = diamond.c;
  auto const wfp = check_wfp(c, diamond.size);
  auto id = [&](char const* n) { return *c.find(n); };
  bool found = false;
  for (auto const& w : wfp.witnesses) {
    if (w.kind != "disconnected" || !w.split) continue;
    if (w.split->first != Degree{1} || w.split->second != Degree{1}) continue;
    if (w.arrows.size() != 5 || w.arrows[0] != id("x")) continue;
    std::set<std::pair<ArrowId, ArrowId>> const pairs{{w.arrows[1], w.arrows[2]},
                                                      {w.arrows[3], w.arrows[4]}};
    std::set<std::pair<ArrowId, ArrowId>> const want{{id("c"), id("a")},
                                                     {id("d"), id("b")}};
    if (pairs == want) found = true;
  }
  bool const eq = check_equidivisible(c).holds;
  r.pass = !wfp.holds && found && !eq;
  r.detail = std::string("wfp ") + (wfp.holds ? "holds" : "fails") +
             (found ? ", witness x = c*a vs d*b at 1+1" : ", expected witness missing") +
             ", equidivisible " + (eq ? "holds" : "fails");
  return r;
}

struct SeedStats {
  std::size_t seeds = 0, valid = 0, path_fail = 0, product_fail = 0,
              roundtrip_fail = 0;
  double path_secs = 0, product_secs = 0;
  std::map<std::size_t, std::size_t> valid_by_k;
  std::vector<std::string> problems;
};

SeedStats run_seeds() {
  SeedStats st;
  for (std::uint64_t s = 1; s <= kMaxSeeds && st.valid < kValidSeeds; ++s) {
    auto const p = params_for(s);
    Json const doc = gen_action(p);
    ++st.seeds;
    auto t = Clock::now();
    auto const laws = run_candidate(doc, Degree::uniform(p.k, 3), std::nullopt);
    st.path_secs += seconds_since(t);
    if (!laws.valid) continue;
    ++st.valid;
    ++st.valid_by_k[p.k];
    t = Clock::now();
    auto const prod = run_candidate(doc, std::nullopt, p.bound);
    st.product_secs += seconds_since(t);
    if (!laws.path_laws) ++st.path_fail;
    if (!prod.product_laws) ++st.product_fail;
    if (!prod.roundtrip) ++st.roundtrip_fail;
    for (auto const& m : laws.problems) {
      st.problems.push_back("seed " + std::to_string(s) + ": " + m);
    }
    for (auto const& m : prod.problems) {
      st.problems.push_back("seed " + std::to_string(s) + ": " + m);
    }
  }
  return st;
}

std::string seed_summary(SeedStats const& st) {
  std::ostringstream s;
  s << st.seeds << " seeds, " << st.valid << " valid (";
  bool first = true;
  for (auto const& [k, n] : st.valid_by_k) {
    s << (first ? "" : ", ") << "k=" << k << ": " << n;
    first = false;
  }
  s << ")";
  return s.str();
}

Result criterion5(SeedStats const& st) {
  Result r;
  auto const a = swap_action();
  std::size_t inst = 0;
  for (auto const& c : check_path_laws(a, Degree{3})) {
    inst += c.instances;
    if (!c.holds()) {
      note(r, "FX-SWAP " + c.law + ": " + c.violations.front());
    }
  }
  if (st.path_fail > 0 || st.valid < kValidSeeds) r.pass = false;
  std::ostringstream s;
  s << "FX-SWAP " << inst << " instances at (3); " << seed_summary(st) << ", "
    << st.path_fail << " with violations at (3,..,3), " << st.path_secs << " s";
  r.detail = s.str() + (r.detail.empty() ? "" : "; " + r.detail);
  return r;
}

Result criterion6(SeedStats const& st) {
  Result r;
  r.pass = st.product_fail == 0 && st.valid >= kValidSeeds &&
           st.product_secs < kProductBudgetSeconds;
  std::ostringstream s;
  s << st.valid << " valid products at (2,..,2), " << st.product_fail
    << " failing, " << st.product_secs << " s including round trips (budget "
    << kProductBudgetSeconds << " s)";
  r.detail = s.str();
  return r;
}

Result criterion7(SeedStats const& st) {
  Result r;
  auto const a = swap_action();
  auto const p = build_product(a, Degree{2});
  auto const d = decompose(p.category, p.size);
  auto const iso = verify_iso(p.category, p.size, d);
  bool const swap_ok = iso.holds && iso.arrows == 14 && p.arrows.size() == 14 &&
                       d.transversal.size() == 2 && d.group_arrows.size() == 2;
  r.pass = swap_ok && st.roundtrip_fail == 0 && st.valid >= kValidSeeds;
  std::ostringstream s;
  s << "FX-SWAP theta " << (iso.holds ? "bijective" : "broken") << " on "
    << iso.arrows << " arrows; " << (st.valid - st.roundtrip_fail) << "/"
    << st.valid << " fuzz round trips verified";
  r.detail = s.str();
  return r;
}

// Every factorization of p at split m, by brute force over the window.
std::size_t ufp_violations(KGraph const& k, Degree const& bound,
                           std::size_t& checked, std::string& first) {
  auto const paths = k.enumerate_paths(bound);
  std::map<std::pair<Degree, ObjectId>, std::vector<std::size_t>> by_deg_cod;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    by_deg_cod[{paths[i].degree, paths[i].cod}].push_back(i);
  }
  std::size_t bad = 0;
  for (auto const& p : paths) {
    for (auto const& m : degrees_below(p.degree)) {
      ++checked;
      Degree const n = p.degree - m;
      std::vector<std::pair<std::size_t, std::size_t>> hits;
      auto it = by_deg_cod.find({m, p.cod});
      if (it != by_deg_cod.end()) {
        for (auto i : it->second) {
          auto jt = by_deg_cod.find({n, paths[i].dom});
          if (jt == by_deg_cod.end()) continue;
          for (auto j : jt->second) {
            if (paths[j].dom != p.dom) continue;
            if (k.compose(paths[i], paths[j]) == p) hits.emplace_back(i, j);
          }
        }
      }
      bool ok = hits.size() == 1;
      if (ok) {
        auto const f = k.factor(p, m);
        ok = f.first == paths[hits[0].first] && f.second == paths[hits[0].second];
      }
      if (!ok) {
        if (bad++ == 0) {
          first = k.path_name(p) + " at " + m.to_string() + ": " +
                  std::to_string(hits.size()) + " factorizations";
        }
      }
    }
  }
  return bad;
}

Result criterion8() {
  Result r;
  std::size_t checked = 0, bad = 0, graphs = 0;
  std::string first;
  auto const n2 = KGraph::validate(parse_skeleton(fixtures::load("fx-n2.json")));
  bad += ufp_violations(n2, Degree{3, 3}, checked, first);
  ++graphs;
  for (std::size_t k : {2u, 3u}) {
    for (std::uint64_t s = 0; s < kUfpSkeletonSeeds; ++s) {
      GenParams p;
      p.seed = s;
      p.k = k;
      p.max_objects = 3;
      p.max_edges_per_color = k == 2 ? 3 : 2;
      auto const g = KGraph::validate(gen_skeleton(p));
      bad += ufp_violations(g, Degree::uniform(k, 3), checked, first);
      ++graphs;
    }
  }
  r.pass = bad == 0;
  std::ostringstream s;
  s << graphs << " k-graphs, " << checked << " (path, split) pairs, " << bad
    << " disagreements" << (first.empty() ? "" : "; first: " + first);
  r.detail = s.str();
  return r;
}

std::string slurp(std::filesystem::path const& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Result criterion9() {
  Result r;
  auto const dir = std::filesystem::temp_directory_path() / "ghk-acceptance";
  std::filesystem::create_directories(dir);
  std::vector<std::string> const commands{
      "check wfp " + fixtures::path("fx-diamond.json"),
      "roundtrip " + fixtures::path("fx-swap.json") + " --bound 2",
      "check r-cond " + fixtures::path("fx-swap.json") + " --bound 3",
      "fuzz --seed 7 --count 20",
  };
  std::size_t same = 0;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    std::string runs[2];
    for (int t = 0; t < 2; ++t) {
      auto const out = dir / ("report-" + std::to_string(i) + "-" + std::to_string(t) + ".json");
      std::filesystem::remove(out);
      std::string const cmd = std::string(GHK_CLI_PATH) + " " + commands[i] +
                              " --json " + out.string() + " > /dev/null 2>&1";
      [[maybe_unused]] int const rc = std::system(cmd.c_str());
      runs[t] = slurp(out);
    }
    if (!runs[0].empty() && runs[0] == runs[1]) {
      ++same;
    } else {
      r.pass = false;
      r.detail += "'" + commands[i] + "' differs; ";
    }
  }
  r.detail = std::to_string(same) + "/" + std::to_string(commands.size()) +
             " commands byte-identical" + (r.detail.empty() ? "" : "; " + r.detail);
  return r;
}

}  // namespace

int main() {
  bool all = true;
  auto record = [&](int n, std::string const& title, std::function<Result()> f) {
    Result r;
    try {
      r = f();
    } catch (std::exception const& e) {
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    report(n, title, r);
    all = all && r.pass;
  };

  std::vector<Instance> cs;
  try {
    cs = corpus();
  } catch (std::exception const& e) {
    std::cout << "FAIL corpus construction: " << e.what() << std::endl;
    return 1;
  }
  record(1, "size-functor lemma suite", [&] { return criterion1(cs); });
  record(2, "<X>G factorization recomposes", [&] { return criterion2(cs); });
  record(3, "Levi equivalence on rank-1 instances", [&] { return criterion3(cs); });
  record(4, "WFP negative control", [&] { return criterion4(cs.front()); });

  SeedStats st;
  auto const t = Clock::now();
  try {
    st = run_seeds();
  } catch (std::exception const& e) {
    st.problems.push_back(std::string("exception: ") + e.what());
    st.path_fail = st.product_fail = st.roundtrip_fail = 1;
  }
  std::cout << "  fuzz corpus: " << seed_summary(st) << " in " << seconds_since(t)
            << " s" << std::endl;
  for (std::size_t i = 0; i < st.problems.size() && i < 10; ++i) {
    std::cout << "  " << st.problems[i] << std::endl;
  }
  record(5, "path-level action laws", [&] { return criterion5(st); });
  record(6, "product window laws", [&] { return criterion6(st); });
  record(7, "decomposition round trip", [&] { return criterion7(st); });
  record(8, "unique factorization oracle", [&] { return criterion8(); });
  record(9, "CLI report determinism", [&] { return criterion9(); });
  return all ? 0 : 1;
}
