// Acceptance run: one PASS/FAIL/SKIP line per criterion.  Reference values
// come from tests/oracle_support.hpp, not from the library's oracle module,
// unless a line says otherwise.
#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>

#include "json.hpp"
#include "oracle_support.hpp"
#include "pav/builders.hpp"
#include "pav/commands.hpp"
#include "pav/dsl.hpp"
#include "pav/eval.hpp"
#include "pav/mona.hpp"
#include "pav/oracle.hpp"
#include "pav/path_automata.hpp"

using namespace pav;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;
double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string corpus(const std::string& name) { return std::string(PAV_CORPUS_DIR) + "/" + name + ".pas"; }

const std::vector<std::string> kCorpus = {"ring",          "token-ring",    "star",      "ring-star",      "alt-philo-sym",
                                          "alt-philo-asym", "sync-philo",   "tree-dfs", "tree-back-root", "tree-linked-leaves"};

struct Loaded {
  std::string name;
  Spec spec;
  RewritingSystem rs;
};

std::vector<Loaded>& systems() {
  static std::vector<Loaded> all = [] {
    std::vector<Loaded> v;
    for (const auto& n : kCorpus) {
      Spec s = load_spec_file(corpus(n));
      v.push_back({n, s, normalize_spec(s).system});
    }
    return v;
  }();
  return all;
}

const Loaded& sys(const std::string& name) {
  for (const auto& l : systems())
    if (l.name == name) return l;
  throw std::runtime_error("no corpus system " + name);
}

struct Outcome {
  enum { Pass, Fail, Skip } status = Pass;
  std::string detail;
  std::vector<std::string> problems;
  void fail(const std::string& s) {
    status = Fail;
    if (problems.size() < 4) problems.push_back(s);
  }
};

std::map<std::string, std::set<Node>> rule_sets(const FormulaBuilder& fb, const RewritingSystem& rs, const RewritingTree& t) {
  std::map<std::string, std::set<Node>> m;
  for (int r = 0; r < rs.size(); ++r) m[fb.U(r)];
  for (const auto& [w, r] : t.label) m[fb.U(r)].insert(w);
  return m;
}

std::map<std::string, std::set<Node>> state_sets(const RewritingSystem& rs, const std::string& prefix, const oracle::Net& n,
                                                 const std::set<int>& places) {
  std::map<std::string, std::set<Node>> m;
  for (const auto& s : rs.all_states()) m[FormulaBuilder::S(prefix, s)];
  for (int p : places) m[FormulaBuilder::S(prefix, n.places[p].second)].insert(n.places[p].first);
  return m;
}

// ---- 1 -------------------------------------------------------------------

Outcome c1() {
  Outcome o;
  std::ostringstream d;
  double worst_sym = 0, worst_safe = 0;
  for (const char* name : {"alt-philo-sym", "alt-philo-asym", "sync-philo"}) {
    const RewritingSystem& rs = sys(name).rs;
    std::string tag = name;
    for (int n = 2; n <= 5; ++n) {
      auto t0 = Clock::now();
      auto t = tree_with_size(rs, n);
      if (!t) {
        o.fail(tag + ": no tree of size " + std::to_string(n));
        continue;
      }
      GroundSystem g = ground_system(rs, *t);
      Behavior b(g, rs.components);
      GroundVerdict v = verify_ground(b, rs.queries[0]);
      double secs = since(t0);
      oracle::Net net = oracle::net(rs, oracle::ground(rs, *t));
      oracle::Explore ex = oracle::explore(net);
      std::string at = tag + " size " + std::to_string(n);
      if (tag == "alt-philo-sym") {
        worst_sym = std::max(worst_sym, secs);
        if (v.kind != GroundVerdict::Kind::UnsafeWitness) o.fail(at + ": no witness");
        if (!ex.deadlock) o.fail(at + ": reference search finds no deadlock");
        // replay the witness on the reference net
        oracle::Config c = oracle::initial_config(net);
        bool replay = true;
        for (const auto& gi : v.witness) {
          std::set<std::pair<std::string, Node>> lab;
          for (const auto& p : gi) lab.insert({p.port, p.sym});
          auto it = std::find(net.labels.begin(), net.labels.end(), lab);
          size_t k = it - net.labels.begin();
          if (it == net.labels.end() || !oracle::enabled(net, k, c)) {
            replay = false;
            break;
          }
          for (const auto& [s, pp] : net.moves[k]) c[s] = pp.second;
        }
        bool dead = true;
        for (size_t k = 0; k < net.moves.size(); ++k) dead = dead && !oracle::enabled(net, k, c);
        if (!replay || !dead) o.fail(at + ": witness does not replay to a deadlock");
        if (secs >= 5) o.fail(at + ": " + std::to_string(secs) + " s");
      } else {
        worst_safe = std::max(worst_safe, secs);
        if (!v.exact_safe || !*v.exact_safe) o.fail(at + ": not exactly safe");
        if (ex.deadlock || ex.overflow) o.fail(at + ": reference search disagrees");
        bool want_trap = tag == "sync-philo";
        if (v.trap_proved != want_trap) o.fail(at + ": trap method " + (v.trap_proved ? "proves" : "fails"));
        if (secs >= 30) o.fail(at + ": " + std::to_string(secs) + " s");
      }
    }
  }
  d << "sym unsafe 2..5 (max " << worst_sym << " s), asym/sync safe 2..5 (max " << worst_safe
    << " s), trap method fails on asym and proves sync";
  o.detail = d.str();
  return o;
}

// ---- 2 -------------------------------------------------------------------

Outcome c2() {
  Outcome o;
  auto t0 = Clock::now();
  long trees = 0, inters = 0;
  for (const auto& l : systems()) {
    const RewritingSystem& rs = l.rs;
    FormulaBuilder fb(rs);
    FormulaPtr flow = fb.flow("Xs", "Ys");
    std::vector<std::string> targets = fb.state_vars("Xs");
    for (const auto& y : fb.state_vars("Ys")) targets.push_back(y);
    for (const auto& t : enumerate_trees(rs, 7)) {
      ++trees;
      oracle::Net net = oracle::net(rs, oracle::ground(rs, t));
      std::set<SetAssignment> expect, got;
      for (const auto& [pre, post] : net.flows) {
        SetAssignment m = state_sets(rs, "Xs", net, pre);
        for (auto& kv : state_sets(rs, "Ys", net, post)) m.insert(kv);
        expect.insert(m);
      }
      inters += static_cast<long>(expect.size());
      EvalOptions eo;
      eo.budget = t.depth() + 1;
      eo.kappa = fb.kappa();
      BoundedEvaluator ev(flow, eo);
      Valuation v;
      v.so = rule_sets(fb, rs, t);
      for (auto& m : ev.models(v, targets)) got.insert(m);
      if (got != expect)
        o.fail(l.name + " tree of " + std::to_string(t.size()) + " nodes: " + std::to_string(got.size()) + " models, " +
               std::to_string(expect.size()) + " interactions");
    }
  }
  double secs = since(t0);
  if (secs >= 120) o.fail("took " + std::to_string(secs) + " s");
  o.detail = std::to_string(trees) + " trees, " + std::to_string(inters) + " interactions, " + std::to_string(secs) + " s";
  return o;
}

// ---- 3 -------------------------------------------------------------------

Outcome c3() {
  Outcome o;
  long pairs = 0, same = 0;
  for (const char* name : {"ring", "tree-linked-leaves", "tree-dfs"}) {
    const RewritingSystem& rs = sys(name).rs;
    std::map<std::tuple<int, std::string, int, std::string>, PathAutomaton> cache;
    for (const auto& t : enumerate_trees(rs, 9)) {
      std::vector<std::pair<Node, std::string>> sites;
      for (const auto& [w, r] : t.label)
        for (const auto& z : rs.rule_vars(r)) sites.push_back({w, z});
      for (const auto& [w1, z1] : sites)
        for (const auto& [w2, z2] : sites) {
          int r1 = t.label.at(w1), r2 = t.label.at(w2);
          auto key = std::make_tuple(r1, z1, r2, z2);
          auto it = cache.find(key);
          if (it == cache.end()) it = cache.emplace(key, build_path_automaton(rs, r1, z1, r2, z2)).first;
          bool run = accepts_on_tree(it->second, t, w1, w2);
          bool ref = oracle::chase(rs, t, w1, z1) == oracle::chase(rs, t, w2, z2);
          ++pairs;
          same += ref;
          if (run != ref)
            o.fail(std::string(name) + ": " + z1 + "@" + node_name(w1) + " / " + z2 + "@" + node_name(w2) + " automaton " +
                   (run ? "accepts" : "rejects"));
        }
    }
  }
  o.detail = std::to_string(pairs) + " site pairs (" + std::to_string(same) + " sharing an identifier)";
  return o;
}

// ---- 4 -------------------------------------------------------------------

bool nfa_run(const PathAutomaton& a, const std::vector<oracle::Step>& word) {
  std::set<int> cur(a.initial.begin(), a.initial.end());
  for (const auto& [alpha, up] : word) {
    std::set<int> next;
    for (const auto& d : a.delta)
      if (cur.count(d.from) && d.alpha == alpha && d.up == up) next.insert(d.to);
    cur = next;
  }
  for (int q : a.final)
    if (cur.count(q)) return true;
  return false;
}

Outcome c4() {
  Outcome o;
  long checks = 0, accepted = 0;
  auto t0 = Clock::now();
  for (const auto& l : systems()) {
    const RewritingSystem& rs = l.rs;
    FormulaBuilder fb(rs);
    int max_nodes = fb.kappa() > 1 ? 6 : 7;
    auto trees = enumerate_trees(rs, max_nodes);
    for (int r1 = 0; r1 < rs.size(); ++r1)
      for (const auto& z1 : rs.rule_vars(r1))
        for (int r2 = 0; r2 < rs.size(); ++r2)
          for (const auto& z2 : rs.rule_vars(r2)) {
            PathAutomaton a = build_path_automaton(rs, r1, z1, r2, z2);
            if (a.initial.empty() || a.final.empty()) continue;
            std::vector<std::string> rv;
            for (size_t q = 0; q < a.states.size(); ++q) rv.push_back(FormulaBuilder::R(a, static_cast<int>(q)));
            FormulaPtr f = f_ex2(rv, fb.phi(a, "x", "y"));
            for (const auto& t : trees) {
              auto ns = t.nodes();
              EvalOptions eo;
              eo.budget = t.depth() + 1;
              eo.kappa = fb.kappa();
              for (const auto& n : rv) eo.carriers[n] = std::set<Node>(ns.begin(), ns.end());
              BoundedEvaluator ev(f, eo);
              for (const auto& x : ns)
                for (const auto& y : ns) {
                  Valuation v;
                  v.fo["x"] = x;
                  v.fo["y"] = y;
                  bool sym = ev.eval(v);
                  bool run = nfa_run(a, oracle::walk(x, y));
                  ++checks;
                  accepted += run;
                  if (sym != run)
                    o.fail(l.name + " " + a.state_name(a.initial[0]) + ".." + a.state_name(a.final[0]) + " on " + node_name(x) +
                           ".." + node_name(y));
                }
            }
          }
  }
  o.detail = std::to_string(checks) + " node pairs, " + std::to_string(accepted) + " accepted, " + std::to_string(since(t0)) + " s";
  return o;
}

// ---- 5 -------------------------------------------------------------------

Outcome c5() {
  Outcome o;
  long labelings = 0, valid = 0;
  auto t0 = Clock::now();
  for (const auto& l : systems()) {
    const RewritingSystem& rs = l.rs;
    FormulaBuilder fb(rs);
    FormulaPtr f = fb.rtree();
    int k = std::max(1, fb.kappa());
    for (int n = 1; n <= 5; ++n)
      for (const auto& shape : oracle::shapes(n, k)) {
        int depth = 0;
        for (const auto& w : shape) depth = std::max(depth, node_depth(w));
        EvalOptions eo;
        eo.budget = depth + 1;
        eo.kappa = fb.kappa();
        BoundedEvaluator ev(f, eo);
        std::vector<int> lab(shape.size(), 0);
        for (;;) {
          RewritingTree t;
          for (size_t i = 0; i < shape.size(); ++i) t.label[shape[i]] = lab[i];
          Valuation v;
          v.so = rule_sets(fb, rs, t);
          bool sym = ev.eval(v);
          bool ref = oracle::valid_tree(rs, t);
          ++labelings;
          valid += ref;
          if (sym != ref) o.fail(l.name + ": RTree " + (sym ? "accepts" : "rejects") + " a labeling of " + std::to_string(n) + " nodes");
          size_t i = 0;
          while (i < lab.size() && ++lab[i] == rs.size()) lab[i++] = 0;
          if (i == lab.size()) break;
        }
      }
  }
  o.detail = std::to_string(labelings) + " labelings, " + std::to_string(valid) + " valid trees, " + std::to_string(since(t0)) + " s";
  return o;
}

// ---- 6 -------------------------------------------------------------------

Outcome c6() {
  Outcome o;
  long reach = 0, compared = 0, trees_eq = 0;
  for (const auto& l : systems()) {
    const RewritingSystem& rs = l.rs;
    bool exact = l.name == "ring" || l.name == "token-ring";
    FormulaBuilder fb(rs);
    FormulaPtr ti = fb.trapinv("Xs");
    for (const auto& t : enumerate_trees(rs, 6)) {
      GroundSystem g = ground_system(rs, t);
      Behavior b(g, rs.components);
      oracle::Net net = oracle::net(rs, oracle::ground(rs, t));
      oracle::Explore ex = oracle::explore(net);
      // soundness, with the library's trap invariant
      for (const auto& c : ex.reach) {
        ++reach;
        if (!b.trap_invariant_holds(b.from_named(c))) o.fail(l.name + ": reachable configuration outside the trap invariant");
      }
      if (net.places.size() > 20) continue;
      std::set<oracle::Config> th = oracle::theta(net);
      for (const auto& c : ex.reach)
        if (!th.count(c)) o.fail(l.name + ": reachable configuration outside the reference Theta");
      if (!exact) continue;
      EvalOptions eo;
      eo.budget = t.depth() + 1;
      eo.kappa = fb.kappa();
      for (const auto& st : rs.all_states()) {
        const std::string& owner = rs.components[rs.owner_of_state(st)].name;
        auto& car = eo.carriers[FormulaBuilder::S("Ys2", st)];
        for (const auto& [n, ty] : g.instances)
          if (ty == owner) car.insert(n);
      }
      BoundedEvaluator ev(ti, eo);
      std::set<oracle::Config> sym;
      for (const auto& c : oracle::all_configs(net)) {
        Valuation v;
        v.so = rule_sets(fb, rs, t);
        std::set<int> sup;
        for (size_t p = 0; p < net.places.size(); ++p)
          if (c.at(net.places[p].first) == net.places[p].second) sup.insert(static_cast<int>(p));
        for (auto& kv : state_sets(rs, "Xs", net, sup)) v.so.insert(kv);
        if (ev.eval(v)) sym.insert(c);
        ++compared;
      }
      if (sym != th)
        o.fail(l.name + " tree of " + std::to_string(t.size()) + " nodes: TrapInv accepts " + std::to_string(sym.size()) +
               ", Theta has " + std::to_string(th.size()));
      else
        ++trees_eq;
    }
  }
  if (trees_eq == 0) o.fail("no ring or token-ring tree compared");
  o.detail = std::to_string(reach) + " reachable configurations inside Theta; TrapInv = Theta on " + std::to_string(trees_eq) +
             " ring/token-ring trees (" + std::to_string(compared) + " configurations)";
  return o;
}

// ---- 7 -------------------------------------------------------------------

Outcome c7() {
  Outcome o;
  long terms = 0;
  for (const auto& l : systems()) {
    RewritingSystem plain = make_system(l.spec);
    const RewritingSystem& nr = l.rs;
    std::vector<oracle::Ground> a, b;
    for (const auto& t : enumerate_trees(plain, 9)) a.push_back(oracle::ground(plain, t));
    int w = 0;
    for (int r = 0; r < nr.size(); ++r) {
      int c = 0;
      for (const auto* at : oracle::pred_atoms(nr, r))
        for (int q : nr.rules_for(at->name)) c += nr.rules[q].wrapper ? 1 : 0;
      w = std::max(w, c);
    }
    for (const auto& t : enumerate_trees(nr, 9 * (1 + w))) {
      int real = 0;
      for (const auto& [x, r] : t.label) real += nr.rules[r].wrapper ? 0 : 1;
      if (real <= 9) b.push_back(oracle::ground(nr, t));
    }
    terms += static_cast<long>(a.size());
    if (!oracle::same_multiset(a, b))
      o.fail(l.name + ": " + std::to_string(a.size()) + " ground terms before, " + std::to_string(b.size()) + " after normalization");
  }
  o.detail = std::to_string(terms) + " ground terms matched up to renaming";
  return o;
}

// ---- 8 -------------------------------------------------------------------

Outcome c8() {
  Outcome o;
  long nets = 0, queries = 0;
  for (const auto& l : systems()) {
    const RewritingSystem& rs = l.rs;
    for (const auto& t : enumerate_trees(rs, 9)) {
      oracle::Net net = oracle::net(rs, oracle::ground(rs, t));
      if (net.places.size() > 12) continue;
      ++nets;
      GroundSystem g = ground_system(rs, t);
      Behavior b(g, rs.components);
      std::vector<unsigned long> traps = oracle::all_traps(net);
      unsigned long full = (1ul << net.places.size()) - 1;
      for (unsigned long q = 0; q <= full; ++q) {
        unsigned long want = 0;
        for (auto m : traps)
          if ((m & q) == m) want |= m;
        PlaceSet qs, got;
        for (size_t p = 0; p < net.places.size(); ++p)
          if (q >> p & 1) qs.insert(net.places[p]);
        unsigned long have = 0;
        for (const auto& pl : b.maximal_trap_within(qs)) {
          auto it = std::find(net.places.begin(), net.places.end(), pl);
          if (it == net.places.end()) {
            o.fail(l.name + ": unknown place " + pl.second + "@" + node_name(pl.first));
            continue;
          }
          have |= 1ul << (it - net.places.begin());
        }
        ++queries;
        if (have != want) o.fail(l.name + " tree of " + std::to_string(t.size()) + " nodes: fixpoint differs from enumeration");
        bool lib_trap = b.is_trap(qs) && !qs.empty();
        bool ref_trap = q != 0 && std::find(traps.begin(), traps.end(), q) != traps.end();
        if (lib_trap != ref_trap) o.fail(l.name + ": trap test disagrees on a place set");
      }
    }
  }
  if (nets == 0) o.fail("no system small enough");
  o.detail = std::to_string(nets) + " instances, " + std::to_string(queries) + " place sets";
  return o;
}

// ---- 9 -------------------------------------------------------------------

Outcome c9() {
  Outcome o;
  std::string bin = find_mona("");
  if (bin.empty()) {
    o.status = Outcome::Skip;
    o.detail = "MONA not found (set MONA_BIN or put mona on PATH)";
    return o;
  }
  std::vector<std::pair<std::string, std::string>> want = {{"sync-philo", "safe-proved"},
                                                           {"tree-dfs", "safe-proved"},
                                                           {"tree-back-root", "safe-proved"},
                                                           {"tree-linked-leaves", "safe-proved"},
                                                           {"alt-philo-sym", "sat"}};
  std::ostringstream d;
  for (const auto& [name, expect] : want) {
    const RewritingSystem& rs = sys(name).rs;
    FormulaBuilder fb(rs);
    std::string text = emit_mona(fb.safe(rs.queries[0]), mode_for_kappa(fb.kappa()));
    SolverResult r = run_solver(text, bin, 60);
    std::string got = r.kind == SolverResult::Kind::Unsat ? "safe-proved" : r.kind == SolverResult::Kind::Sat ? "sat" : r.error;
    if (got != expect) o.fail(name + ": " + got);
    if (r.seconds >= 60) o.fail(name + ": " + std::to_string(r.seconds) + " s");
    d << name << " " << got << " (" << r.seconds << " s) ";
  }
  o.detail = d.str();
  return o;
}

// ---- 10 ------------------------------------------------------------------

std::pair<int, std::string> run_cli(const std::string& args) {
  std::string cmd = std::string(PAV_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  int rc = pclose(p);
  return {WIFEXITED(rc) ? WEXITSTATUS(rc) : -1, out};
}

Outcome c10() {
  Outcome o;
  std::vector<std::string> runs = {"corpus list --json"};
  for (const auto& l : systems()) {
    std::string f = corpus(l.name);
    std::string var = l.rs.rule_vars(1).empty() ? "x" : l.rs.rule_vars(1)[0];
    for (const std::string& c : {"check", "normalize", "unfold --max-nodes 6", "verify-ground --tree 0", "verify-ground",
                                 "traps --tree 0", "emit", "verify", "oracle-check --max-nodes 4"})
      runs.push_back(c + " " + f + " --json");
    runs.push_back("paths " + f + " --from 2." + var + " --to 2." + var + " --tree 0 --json");
  }
  auto strip = [](const std::string& s) {
    nlohmann::json j = nlohmann::json::parse(s);
    j.erase("timing");
    return j.dump();
  };
  int bad_exit = 0;
  for (const auto& r : runs) {
    auto [rc1, a] = run_cli(r);
    auto [rc2, b] = run_cli(r);
    try {
      if (rc1 != rc2 || strip(a) != strip(b)) o.fail("differs: pav " + r);
      nlohmann::json j = nlohmann::json::parse(a);
      if (j["exit_code"] != rc1 || exit_code_for(j["verdict"]) != rc1) ++bad_exit;
      if (j["verdict"] == "error") o.fail("error report: pav " + r);
    } catch (const std::exception& e) {
      o.fail("unparsable report: pav " + r);
    }
  }
  if (bad_exit) o.fail(std::to_string(bad_exit) + " exit codes not matching the verdict");
  o.detail = std::to_string(runs.size()) + " commands run twice";
  return o;
}

}  // namespace

int main() {
  std::vector<std::pair<int, std::function<Outcome()>>> all = {{1, c1}, {2, c2}, {3, c3}, {4, c4},  {5, c5},
                                                               {6, c6}, {7, c7}, {8, c8}, {9, c9}, {10, c10}};
  int failed = 0;
  for (const auto& [n, f] : all) {
    Outcome o;
    auto t0 = Clock::now();
    try {
      o = f();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const char* tag = o.status == Outcome::Pass ? "PASS" : o.status == Outcome::Fail ? "FAIL" : "SKIP";
    std::printf("criterion %2d: %s  %s [%.1f s]\n", n, tag, o.detail.c_str(), since(t0));
    for (const auto& p : o.problems) std::printf("    %s\n", p.c_str());
    std::fflush(stdout);
    failed += o.status == Outcome::Fail;
  }
  return failed ? 1 : 0;
}
