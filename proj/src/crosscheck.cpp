#include "pav/crosscheck.hpp"

#include <chrono>
#include <functional>

#include "pav/builders.hpp"
#include "pav/eval.hpp"
#include "pav/oracle.hpp"
#include "pav/path_automata.hpp"
#include "pav/rewriting.hpp"

namespace pav {

namespace {

void note(SuiteResult& r, const std::string& msg) {
  ++r.failures;
  if (r.examples.size() < 5) r.examples.push_back(msg);
}

Valuation tree_valuation(const FormulaBuilder& fb, const RewritingSystem& rs, const RewritingTree& t) {
  Valuation v;
  ParamSets ps = tree_to_param_sets(rs, t);
  for (int r = 0; r < rs.size(); ++r) v.so[fb.U(r)] = ps[r];
  return v;
}

using StateSets = std::map<std::string, std::set<Node>>;

StateSets place_sets(const RewritingSystem& rs, const std::string& prefix, const PlaceSet& ps) {
  StateSets m;
  for (const auto& s : rs.all_states()) m[FormulaBuilder::S(prefix, s)];
  for (const auto& [n, s] : ps) m[FormulaBuilder::S(prefix, s)].insert(n);
  return m;
}

void traps_suite(const RewritingSystem& rs, const CrosscheckOptions& opt, SuiteResult& res) {
  FormulaBuilder fb(rs);
  FormulaPtr ti = fb.trapinv("Xs");
  for (const auto& t : enumerate_trees(rs, opt.trapinv_max_nodes)) {
    GroundSystem g = ground_system(rs, t);
    Behavior b(g, rs.components);
    int bits = 0;
    for (int i = 0; i < b.n_instances(); ++i) bits += static_cast<int>(b.type_of(i).states.size());
    ReachResult reach = reachable(b);
    for (const auto& s : reach.configs) {
      ++res.checks;
      if (!b.trap_invariant_holds(s)) note(res, "reachable configuration outside the trap invariant");
    }
    if (bits > opt.max_place_bits) {
      ++res.skipped;
      continue;
    }
    EvalOptions eo;
    eo.budget = t.depth() + 1;
    eo.kappa = fb.kappa();
    for (const auto& st : rs.all_states()) {
      const std::string& owner = rs.components[rs.owner_of_state(st)].name;
      auto& c = eo.carriers[FormulaBuilder::S("Ys2", st)];
      for (const auto& [n, ty] : g.instances)
        if (ty == owner) c.insert(n);
    }
    BoundedEvaluator ev(ti, eo);
    Valuation v = tree_valuation(fb, rs, t);
    Configuration s(b.n_instances(), 0);
    std::function<void(int)> rec = [&](int i) {
      if (i == b.n_instances()) {
        for (auto& [k, val] : place_sets(rs, "Xs", b.support(s))) v.so[k] = val;
        ++res.checks;
        bool sym = ev.eval(v), ground = b.trap_invariant_holds(s);
        if (sym != ground) note(res, "tree of size " + std::to_string(t.size()) + ": TrapInv says " + (sym ? "yes" : "no") + ", traps say " + (ground ? "yes" : "no"));
        return;
      }
      for (size_t q = 0; q < b.type_of(i).states.size(); ++q) {
        s[i] = static_cast<int>(q);
        rec(i + 1);
      }
    };
    rec(0);
  }
}

void path_formula_suite(const RewritingSystem& rs, const CrosscheckOptions& opt, SuiteResult& res) {
  FormulaBuilder fb(rs);
  auto trees = enumerate_trees(rs, opt.max_nodes);
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
                ++res.checks;
                bool sym = ev.eval(v);
                bool run = accepts(a, tree_path_directions(t, x, y));
                if (sym != run)
                  note(res, "automaton " + std::to_string(r1 + 1) + ":" + z1 + " -> " + std::to_string(r2 + 1) + ":" + z2 + " on " +
                                node_name(x) + ".." + node_name(y));
              }
          }
        }
}

void path_automaton_suite(const RewritingSystem& rs, const CrosscheckOptions& opt, SuiteResult& res) {
  std::map<std::tuple<int, std::string, int, std::string>, PathAutomaton> cache;
  for (const auto& t : enumerate_trees(rs, opt.max_nodes)) {
    std::vector<std::pair<Node, std::string>> sites;
    for (const auto& [w, r] : t.label)
      for (const auto& z : rs.rule_vars(r)) sites.push_back({w, z});
    for (const auto& [w1, z1] : sites)
      for (const auto& [w2, z2] : sites) {
        int r1 = t.label.at(w1), r2 = t.label.at(w2);
        auto key = std::make_tuple(r1, z1, r2, z2);
        auto it = cache.find(key);
        if (it == cache.end()) it = cache.emplace(key, build_path_automaton(rs, r1, z1, r2, z2)).first;
        ++res.checks;
        bool run = accepts_on_tree(it->second, t, w1, w2);
        bool same = same_identifier_oracle(rs, t, w1, z1, w2, z2);
        if (run != same) note(res, z1 + "@" + node_name(w1) + " vs " + z2 + "@" + node_name(w2));
      }
  }
}

void flow_suite(const RewritingSystem& rs, const CrosscheckOptions& opt, SuiteResult& res) {
  FormulaBuilder fb(rs);
  FormulaPtr flow = fb.flow("Xs", "Ys");
  std::vector<std::string> targets = fb.state_vars("Xs");
  for (const auto& y : fb.state_vars("Ys")) targets.push_back(y);
  for (const auto& t : enumerate_trees(rs, opt.max_nodes)) {
    GroundSystem g = ground_system(rs, t);
    Behavior b(g, rs.components);
    std::set<SetAssignment> expect, got;
    for (size_t k = 0; k < b.interactions().size(); ++k) {
      SetAssignment m = place_sets(rs, "Xs", b.pre(static_cast<int>(k)));
      for (auto& kv : place_sets(rs, "Ys", b.post(static_cast<int>(k)))) m.insert(kv);
      expect.insert(m);
    }
    EvalOptions eo;
    eo.budget = t.depth() + 1;
    eo.kappa = fb.kappa();
    BoundedEvaluator ev(flow, eo);
    for (auto& m : ev.models(tree_valuation(fb, rs, t), targets)) got.insert(m);
    ++res.checks;
    if (got != expect)
      note(res, "tree of size " + std::to_string(t.size()) + ": " + std::to_string(got.size()) + " models for " +
                    std::to_string(expect.size()) + " interactions");
  }
}

void rtree_suite(const RewritingSystem& rs, const CrosscheckOptions& opt, SuiteResult& res) {
  FormulaBuilder fb(rs);
  FormulaPtr f = fb.rtree();
  int n = rs.size();
  std::map<int, std::unique_ptr<BoundedEvaluator>> evs;
  for (const auto& shape : tree_skeletons(opt.rtree_max_nodes, std::max(1, fb.kappa()))) {
    int depth = 0;
    for (const auto& w : shape) depth = std::max(depth, node_depth(w));
    auto& ev = evs[depth];
    if (!ev) {
      EvalOptions eo;
      eo.budget = depth + 1;
      eo.kappa = fb.kappa();
      ev = std::make_unique<BoundedEvaluator>(f, eo);
    }
    std::vector<int> lab(shape.size(), 0);
    for (;;) {
      RewritingTree t;
      Valuation v;
      for (int r = 0; r < n; ++r) v.so[fb.U(r)];
      for (size_t i = 0; i < shape.size(); ++i) {
        t.label[shape[i]] = lab[i];
        v.so[fb.U(lab[i])].insert(shape[i]);
      }
      ++res.checks;
      bool sym = ev->eval(v);
      bool valid = tree_problem(rs, t).empty();
      if (sym != valid) note(res, "labeling of a " + std::to_string(shape.size()) + "-node shape: RTree " + (sym ? "holds" : "fails"));
      size_t i = 0;
      while (i < lab.size() && ++lab[i] == n) lab[i++] = 0;
      if (i == lab.size()) break;
    }
  }
}

}  // namespace

std::vector<std::vector<Node>> tree_skeletons(int n, int k) {
  std::vector<std::vector<Node>> out;
  // decide the number of children of each node in BFS order
  std::function<void(std::vector<Node>&, size_t)> rec = [&](std::vector<Node>& cur, size_t i) {
    if (i == cur.size()) {
      out.push_back(cur);
      return;
    }
    Node w = cur[i];
    for (int c = 0; c <= k && static_cast<int>(cur.size()) + c <= n; ++c) {
      for (int a = 0; a < c; ++a) cur.push_back(child(w, a));
      rec(cur, i + 1);
      cur.resize(cur.size() - c);
    }
  };
  std::vector<Node> root{Node()};
  rec(root, 0);
  return out;
}

std::vector<std::string> crosscheck_suites() { return {"traps", "path-formula", "path-automaton", "flow", "rtree"}; }

SuiteResult run_suite(const RewritingSystem& rs, const std::string& name, const CrosscheckOptions& opt) {
  SuiteResult r;
  r.name = name;
  auto t0 = std::chrono::steady_clock::now();
  if (name == "traps")
    traps_suite(rs, opt, r);
  else if (name == "path-formula")
    path_formula_suite(rs, opt, r);
  else if (name == "path-automaton")
    path_automaton_suite(rs, opt, r);
  else if (name == "flow")
    flow_suite(rs, opt, r);
  else if (name == "rtree")
    rtree_suite(rs, opt, r);
  else
    throw Error("UsageError", "unknown suite " + name);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::vector<SuiteResult> run_crosschecks(const RewritingSystem& rs, const CrosscheckOptions& opt) {
  std::vector<SuiteResult> out;
  for (const auto& s : opt.suites.empty() ? crosscheck_suites() : opt.suites) out.push_back(run_suite(rs, s, opt));
  return out;
}

}  // namespace pav
