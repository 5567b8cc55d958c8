#include "pav/rewriting.hpp"

#include <algorithm>
#include <functional>

namespace pav {

int RewritingTree::depth() const {
  int d = 0;
  for (const auto& [n, l] : label) d = std::max(d, node_depth(n));
  return d;
}

std::vector<Node> RewritingTree::nodes() const {
  std::vector<Node> v;
  for (const auto& [n, l] : label) v.push_back(n);  // lexicographic == preorder
  return v;
}

int branching_degree(const RewritingSystem& rs) {
  int k = 1;
  for (const auto& r : rs.rules) k = std::max(k, r.body.n_pred());
  return k;
}

namespace {

class Enumerator {
 public:
  explicit Enumerator(const RewritingSystem& rs) : rs_(rs) {}

  const std::vector<std::vector<int>>& sub(const std::string& pred, int n) {
    auto key = std::make_pair(pred, n);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    std::vector<std::vector<int>> out;
    for (int ri : rs_.rules_for(pred)) {
      const RSRule& r = rs_.rules[ri];
      std::vector<int> pp = r.body.pred_positions();
      int k = static_cast<int>(pp.size());
      if (k == 0) {
        if (n == 1) out.push_back({ri});
        continue;
      }
      if (n - 1 < k) continue;
      std::vector<int> sizes(k);
      std::function<void(int, int)> split = [&](int j, int left) {
        if (j == k - 1) {
          sizes[j] = left;
          std::vector<int> cur{ri};
          product(r, pp, sizes, 0, cur, out);
          return;
        }
        for (int s = 1; s <= left - (k - 1 - j); ++s) {
          sizes[j] = s;
          split(j + 1, left - s);
        }
      };
      split(0, n - 1);
    }
    std::sort(out.begin(), out.end());
    return memo_.emplace(key, std::move(out)).first->second;
  }

 private:
  void product(const RSRule& r, const std::vector<int>& pp, const std::vector<int>& sizes, size_t j,
               std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (j == pp.size()) {
      out.push_back(cur);
      return;
    }
    // std::map keeps references valid across inserts
    const auto& choices = sub(r.body.atoms[pp[j]].name, sizes[j]);
    for (const auto& c : choices) {
      size_t mark = cur.size();
      cur.insert(cur.end(), c.begin(), c.end());
      product(r, pp, sizes, j + 1, cur, out);
      cur.resize(mark);
    }
  }

  const RewritingSystem& rs_;
  std::map<std::pair<std::string, int>, std::vector<std::vector<int>>> memo_;
};

RewritingTree decode(const RewritingSystem& rs, const std::vector<int>& seq) {
  RewritingTree t;
  size_t pos = 0;
  std::function<void(const Node&)> go = [&](const Node& w) {
    int r = seq.at(pos++);
    t.label[w] = r;
    int k = rs.rules[r].body.n_pred();
    for (int i = 0; i < k; ++i) go(child(w, i));
  };
  go(Node());
  return t;
}

const Atom& pred_atom(const RSRule& r, int i) {
  std::vector<int> pp = r.body.pred_positions();
  return r.body.atoms.at(pp.at(i));
}

int rule_at(const RewritingTree& t, const Node& w) {
  auto it = t.label.find(w);
  if (it == t.label.end()) throw Error("NodeAbsent", node_name(w));
  return it->second;
}

}  // namespace

std::vector<RewritingTree> trees_of_size(const RewritingSystem& rs, int n) {
  std::vector<RewritingTree> out;
  if (n <= 0) return out;
  Enumerator e(rs);
  for (const auto& seq : e.sub(rs.rules[0].head, n)) out.push_back(decode(rs, seq));
  return out;
}

std::vector<RewritingTree> enumerate_trees(const RewritingSystem& rs, int max_nodes) {
  std::vector<RewritingTree> out;
  Enumerator e(rs);
  for (int n = 1; n <= max_nodes; ++n)
    for (const auto& seq : e.sub(rs.rules[0].head, n)) out.push_back(decode(rs, seq));
  return out;
}

std::string tree_problem(const RewritingSystem& rs, const RewritingTree& t) {
  auto it = t.label.find(Node());
  if (it == t.label.end()) return "no root";
  if (it->second != 0) return "root not labeled by the root rule";
  for (const auto& [w, r] : t.label) {
    if (r < 0 || r >= rs.size()) return "bad label at " + node_name(w);
    const RSRule& rule = rs.rules[r];
    int k = rule.body.n_pred();
    for (int i = 0; i < k; ++i) {
      auto c = t.label.find(child(w, i));
      if (c == t.label.end()) return "missing child " + node_name(child(w, i));
      if (rs.rules[c->second].head != pred_atom(rule, i).name)
        return "child " + node_name(child(w, i)) + " does not rewrite " + pred_atom(rule, i).name;
    }
    if (!w.empty()) {
      auto p = t.label.find(parent(w));
      if (p == t.label.end()) return "orphan node " + node_name(w);
      int d = w.back() - '0';
      if (d < 0 || d >= rs.rules[p->second].body.n_pred()) return "surplus child " + node_name(w);
    }
  }
  return "";
}

TermPtr characteristic_term(const RewritingSystem& rs, const RewritingTree& t) {
  std::function<TermPtr(const Node&)> build = [&](const Node& w) -> TermPtr {
    const RSRule& r = rs.rules.at(rule_at(t, w));
    Substitution ren;
    std::vector<std::string> binders;
    for (const auto& b : r.body.binders) {
      ren[b] = b + "@" + node_name(w);
      binders.push_back(ren[b]);
    }
    auto rn = [&](const std::string& s) {
      auto it = ren.find(s);
      return it == ren.end() ? s : it->second;
    };
    std::vector<TermPtr> atoms;
    int pi = 0;
    for (const auto& a : r.body.atoms) {
      if (a.instance) {
        auto inst = std::make_shared<Term>();
        inst->kind = Term::Kind::Instance;
        inst->name = a.name;
        inst->syms = {rn(a.syms[0])};
        inst->origin = w;
        inst->has_origin = true;
        atoms.push_back(inst);
        continue;
      }
      Node c = child(w, pi++);
      const RSRule& cr = rs.rules.at(rule_at(t, c));
      if (cr.params.size() != a.syms.size()) throw Error("ArityMismatch", a.name);
      Substitution eta;
      for (size_t j = 0; j < a.syms.size(); ++j) eta[cr.params[j]] = rn(a.syms[j]);
      atoms.push_back(apply_substitution(build(c), eta));
    }
    ArchSpec g = r.body.gamma.rename(ren);
    TermPtr core = (g.empty() && atoms.size() == 1) ? atoms[0] : mk_apply(g, atoms);
    return mk_nus(binders, core);
  };
  return build(Node());
}

namespace {

void collect_atoms(const TermPtr& t, std::vector<const Term*>& out) {
  switch (t->kind) {
    case Term::Kind::Nu:
      collect_atoms(t->body, out);
      break;
    case Term::Kind::Apply:
      for (const auto& a : t->args) collect_atoms(a, out);
      break;
    default:
      out.push_back(t.get());
  }
}

Architecture strip_idents(const Architecture& a) {
  Architecture out;
  for (const auto& inter : a) {
    GroundInteraction g;
    for (const auto& p : inter) g.insert(PortRef{p.port, ident_node(p.sym)});
    out.insert(g);
  }
  return out;
}

}  // namespace

GroundSystem ground_system(const RewritingSystem& rs, const RewritingTree& t) {
  TermPtr flat = flatten(characteristic_term(rs, t));
  std::vector<std::string> binders;
  TermPtr core = flat;
  while (core->kind == Term::Kind::Nu) {
    binders.push_back(core->name);
    core = core->body;
  }
  std::vector<const Term*> atoms;
  collect_atoms(core, atoms);
  GroundSystem g;
  Substitution eta;
  for (const Term* a : atoms) {
    const std::string& v = a->syms.at(0);
    if (eta.count(v)) throw Error("DoubleInstantiation", v + " is instantiated twice");
    if (std::find(binders.begin(), binders.end(), v) == binders.end())
      throw Error("FreeVariableEscape", v);
    eta[v] = ident_sym(a->origin);
    if (!g.instances.emplace(a->origin, a->name).second)
      throw Error("SharedNode", "two instance atoms at node " + node_name(a->origin));
    const ComponentType* c = rs.component(a->name);
    if (!c) throw Error("UnknownComponent", a->name);
    g.init[a->origin] = c->init;
  }
  for (const auto& b : binders)
    if (!eta.count(b)) throw Error("NotInstantiated", b + " is never instantiated");
  if (core->kind == Term::Kind::Apply) g.arch = strip_idents(arch_semantics(core->arch.rename(eta)));
  return g;
}

std::pair<Node, std::string> resolve_variable(const RewritingSystem& rs, const RewritingTree& t,
                                              const Node& w, const std::string& z) {
  Node cur = w;
  std::string v = z;
  for (;;) {
    const RSRule& r = rs.rules.at(rule_at(t, cur));
    if (std::find(r.body.binders.begin(), r.body.binders.end(), v) != r.body.binders.end())
      return {cur, v};
    auto it = std::find(r.params.begin(), r.params.end(), v);
    if (it == r.params.end() || cur.empty())
      throw Error("UnknownVariable", v + " at node " + node_name(cur));
    size_t k = it - r.params.begin();
    Node p = parent(cur);
    const Atom& a = pred_atom(rs.rules.at(rule_at(t, p)), cur.back() - '0');
    v = a.syms.at(k);
    cur = p;
  }
}

bool same_identifier_oracle(const RewritingSystem& rs, const RewritingTree& t, const Node& w1,
                            const std::string& z1, const Node& w2, const std::string& z2) {
  return resolve_variable(rs, t, w1, z1) == resolve_variable(rs, t, w2, z2);
}

GroundSystem ground_system_direct(const RewritingSystem& rs, const RewritingTree& t) {
  std::map<std::pair<Node, std::string>, Node> where;
  GroundSystem g;
  for (const auto& [w, ri] : t.label) {
    for (const auto& a : rs.rules[ri].body.atoms) {
      if (!a.instance) continue;
      auto site = resolve_variable(rs, t, w, a.syms[0]);
      if (!where.emplace(site, w).second)
        throw Error("DoubleInstantiation", site.second + " is instantiated twice");
      if (!g.instances.emplace(w, a.name).second)
        throw Error("SharedNode", "two instance atoms at node " + node_name(w));
      const ComponentType* c = rs.component(a.name);
      if (!c) throw Error("UnknownComponent", a.name);
      g.init[w] = c->init;
    }
  }
  for (const auto& [w, ri] : t.label)
    for (const auto& b : rs.rules[ri].body.binders)
      if (!where.count({w, b})) throw Error("NotInstantiated", b + " is never instantiated");
  for (const auto& [w, ri] : t.label) {
    for (const auto& inter : rs.rules[ri].body.gamma.interactions()) {
      GroundInteraction gi;
      for (const auto& p : inter) {
        auto site = resolve_variable(rs, t, w, p.sym);
        auto it = where.find(site);
        if (it == where.end()) throw Error("NotInstantiated", p.sym);
        gi.insert(PortRef{p.port, it->second});
      }
      g.arch.insert(gi);
    }
  }
  return g;
}

ParamSets tree_to_param_sets(const RewritingSystem& rs, const RewritingTree& t) {
  ParamSets s(rs.size());
  for (const auto& [w, r] : t.label) s.at(r).insert(w);
  return s;
}

RewritingTree param_sets_to_tree(const RewritingSystem& rs, const ParamSets& sets) {
  if (static_cast<int>(sets.size()) != rs.size()) throw Error("Incompatible", "wrong number of sets");
  RewritingTree t;
  for (size_t i = 0; i < sets.size(); ++i)
    for (const auto& w : sets[i])
      if (!t.label.emplace(w, static_cast<int>(i)).second)
        throw Error("Incompatible", "node " + node_name(w) + " carries two labels");
  if (sets[0] != std::set<Node>{Node()}) throw Error("Incompatible", "the root rule must label exactly the root");
  std::string p = tree_problem(rs, t);
  if (!p.empty()) throw Error("Incompatible", p);
  return t;
}

int family_size(const RewritingSystem& rs, const GroundSystem& g) {
  if (rs.components.empty()) return 0;
  int n = 0;
  for (const auto& [w, ty] : g.instances) n += ty == rs.components[0].name;
  return n;
}

std::optional<RewritingTree> tree_with_size(const RewritingSystem& rs, int n, int max_nodes) {
  Enumerator e(rs);
  for (int s = 1; s <= max_nodes; ++s) {
    const auto& seqs = e.sub(rs.rules[0].head, s);
    bool all_larger = !seqs.empty();
    for (const auto& seq : seqs) {
      RewritingTree t = decode(rs, seq);
      int f = family_size(rs, ground_system_direct(rs, t));
      if (f == n) return t;
      if (f <= n) all_larger = false;
    }
    // every tree of this size already has too many instances
    if (all_larger || seqs.size() > 200000) break;
  }
  return std::nullopt;
}

}  // namespace pav
