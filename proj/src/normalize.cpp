#include "pav/normalize.hpp"

#include <algorithm>
#include <functional>

namespace pav {

const ComponentType* RewritingSystem::component(const std::string& name) const {
  for (const auto& c : components)
    if (c.name == name) return &c;
  return nullptr;
}
int RewritingSystem::component_index(const std::string& name) const {
  for (size_t i = 0; i < components.size(); ++i)
    if (components[i].name == name) return static_cast<int>(i);
  return -1;
}
int RewritingSystem::owner_of_port(const std::string& port) const {
  for (size_t i = 0; i < components.size(); ++i)
    if (components[i].has_port(port)) return static_cast<int>(i);
  return -1;
}
int RewritingSystem::owner_of_state(const std::string& state) const {
  for (size_t i = 0; i < components.size(); ++i)
    if (components[i].has_state(state)) return static_cast<int>(i);
  return -1;
}
std::vector<int> RewritingSystem::rules_for(const std::string& head) const {
  std::vector<int> v;
  for (size_t i = 0; i < rules.size(); ++i)
    if (rules[i].head == head) v.push_back(static_cast<int>(i));
  return v;
}
std::set<std::string> RewritingSystem::predicates() const {
  std::set<std::string> s;
  for (const auto& r : rules) s.insert(r.head);
  return s;
}
std::vector<std::string> RewritingSystem::all_states() const {
  std::vector<std::string> v;
  for (const auto& c : components) v.insert(v.end(), c.states.begin(), c.states.end());
  return v;
}
std::vector<std::string> RewritingSystem::rule_vars(int r) const {
  const RSRule& rule = rules.at(r);
  std::vector<std::string> v = rule.params;
  for (const auto& b : rule.body.binders)
    if (std::find(v.begin(), v.end(), b) == v.end()) v.push_back(b);
  for (const auto& s : rule.body.variables())
    if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(s);
  return v;
}

namespace {

std::string fresh_name(const std::string& base, const std::set<std::string>& taken) {
  if (!taken.count(base)) return base;
  for (int k = 1;; ++k) {
    std::string c = base + "_" + std::to_string(k);
    if (!taken.count(c)) return c;
  }
}

std::set<std::string> taken_names(const RewritingSystem& rs) {
  std::set<std::string> t = rs.predicates();
  for (const auto& c : rs.components) t.insert(c.name);
  return t;
}

using Mask = unsigned;

// Enumerates the combinations of child profiles for rule r, reporting for
// each one the per-variable instantiation count.
void for_each_combo(const RSRule& rule, const std::map<std::string, std::set<Mask>>& prof,
                    const std::function<void(const std::vector<Mask>&, const std::map<std::string, int>&)>& cb) {
  const auto& atoms = rule.body.atoms;
  std::vector<int> preds = rule.body.pred_positions();
  std::map<std::string, int> base;
  for (const auto& v : rule.body.variables()) base[v] = 0;
  for (const auto& p : rule.params) base[p] += 0;
  for (const auto& a : atoms)
    if (a.instance) base[a.syms[0]] += 1;
  std::vector<Mask> choice(preds.size());
  std::function<void(size_t, std::map<std::string, int>&)> rec = [&](size_t k, std::map<std::string, int>& cnt) {
    if (k == preds.size()) {
      cb(choice, cnt);
      return;
    }
    const Atom& a = atoms[preds[k]];
    auto it = prof.find(a.name);
    if (it == prof.end()) return;
    for (Mask m : it->second) {
      choice[k] = m;
      for (size_t j = 0; j < a.syms.size(); ++j)
        if (m >> j & 1u) cnt[a.syms[j]] += 1;
      rec(k + 1, cnt);
      for (size_t j = 0; j < a.syms.size(); ++j)
        if (m >> j & 1u) cnt[a.syms[j]] -= 1;
    }
  };
  rec(0, base);
}

bool combo_valid(const RSRule& rule, const std::map<std::string, int>& cnt, Mask& head) {
  for (const auto& b : rule.body.binders)
    if (cnt.at(b) != 1) return false;
  head = 0;
  for (size_t i = 0; i < rule.params.size(); ++i) {
    int c = cnt.at(rule.params[i]);
    if (c > 1) return false;
    if (c == 1) head |= 1u << i;
  }
  return true;
}

std::set<int> mask_positions(Mask m) {
  std::set<int> s;
  for (int i = 0; i < 32; ++i)
    if (m >> i & 1u) s.insert(i);
  return s;
}

}  // namespace

RewritingSystem make_system(const Spec& spec) {
  RewritingSystem rs;
  rs.components = spec.components;
  rs.queries = spec.queries;
  std::set<std::string> taken;
  for (const auto& r : spec.rules) taken.insert(r.head);
  for (const auto& c : spec.components) taken.insert(c.name);
  RSRule root;
  root.head = fresh_name("A_b", taken);
  root.body = flatten_body(spec.root);
  rs.rules.push_back(root);
  for (size_t i = 0; i < spec.rules.size(); ++i) {
    RSRule r;
    r.head = spec.rules[i].head;
    r.params = spec.rules[i].params;
    r.body = flatten_body(spec.rules[i].body);
    r.wrapper = spec.rules[i].wrapper;
    r.source = static_cast<int>(i) + 1;
    rs.rules.push_back(r);
  }
  rs.rules[0].source = 0;
  return rs;
}

RewritingSystem isolate_instance_atoms(const RewritingSystem& rs) {
  RewritingSystem out = rs;
  std::set<std::string> taken = taken_names(rs);
  std::map<std::string, std::string> wrapper_of;  // type -> wrapper predicate
  for (size_t i = 0; i < out.rules.size(); ++i) out.rules[i].source = static_cast<int>(i);
  for (auto& r : out.rules) {
    bool seen = false;
    for (auto& a : r.body.atoms) {
      if (!a.instance) continue;
      if (!seen) {
        seen = true;
        continue;
      }
      auto it = wrapper_of.find(a.name);
      if (it == wrapper_of.end()) {
        std::string w = fresh_name("W_" + a.name, taken);
        taken.insert(w);
        it = wrapper_of.emplace(a.name, w).first;
      }
      a.instance = false;
      a.name = it->second;
    }
  }
  for (const auto& [type, w] : wrapper_of) {
    RSRule r;
    r.head = w;
    r.params = {"x"};
    r.body.atoms.push_back(Atom{true, type, {"x"}});
    r.wrapper = true;
    out.rules.push_back(r);
  }
  return out;
}

Normalized normalize(const RewritingSystem& input) {
  RewritingSystem rs = isolate_instance_atoms(input);
  std::map<std::string, std::set<Mask>> prof;
  for (const auto& r : rs.rules)
    if (r.params.size() > 30) throw Error("NotNormalizable", "too many parameters in " + r.head);

  // least fixpoint over achievable profiles
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& r : rs.rules) {
      for_each_combo(r, prof, [&](const std::vector<Mask>&, const std::map<std::string, int>& cnt) {
        Mask h;
        if (combo_valid(r, cnt, h) && prof[r.head].insert(h).second) changed = true;
      });
    }
  }
  const std::string& root = rs.rules[0].head;
  if (!prof.count(root) || !prof[root].count(0u)) {
    // name the culprit when the root rule itself is the problem
    std::string why = "no rewriting of the root term instantiates every variable exactly once";
    throw Error("NotNormalizable", why);
  }

  // reachable (predicate, profile) pairs, and the specialized rules
  struct Spec1 {
    int rule;
    std::vector<Mask> kids;
    Mask head;
  };
  std::map<std::pair<std::string, Mask>, std::vector<Spec1>> by_key;
  std::set<std::pair<std::string, Mask>> reach;
  std::vector<std::pair<std::string, Mask>> work{{root, 0u}};
  reach.insert(work[0]);
  while (!work.empty()) {
    auto key = work.back();
    work.pop_back();
    for (int ri : rs.rules_for(key.first)) {
      const RSRule& r = rs.rules[ri];
      for_each_combo(r, prof, [&](const std::vector<Mask>& kids, const std::map<std::string, int>& cnt) {
        Mask h;
        if (!combo_valid(r, cnt, h) || h != key.second) return;
        by_key[key].push_back(Spec1{ri, kids, h});
        std::vector<int> pp = r.body.pred_positions();
        for (size_t k = 0; k < kids.size(); ++k) {
          auto ck = std::make_pair(r.body.atoms[pp[k]].name, kids[k]);
          if (reach.insert(ck).second) work.push_back(ck);
        }
      });
    }
  }

  // every reachable source rule must be usable in some valid way
  std::set<std::string> reach_preds;
  for (const auto& k : reach) reach_preds.insert(k.first);
  std::set<int> used;
  for (const auto& [k, v] : by_key)
    for (const auto& s : v) used.insert(s.rule);
  for (size_t ri = 0; ri < rs.rules.size(); ++ri) {
    const RSRule& r = rs.rules[ri];
    if (!reach_preds.count(r.head) || used.count(static_cast<int>(ri))) continue;
    std::string culprit, how = "instantiated twice";
    std::set<std::string> zero(r.body.binders.begin(), r.body.binders.end());
    bool any = false;
    for_each_combo(r, prof, [&](const std::vector<Mask>&, const std::map<std::string, int>& cnt) {
      any = true;
      for (auto it = zero.begin(); it != zero.end();)
        it = cnt.at(*it) != 0 ? zero.erase(it) : std::next(it);
      for (const auto& b : r.body.binders)
        if (cnt.at(b) > 1 && culprit.empty()) culprit = b;
    });
    if (!zero.empty() || !any) {
      culprit = zero.empty() ? std::string() : *zero.begin();
      how = "never instantiated";
    }
    throw Error("NotNormalizable", "variable " + culprit + " of a rule for " + r.head + " is " + how);
  }

  // names: keep the original when a predicate has a single reachable profile
  std::map<std::string, std::set<Mask>> reach_by_pred;
  for (const auto& k : reach) reach_by_pred[k.first].insert(k.second);
  std::set<std::string> taken = taken_names(rs);
  std::map<std::pair<std::string, Mask>, std::string> name;
  for (const auto& [p, masks] : reach_by_pred) {
    for (Mask m : masks) {
      if (masks.size() == 1) {
        name[{p, m}] = p;
        continue;
      }
      std::string s = p + "__";
      if (m == 0) s += "none";
      bool first = true;
      for (int i : mask_positions(m)) {
        s += (first ? "" : "_") + std::to_string(i + 1);
        first = false;
      }
      s = fresh_name(s, taken);
      taken.insert(s);
      name[{p, m}] = s;
    }
  }

  Normalized out;
  out.system.components = rs.components;
  out.system.queries = rs.queries;
  // order: by source rule, then by head profile, then child profiles
  std::vector<std::pair<std::pair<std::string, Mask>, Spec1>> all;
  for (const auto& [k, v] : by_key)
    for (const auto& s : v) all.push_back({k, s});
  std::stable_sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    if (a.second.rule != b.second.rule) return a.second.rule < b.second.rule;
    if (a.second.head != b.second.head) return a.second.head < b.second.head;
    return a.second.kids < b.second.kids;
  });
  for (const auto& [k, s] : all) {
    RSRule r = rs.rules[s.rule];
    r.head = name.at(k);
    r.source = s.rule;
    std::vector<int> pp = r.body.pred_positions();
    for (size_t j = 0; j < pp.size(); ++j) {
      Atom& a = r.body.atoms[pp[j]];
      a.name = name.at({a.name, s.kids[j]});
    }
    out.system.rules.push_back(r);
  }
  for (const auto& [k, n] : name) out.upsilon[n] = mask_positions(k.second);
  return out;
}

Normalized normalize_spec(const Spec& spec) { return normalize(make_system(spec)); }

Assumption1Result check_assumption1(const RewritingSystem& rs, const Profile& upsilon) {
  auto prof_of = [&](const std::string& p) {
    auto it = upsilon.find(p);
    return it == upsilon.end() ? std::set<int>() : it->second;
  };
  for (const auto& r : rs.rules) {
    std::map<std::string, int> cnt;
    for (const auto& v : r.body.variables()) cnt[v] = 0;
    for (const auto& p : r.params) cnt[p] += 0;
    for (const auto& a : r.body.atoms) {
      if (a.instance) {
        cnt[a.syms[0]] += 1;
        continue;
      }
      for (int i : prof_of(a.name))
        if (i < static_cast<int>(a.syms.size())) cnt[a.syms[i]] += 1;
    }
    for (const auto& b : r.body.binders) {
      if (cnt[b] == 0) return {false, b, r.head, "never instantiated"};
      if (cnt[b] > 1) return {false, b, r.head, "instantiated more than once"};
    }
    std::set<int> hp = prof_of(r.head);
    for (size_t i = 0; i < r.params.size(); ++i) {
      int c = cnt[r.params[i]];
      if (c > 1) return {false, r.params[i], r.head, "instantiated more than once"};
      if ((c == 1) != (hp.count(static_cast<int>(i)) == 1))
        return {false, r.params[i], r.head, "disagrees with the profile of " + r.head};
    }
  }
  return {};
}

Spec system_to_spec(const RewritingSystem& rs) {
  Spec s;
  s.components = rs.components;
  s.queries = rs.queries;
  s.root = body_to_term(rs.rules.at(0).body);
  for (size_t i = 1; i < rs.rules.size(); ++i) {
    const RSRule& r = rs.rules[i];
    s.rules.push_back(Rule{r.head, r.params, body_to_term(r.body), r.wrapper});
  }
  return s;
}

}  // namespace pav
