#include "pav/path_automata.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace pav {

int PathAutomaton::find(int rule, const std::string& var, bool up) const {
  for (size_t i = 0; i < states.size(); ++i)
    if (states[i].rule == rule && states[i].var == var && states[i].up == up) return static_cast<int>(i);
  return -1;
}

std::string PathAutomaton::state_name(int q) const {
  const PAState& s = states.at(q);
  return std::string(s.up ? "u" : "d") + std::to_string(s.rule + 1) + "_" + s.var;
}

PathAutomaton build_path_automaton(const RewritingSystem& rs, int r1, const std::string& z1, int r2,
                                   const std::string& z2, bool trim) {
  auto has_var = [&](int r, const std::string& z) {
    if (r < 0 || r >= rs.size()) return false;
    auto v = rs.rule_vars(r);
    return std::find(v.begin(), v.end(), z) != v.end();
  };
  if (!has_var(r1, z1)) throw Error("UnknownVariable", z1 + " in rule " + std::to_string(r1 + 1));
  if (!has_var(r2, z2)) throw Error("UnknownVariable", z2 + " in rule " + std::to_string(r2 + 1));

  PathAutomaton a;
  std::map<std::tuple<int, std::string, bool>, int> id;
  for (int r = 0; r < rs.size(); ++r)
    for (const auto& z : rs.rule_vars(r))
      for (bool up : {false, true}) {
        id[{r, z, up}] = static_cast<int>(a.states.size());
        a.states.push_back(PAState{r, z, up});
      }
  for (int p = 0; p < rs.size(); ++p) {
    const RSRule& pr = rs.rules[p];
    std::vector<int> pp = pr.body.pred_positions();
    for (size_t alpha = 0; alpha < pp.size(); ++alpha) {
      const Atom& atom = pr.body.atoms[pp[alpha]];
      for (int c : rs.rules_for(atom.name)) {
        const RSRule& cr = rs.rules[c];
        if (cr.params.size() != atom.syms.size()) continue;
        for (size_t j = 0; j < atom.syms.size(); ++j) {
          int dy = id.at({p, atom.syms[j], false}), uy = id.at({p, atom.syms[j], true});
          int dx = id.at({c, cr.params[j], false}), ux = id.at({c, cr.params[j], true});
          int al = static_cast<int>(alpha);
          a.delta.push_back({dy, al, false, dx});
          a.delta.push_back({ux, al, true, uy});
          a.delta.push_back({ux, al, true, dy});
        }
      }
    }
  }
  a.initial = {id.at({r1, z1, true}), id.at({r1, z1, false})};
  a.final = {id.at({r2, z2, false})};
  std::sort(a.delta.begin(), a.delta.end(), [](const PATransition& x, const PATransition& y) {
    return std::tie(x.from, x.alpha, x.up, x.to) < std::tie(y.from, y.alpha, y.up, y.to);
  });
  a.delta.erase(std::unique(a.delta.begin(), a.delta.end()), a.delta.end());
  std::sort(a.initial.begin(), a.initial.end());
  if (!trim) return a;

  size_t n = a.states.size();
  std::vector<char> fwd(n, 0), bwd(n, 0);
  for (int q : a.initial) fwd[q] = 1;
  for (int q : a.final) bwd[q] = 1;
  for (bool ch = true; ch;) {
    ch = false;
    for (const auto& t : a.delta) {
      if (fwd[t.from] && !fwd[t.to]) fwd[t.to] = ch = true;
      if (bwd[t.to] && !bwd[t.from]) bwd[t.from] = ch = true;
    }
  }
  PathAutomaton b;
  std::vector<int> remap(n, -1);
  for (size_t q = 0; q < n; ++q)
    if (fwd[q] && bwd[q]) {
      remap[q] = static_cast<int>(b.states.size());
      b.states.push_back(a.states[q]);
    }
  for (const auto& t : a.delta)
    if (remap[t.from] >= 0 && remap[t.to] >= 0) b.delta.push_back({remap[t.from], t.alpha, t.up, remap[t.to]});
  for (int q : a.initial)
    if (remap[q] >= 0) b.initial.push_back(remap[q]);
  for (int q : a.final)
    if (remap[q] >= 0) b.final.push_back(remap[q]);
  return b;
}

DirectionPath tree_path_directions(const RewritingTree& t, const Node& w1, const Node& w2) {
  if (!t.label.count(w1)) throw Error("NodeAbsent", node_name(w1));
  if (!t.label.count(w2)) throw Error("NodeAbsent", node_name(w2));
  size_t l = 0;
  while (l < w1.size() && l < w2.size() && w1[l] == w2[l]) ++l;
  DirectionPath p;
  for (size_t i = w1.size(); i > l; --i) p.push_back({w1[i - 1] - '0', true});
  for (size_t i = l; i < w2.size(); ++i) p.push_back({w2[i] - '0', false});
  return p;
}

std::string path_to_string(const DirectionPath& p) {
  std::string s;
  for (const auto& d : p) s += (s.empty() ? "" : " ") + std::to_string(d.alpha) + (d.up ? "^" : "v");
  return s;
}

bool accepts(const PathAutomaton& a, const DirectionPath& w) {
  std::set<int> cur(a.initial.begin(), a.initial.end());
  for (const auto& d : w) {
    std::set<int> next;
    for (const auto& t : a.delta)
      if (cur.count(t.from) && t.alpha == d.alpha && t.up == d.up) next.insert(t.to);
    cur.swap(next);
    if (cur.empty()) return false;
  }
  for (int q : a.final)
    if (cur.count(q)) return true;
  return false;
}

bool accepts_on_tree(const PathAutomaton& a, const RewritingTree& t, const Node& w1, const Node& w2) {
  DirectionPath w = tree_path_directions(t, w1, w2);
  Node at = w1;
  std::set<int> cur;
  for (int q : a.initial)
    if (a.states[q].rule == t.label.at(at)) cur.insert(q);
  for (const auto& d : w) {
    at = d.up ? parent(at) : child(at, d.alpha);
    int r = t.label.at(at);
    std::set<int> next;
    for (const auto& tr : a.delta)
      if (cur.count(tr.from) && tr.alpha == d.alpha && tr.up == d.up && a.states[tr.to].rule == r)
        next.insert(tr.to);
    cur.swap(next);
    if (cur.empty()) return false;
  }
  for (int q : a.final)
    if (cur.count(q)) return true;
  return false;
}

}  // namespace pav
