#include "pav/builders.hpp"

namespace pav {

FormulaBuilder::FormulaBuilder(const RewritingSystem& rs) : rs_(rs), kappa_(branching_degree(rs)) {}

std::vector<std::string> FormulaBuilder::U_vars() const {
  std::vector<std::string> v;
  for (int r = 0; r < rs_.size(); ++r) v.push_back(U(r));
  return v;
}

std::vector<std::string> FormulaBuilder::Z_vars() const {
  std::vector<std::string> v;
  for (size_t j = 0; j < rs_.components.size(); ++j) v.push_back(Z(static_cast<int>(j)));
  return v;
}

std::vector<std::string> FormulaBuilder::state_vars(const std::string& prefix) const {
  std::vector<std::string> v;
  for (const auto& s : rs_.all_states()) v.push_back(S(prefix, s));
  return v;
}

FormulaPtr FormulaBuilder::rtree() {
  const FTerm x = tvar("x");
  int n = rs_.size();
  std::vector<FormulaPtr> c1;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) c1.push_back(f_or(f_not(f_in(U(i), x)), f_not(f_in(U(j), x))));
  c1.push_back(f_iff(f_in(U(0), x), f_eq(x, troot())));

  std::vector<FormulaPtr> any_label;
  for (int j = 0; j < n; ++j) any_label.push_back(f_in(U(j), x));
  std::vector<FormulaPtr> c2;
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < kappa_; ++l) c2.push_back(f_implies(f_in(U(i), tsucc(x, l)), f_or(any_label)));

  std::vector<FormulaPtr> c3, c4;
  for (int i = 0; i < n; ++i) {
    const RSRule& r = rs_.rules[i];
    std::vector<int> pp = r.body.pred_positions();
    for (size_t j = 0; j < pp.size(); ++j) {
      std::vector<FormulaPtr> alts;
      for (int l : rs_.rules_for(r.body.atoms[pp[j]].name)) alts.push_back(f_in(U(l), tsucc(x, static_cast<int>(j))));
      c3.push_back(f_implies(f_in(U(i), x), f_or(alts)));
    }
    // no node has more children than its rule has predicate atoms
    for (int j = static_cast<int>(pp.size()); j < kappa_; ++j) {
      std::vector<FormulaPtr> none;
      for (int l = 0; l < n; ++l) none.push_back(f_not(f_in(U(l), tsucc(x, j))));
      c4.push_back(f_implies(f_in(U(i), x), f_and(none)));
    }
  }
  return f_and({f_all1("x", f_and(c1)), f_all1("x", f_and(c2)), f_all1("x", f_and(c3)), f_all1("x", f_and(c4))});
}

FormulaPtr FormulaBuilder::inst() {
  const FTerm x = tvar("x");
  std::vector<FormulaPtr> cs;
  for (size_t i = 0; i < rs_.components.size(); ++i) {
    std::vector<FormulaPtr> alts;
    for (int j = 0; j < rs_.size(); ++j)
      for (const auto& a : rs_.rules[j].body.atoms)
        if (a.instance && a.name == rs_.components[i].name) {
          alts.push_back(f_in(U(j), x));
          break;
        }
    cs.push_back(f_iff(f_in(Z(static_cast<int>(i)), x), f_or(alts)));
  }
  return f_all1("x", f_and(cs));
}

FormulaPtr FormulaBuilder::config(const std::string& xp) {
  const FTerm x = tvar("x");
  auto states = rs_.all_states();
  std::vector<FormulaPtr> cs, some_state, some_inst;
  for (size_t i = 0; i < states.size(); ++i)
    for (size_t j = i + 1; j < states.size(); ++j)
      cs.push_back(f_or(f_not(f_in(S(xp, states[i]), x)), f_not(f_in(S(xp, states[j]), x))));
  for (const auto& s : states) some_state.push_back(f_in(S(xp, s), x));
  for (size_t j = 0; j < rs_.components.size(); ++j) some_inst.push_back(f_in(Z(static_cast<int>(j)), x));
  cs.push_back(f_iff(f_or(some_state), f_or(some_inst)));
  // a state is only held by instances of the type owning it
  for (const auto& s : states) cs.push_back(f_implies(f_in(S(xp, s), x), f_in(Z(rs_.owner_of_state(s)), x)));
  return f_all1("x", f_and(cs));
}

FormulaPtr FormulaBuilder::init(const std::string& xp) {
  const FTerm x = tvar("x");
  std::vector<FormulaPtr> cs;
  for (const auto& s : rs_.all_states()) {
    std::vector<FormulaPtr> alts;
    for (size_t j = 0; j < rs_.components.size(); ++j)
      if (rs_.components[j].init == s) alts.push_back(f_in(Z(static_cast<int>(j)), x));
    cs.push_back(f_iff(f_in(S(xp, s), x), f_or(alts)));
  }
  return f_all1("x", f_and(cs));
}

FormulaPtr FormulaBuilder::inter(const std::string& xp, const std::string& yp) {
  const FTerm x = tvar("x");
  std::vector<FormulaPtr> alts;
  for (const auto& s : rs_.all_states()) alts.push_back(f_and(f_in(S(xp, s), x), f_in(S(yp, s), x)));
  return f_ex1("x", f_or(alts));
}

FormulaPtr FormulaBuilder::phi(const PathAutomaton& a, const std::string& xv, const std::string& yv) {
  const FTerm x = tvar(xv), y = tvar(yv), z = tvar("z"), zp = tvar("zp");
  int L = static_cast<int>(a.states.size());
  auto X = [&](int q, const FTerm& t) { return f_in(R(a, q), t); };
  std::vector<FormulaPtr> disj;
  for (int i = 0; i < L; ++i)
    for (int j = i + 1; j < L; ++j) disj.push_back(f_or(f_not(X(i, z)), f_not(X(j, z))));
  std::vector<FormulaPtr> ini, fin;
  for (int q : a.initial) ini.push_back(X(q, x));
  for (int q : a.final) fin.push_back(X(q, y));
  std::vector<FormulaPtr> fwd, bwd;
  for (int i = 0; i < L; ++i) {
    std::vector<FormulaPtr> next, prev;
    for (const auto& t : a.delta) {
      if (t.from == i) {
        if (t.up)
          next.push_back(f_ex1("zp", f_and(f_eq(tsucc(zp, t.alpha), z), X(t.to, zp))));
        else
          next.push_back(X(t.to, tsucc(z, t.alpha)));
      }
      if (t.to == i) {
        if (t.up)
          prev.push_back(X(t.from, tsucc(z, t.alpha)));
        else
          prev.push_back(f_ex1("zp", f_and(f_eq(tsucc(zp, t.alpha), z), X(t.from, zp))));
      }
    }
    fwd.push_back(f_all1("z", f_implies(f_and(f_neq(z, y), X(i, z)), f_or(next))));
    bwd.push_back(f_all1("z", f_implies(f_and(f_neq(z, x), X(i, z)), f_or(prev))));
  }
  return f_and({f_all1("z", f_and(disj)), f_or(ini), f_or(fin), f_and(fwd), f_and(bwd)});
}

FormulaPtr FormulaBuilder::psi(const PathAutomaton& a) {
  const FTerm x = tvar("x");
  std::vector<FormulaPtr> cs;
  for (size_t q = 0; q < a.states.size(); ++q)
    cs.push_back(f_all1("x", f_implies(f_in(R(a, static_cast<int>(q)), x), f_in(U(a.states[q].rule), x))));
  return f_and(cs);
}

FormulaPtr FormulaBuilder::path(int r1, const std::string& z1, int r2, const std::string& z2, const std::string& x,
                                const std::string& y) {
  auto key = std::make_tuple(r1, z1, r2, z2, x, y);
  auto it = paths_.find(key);
  if (it != paths_.end()) return it->second;
  PathAutomaton a = build_path_automaton(rs_, r1, z1, r2, z2);
  FormulaPtr f = f_false();
  if (!a.initial.empty() && !a.final.empty()) {
    std::vector<std::string> vars;
    for (size_t q = 0; q < a.states.size(); ++q) vars.push_back(R(a, static_cast<int>(q)));
    f = f_ex2(vars, f_and(phi(a, x, y), psi(a)));
  }
  paths_[key] = f;
  return f;
}

FormulaPtr FormulaBuilder::iflow(int l, int k, const std::string& xp, const std::string& yp) {
  const Interaction& pi = rs_.rules[l].body.gamma.interactions().at(k);
  int n = static_cast<int>(pi.size());
  std::vector<std::string> ys;
  for (int i = 0; i <= n; ++i) ys.push_back("y" + std::to_string(i));
  std::vector<FormulaPtr> cs{f_in(U(l), tvar(ys[0]))};
  for (int i = 0; i < n; ++i) {
    int owner = rs_.owner_of_port(pi[i].port);
    std::vector<FormulaPtr> alts;
    for (int r = 0; r < rs_.size(); ++r)
      for (const auto& a : rs_.rules[r].body.atoms)
        if (a.instance && owner >= 0 && a.name == rs_.components[owner].name)
          alts.push_back(path(l, pi[i].sym, r, a.syms[0], ys[0], ys[i + 1]));
    cs.push_back(f_or(alts));
  }
  const FTerm x = tvar("x");
  std::vector<FormulaPtr> defs;
  for (const auto& s : rs_.all_states()) {
    std::vector<FormulaPtr> pre, post;
    for (int i = 0; i < n; ++i) {
      const ComponentType& c = rs_.components[rs_.owner_of_port(pi[i].port)];
      const Transition* t = c.rule_for(pi[i].port);
      if (t && t->pre == s) pre.push_back(f_eq(x, tvar(ys[i + 1])));
      if (t && t->post == s) post.push_back(f_eq(x, tvar(ys[i + 1])));
    }
    defs.push_back(f_iff(f_in(S(xp, s), x), f_or(pre)));
    defs.push_back(f_iff(f_in(S(yp, s), x), f_or(post)));
  }
  cs.push_back(f_all1("x", f_and(defs)));
  return f_ex1(ys, f_and(cs));
}

FormulaPtr FormulaBuilder::flow(const std::string& xp, const std::string& yp) {
  auto key = std::make_pair(xp, yp);
  auto it = flows_.find(key);
  if (it != flows_.end()) return it->second;
  std::vector<FormulaPtr> alts;
  for (int l = 0; l < rs_.size(); ++l)
    for (size_t k = 0; k < rs_.rules[l].body.gamma.interactions().size(); ++k)
      alts.push_back(iflow(l, static_cast<int>(k), xp, yp));
  FormulaPtr f = f_or(alts);
  flows_[key] = f;
  return f;
}

FormulaPtr FormulaBuilder::trap(const std::string& xp) {
  std::vector<std::string> vs = state_vars("Fs1"), v2 = state_vars("Fs2");
  vs.insert(vs.end(), v2.begin(), v2.end());
  return f_all2(vs, f_implies(f_and(flow("Fs1", "Fs2"), inter(xp, "Fs1")), inter(xp, "Fs2")));
}

FormulaPtr FormulaBuilder::trapinv(const std::string& xp) {
  std::vector<std::string> ys = state_vars("Ys1"), y2 = state_vars("Ys2");
  ys.insert(ys.end(), y2.begin(), y2.end());
  FormulaPtr marked = f_all2(ys, f_implies(f_and({init("Ys1"), trap("Ys2"), inter("Ys1", "Ys2")}), inter(xp, "Ys2")));
  return f_ex2(Z_vars(), f_and({inst(), config(xp), marked}));
}

FormulaPtr FormulaBuilder::deadlock(const std::string& xp) {
  std::vector<std::string> ds = state_vars("Ds1"), d2 = state_vars("Ds2");
  ds.insert(ds.end(), d2.begin(), d2.end());
  const FTerm x = tvar("x");
  std::vector<FormulaPtr> alts;
  for (const auto& s : rs_.all_states()) alts.push_back(f_and(f_in(S("Ds1", s), x), f_not(f_in(S(xp, s), x))));
  return f_all2(ds, f_implies(flow("Ds1", "Ds2"), f_ex1("x", f_or(alts))));
}

FormulaPtr FormulaBuilder::pattern(const SafetyQuery& q, const std::string& xp) {
  std::vector<std::string> vs;
  std::vector<FormulaPtr> cs;
  for (size_t i = 0; i < q.pattern.size(); ++i) {
    const auto& [type, state] = q.pattern[i];
    int owner = rs_.owner_of_state(state);
    if (owner < 0 || rs_.components[owner].name != type)
      throw Error("UnsupportedQuery", "no state " + state + " in component type " + type);
    vs.push_back("v" + std::to_string(i + 1));
    cs.push_back(f_in(S(xp, state), tvar(vs.back())));
  }
  for (size_t i = 0; i < vs.size(); ++i)
    for (size_t j = i + 1; j < vs.size(); ++j) cs.push_back(f_neq(tvar(vs[i]), tvar(vs[j])));
  return f_ex1(vs, f_and(cs));
}

FormulaPtr FormulaBuilder::bad(const SafetyQuery& q, const std::string& xp) {
  return q.kind == SafetyQuery::Kind::Deadlock ? deadlock(xp) : pattern(q, xp);
}

FormulaPtr FormulaBuilder::safe(const SafetyQuery& q) {
  return f_and(rtree(), f_ex2(state_vars("Xs"), f_and(trapinv("Xs"), bad(q, "Xs"))));
}

}  // namespace pav
