#include "pav/formula.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <unordered_map>

namespace pav {

bool FTerm::operator<(const FTerm& o) const { return std::tie(var, succ) < std::tie(o.var, o.succ); }

FTerm tvar(const std::string& v) { return FTerm{v, {}}; }
FTerm troot() { return FTerm{}; }
FTerm tsucc(FTerm t, int i) {
  t.succ.push_back(i);
  return t;
}

namespace {

FormulaPtr make(FK k) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  return f;
}

const FormulaPtr& k_true() {
  static const FormulaPtr t = make(FK::True);
  return t;
}
const FormulaPtr& k_false() {
  static const FormulaPtr t = make(FK::False);
  return t;
}

FormulaPtr nary(FK k, std::vector<FormulaPtr> ks) {
  bool is_and = k == FK::And;
  std::vector<FormulaPtr> out;
  for (auto& x : ks) {
    if (is_const(x, is_and)) continue;
    if (is_const(x, !is_and)) return is_and ? k_false() : k_true();
    if (x->kind == k)
      out.insert(out.end(), x->kids.begin(), x->kids.end());
    else
      out.push_back(x);
  }
  if (out.empty()) return is_and ? k_true() : k_false();
  if (out.size() == 1) return out[0];
  auto f = std::make_shared<Formula>();
  f->kind = k;
  f->kids = std::move(out);
  return f;
}

FormulaPtr quant(FK k, const std::string& v, const FormulaPtr& body) {
  if (body->kind == FK::True || body->kind == FK::False) return body;
  auto f = std::make_shared<Formula>();
  f->kind = k;
  f->var = v;
  f->kids = {body};
  return f;
}

}  // namespace

bool is_const(const FormulaPtr& f, bool value) { return f->kind == (value ? FK::True : FK::False); }

FormulaPtr f_true() { return k_true(); }
FormulaPtr f_false() { return k_false(); }

FormulaPtr f_eq(const FTerm& a, const FTerm& b) {
  if (a == b) return k_true();
  auto f = std::make_shared<Formula>();
  f->kind = FK::Eq;
  f->t1 = a;
  f->t2 = b;
  return f;
}

FormulaPtr f_neq(const FTerm& a, const FTerm& b) { return f_not(f_eq(a, b)); }

FormulaPtr f_in(const std::string& set, const FTerm& t) {
  auto f = std::make_shared<Formula>();
  f->kind = FK::In;
  f->var = set;
  f->t1 = t;
  return f;
}

FormulaPtr f_not(const FormulaPtr& a) {
  if (a->kind == FK::True) return k_false();
  if (a->kind == FK::False) return k_true();
  if (a->kind == FK::Not) return a->kids[0];
  auto f = std::make_shared<Formula>();
  f->kind = FK::Not;
  f->kids = {a};
  return f;
}

FormulaPtr f_and(std::vector<FormulaPtr> ks) { return nary(FK::And, std::move(ks)); }
FormulaPtr f_or(std::vector<FormulaPtr> ks) { return nary(FK::Or, std::move(ks)); }
FormulaPtr f_and(const FormulaPtr& a, const FormulaPtr& b) { return f_and(std::vector<FormulaPtr>{a, b}); }
FormulaPtr f_or(const FormulaPtr& a, const FormulaPtr& b) { return f_or(std::vector<FormulaPtr>{a, b}); }

FormulaPtr f_implies(const FormulaPtr& a, const FormulaPtr& b) {
  if (a->kind == FK::False || b->kind == FK::True) return k_true();
  if (a->kind == FK::True) return b;
  if (b->kind == FK::False) return f_not(a);
  auto f = std::make_shared<Formula>();
  f->kind = FK::Implies;
  f->kids = {a, b};
  return f;
}

FormulaPtr f_iff(const FormulaPtr& a, const FormulaPtr& b) {
  if (a->kind == FK::True) return b;
  if (b->kind == FK::True) return a;
  if (a->kind == FK::False) return f_not(b);
  if (b->kind == FK::False) return f_not(a);
  auto f = std::make_shared<Formula>();
  f->kind = FK::Iff;
  f->kids = {a, b};
  return f;
}

FormulaPtr f_ex1(const std::string& v, const FormulaPtr& body) { return quant(FK::Ex1, v, body); }
FormulaPtr f_all1(const std::string& v, const FormulaPtr& body) { return quant(FK::All1, v, body); }
FormulaPtr f_ex2(const std::string& v, const FormulaPtr& body) { return quant(FK::Ex2, v, body); }
FormulaPtr f_all2(const std::string& v, const FormulaPtr& body) { return quant(FK::All2, v, body); }

FormulaPtr f_ex1(const std::vector<std::string>& vs, FormulaPtr body) {
  for (auto it = vs.rbegin(); it != vs.rend(); ++it) body = f_ex1(*it, body);
  return body;
}
FormulaPtr f_ex2(const std::vector<std::string>& vs, FormulaPtr body) {
  for (auto it = vs.rbegin(); it != vs.rend(); ++it) body = f_ex2(*it, body);
  return body;
}
FormulaPtr f_all2(const std::vector<std::string>& vs, FormulaPtr body) {
  for (auto it = vs.rbegin(); it != vs.rend(); ++it) body = f_all2(*it, body);
  return body;
}

namespace {

struct FreeSets {
  std::set<std::string> fo, so;
};

const FreeSets& free_sets(const Formula* f, std::unordered_map<const Formula*, FreeSets>& memo) {
  auto it = memo.find(f);
  if (it != memo.end()) return it->second;
  FreeSets s;
  auto add_term = [&](const FTerm& t) {
    if (!t.var.empty()) s.fo.insert(t.var);
  };
  switch (f->kind) {
    case FK::True:
    case FK::False:
      break;
    case FK::Eq:
      add_term(f->t1);
      add_term(f->t2);
      break;
    case FK::In:
      add_term(f->t1);
      s.so.insert(f->var);
      break;
    default:
      for (const auto& k : f->kids) {
        const FreeSets& ks = free_sets(k.get(), memo);
        s.fo.insert(ks.fo.begin(), ks.fo.end());
        s.so.insert(ks.so.begin(), ks.so.end());
      }
      if (f->kind == FK::Ex1 || f->kind == FK::All1) s.fo.erase(f->var);
      if (f->kind == FK::Ex2 || f->kind == FK::All2) s.so.erase(f->var);
  }
  return memo.emplace(f, std::move(s)).first->second;
}

}  // namespace

std::set<std::string> free_fo(const FormulaPtr& f) {
  std::unordered_map<const Formula*, FreeSets> memo;
  return free_sets(f.get(), memo).fo;
}

std::set<std::string> free_so(const FormulaPtr& f) {
  std::unordered_map<const Formula*, FreeSets> memo;
  return free_sets(f.get(), memo).so;
}

int succ_nesting(const FormulaPtr& f) {
  int n = std::max(f->t1.succ.size(), f->t2.succ.size());
  for (const auto& k : f->kids) n = std::max(n, succ_nesting(k));
  return n;
}

int max_succ_index(const FormulaPtr& f) {
  int m = -1;
  for (int i : f->t1.succ) m = std::max(m, i);
  for (int i : f->t2.succ) m = std::max(m, i);
  for (const auto& k : f->kids) m = std::max(m, max_succ_index(k));
  return m;
}

long formula_size(const FormulaPtr& f) {
  long n = 1;
  for (const auto& k : f->kids) n += formula_size(k);
  return n;
}

bool formula_equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return true;
  if (a->kind != b->kind || a->var != b->var || !(a->t1 == b->t1) || !(a->t2 == b->t2) ||
      a->kids.size() != b->kids.size())
    return false;
  for (size_t i = 0; i < a->kids.size(); ++i)
    if (!formula_equal(a->kids[i], b->kids[i])) return false;
  return true;
}

FormulaPtr rename_apart(const FormulaPtr& f) {
  std::set<std::string> used = free_fo(f);
  for (const auto& s : free_so(f)) used.insert(s);
  std::map<std::string, int> counter;
  auto fresh = [&](const std::string& base) {
    if (!used.count(base)) {
      used.insert(base);
      return base;
    }
    for (int& k = counter[base];;) {
      std::string c = base + "_" + std::to_string(++k);
      if (!used.count(c)) {
        used.insert(c);
        return c;
      }
    }
  };
  std::function<FormulaPtr(const FormulaPtr&, std::map<std::string, std::string>&)> go =
      [&](const FormulaPtr& g, std::map<std::string, std::string>& env) -> FormulaPtr {
    auto ren = [&](const std::string& v) {
      auto it = env.find(v);
      return it == env.end() ? v : it->second;
    };
    auto f2 = std::make_shared<Formula>(*g);
    if (!f2->t1.var.empty()) f2->t1.var = ren(f2->t1.var);
    if (!f2->t2.var.empty()) f2->t2.var = ren(f2->t2.var);
    bool binder = g->kind == FK::Ex1 || g->kind == FK::All1 || g->kind == FK::Ex2 || g->kind == FK::All2;
    if (g->kind == FK::In) f2->var = ren(g->var);
    if (binder) {
      std::string nv = fresh(g->var);
      auto saved = env.find(g->var) == env.end() ? std::optional<std::string>() : env[g->var];
      env[g->var] = nv;
      f2->var = nv;
      f2->kids = {go(g->kids[0], env)};
      if (saved)
        env[g->var] = *saved;
      else
        env.erase(g->var);
    } else {
      for (auto& k : f2->kids) k = go(k, env);
    }
    return f2;
  };
  std::map<std::string, std::string> env;
  return go(f, env);
}

std::string term_to_string(const FTerm& t) {
  std::string s = t.var.empty() ? "eps" : t.var;
  for (int i : t.succ) s = "s" + std::to_string(i) + "(" + s + ")";
  return s;
}

std::string formula_to_string(const FormulaPtr& f) {
  auto bin = [&](const char* op) {
    std::string s = "(";
    for (size_t i = 0; i < f->kids.size(); ++i) s += (i ? op : "") + formula_to_string(f->kids[i]);
    return s + ")";
  };
  switch (f->kind) {
    case FK::True:
      return "true";
    case FK::False:
      return "false";
    case FK::Eq:
      return term_to_string(f->t1) + " = " + term_to_string(f->t2);
    case FK::In:
      return f->var + "(" + term_to_string(f->t1) + ")";
    case FK::Not:
      return "~" + formula_to_string(f->kids[0]);
    case FK::And:
      return bin(" & ");
    case FK::Or:
      return bin(" | ");
    case FK::Implies:
      return bin(" -> ");
    case FK::Iff:
      return bin(" <-> ");
    case FK::Ex1:
      return "(ex1 " + f->var + ". " + formula_to_string(f->kids[0]) + ")";
    case FK::All1:
      return "(all1 " + f->var + ". " + formula_to_string(f->kids[0]) + ")";
    case FK::Ex2:
      return "(ex2 " + f->var + ". " + formula_to_string(f->kids[0]) + ")";
    case FK::All2:
      return "(all2 " + f->var + ". " + formula_to_string(f->kids[0]) + ")";
  }
  return "?";
}

}  // namespace pav
