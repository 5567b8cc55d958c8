#include "pav/term.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace pav {

namespace {

void normalize_inters(std::vector<Interaction>& v) {
  for (auto& i : v) {
    std::sort(i.begin(), i.end());
    i.erase(std::unique(i.begin(), i.end()), i.end());
  }
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

ArchSpec ArchSpec::port(const std::string& p, const std::string& sym) {
  ArchSpec a;
  a.inters_.push_back({PortRef{p, sym}});
  return a;
}

ArchSpec ArchSpec::from_interactions(std::vector<Interaction> inters) {
  ArchSpec a;
  a.inters_ = std::move(inters);
  normalize_inters(a.inters_);
  return a;
}

ArchSpec ArchSpec::operator+(const ArchSpec& o) const {
  std::vector<Interaction> v = inters_;
  v.insert(v.end(), o.inters_.begin(), o.inters_.end());
  return from_interactions(std::move(v));
}

ArchSpec ArchSpec::operator*(const ArchSpec& o) const {
  std::vector<Interaction> v;
  for (const auto& a : inters_)
    for (const auto& b : o.inters_) {
      Interaction i = a;
      i.insert(i.end(), b.begin(), b.end());
      v.push_back(std::move(i));
    }
  return from_interactions(std::move(v));
}

std::set<std::string> ArchSpec::symbols() const {
  std::set<std::string> s;
  for (const auto& i : inters_)
    for (const auto& p : i) s.insert(p.sym);
  return s;
}

ArchSpec ArchSpec::rename(const std::map<std::string, std::string>& m) const {
  std::vector<Interaction> v = inters_;
  for (auto& i : v)
    for (auto& p : i) {
      auto it = m.find(p.sym);
      if (it != m.end()) p.sym = it->second;
    }
  return from_interactions(std::move(v));
}

ArchSpec to_sop(const ArchExpr& e) {
  switch (e.kind) {
    case ArchExpr::Kind::Port:
      return ArchSpec::port(e.port.port, e.port.sym);
    case ArchExpr::Kind::Sum: {
      ArchSpec acc;
      for (const auto& k : e.kids) acc = acc + to_sop(k);
      return acc;
    }
    case ArchExpr::Kind::Prod: {
      ArchSpec acc = ArchSpec::from_interactions({Interaction{}});
      for (const auto& k : e.kids) acc = acc * to_sop(k);
      return acc;
    }
  }
  return {};
}

Architecture arch_semantics(const ArchSpec& g) {
  Architecture out;
  for (const auto& i : g.interactions()) {
    GroundInteraction gi;
    for (const auto& p : i) {
      if (!is_ident_sym(p.sym)) throw Error("NonGround", "variable " + p.sym + " in architecture");
      gi.insert(p);
    }
    out.insert(gi);
  }
  return out;
}

// Direct reading of the set equations, independent of the SOP constructors.
Architecture arch_expr_semantics(const ArchExpr& e) {
  switch (e.kind) {
    case ArchExpr::Kind::Port:
      if (!is_ident_sym(e.port.sym)) throw Error("NonGround", "variable " + e.port.sym);
      return {GroundInteraction{e.port}};
    case ArchExpr::Kind::Sum: {
      Architecture acc;
      for (const auto& k : e.kids) {
        auto s = arch_expr_semantics(k);
        acc.insert(s.begin(), s.end());
      }
      return acc;
    }
    case ArchExpr::Kind::Prod: {
      Architecture acc{GroundInteraction{}};
      for (const auto& k : e.kids) {
        Architecture next;
        for (const auto& a : acc)
          for (const auto& b : arch_expr_semantics(k)) {
            GroundInteraction u = a;
            u.insert(b.begin(), b.end());
            next.insert(u);
          }
        acc = std::move(next);
      }
      return acc;
    }
  }
  return {};
}

TermPtr mk_instance(const std::string& type, const std::string& sym) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::Instance;
  t->name = type;
  t->syms = {sym};
  return t;
}

TermPtr mk_pred(const std::string& pred, std::vector<std::string> args) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::Pred;
  t->name = pred;
  t->syms = std::move(args);
  return t;
}

TermPtr mk_apply(ArchSpec g, std::vector<TermPtr> args) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::Apply;
  t->arch = std::move(g);
  t->args = std::move(args);
  return t;
}

TermPtr mk_nu(const std::string& var, TermPtr body) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::Nu;
  t->name = var;
  t->body = std::move(body);
  return t;
}

TermPtr mk_nus(const std::vector<std::string>& vars, TermPtr body) {
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = mk_nu(*it, body);
  return body;
}

bool term_equal(const TermPtr& a, const TermPtr& b) {
  if (a->kind != b->kind || a->name != b->name || a->syms != b->syms) return false;
  switch (a->kind) {
    case Term::Kind::Instance:
    case Term::Kind::Pred:
      return true;
    case Term::Kind::Nu:
      return term_equal(a->body, b->body);
    case Term::Kind::Apply:
      if (!(a->arch == b->arch) || a->args.size() != b->args.size()) return false;
      for (size_t i = 0; i < a->args.size(); ++i)
        if (!term_equal(a->args[i], b->args[i])) return false;
      return true;
  }
  return false;
}

std::string arch_to_string(const ArchSpec& g) {
  std::ostringstream os;
  bool first = true;
  for (const auto& i : g.interactions()) {
    if (!first) os << " + ";
    first = false;
    for (size_t k = 0; k < i.size(); ++k) {
      if (k) os << ".";
      os << i[k].port << "(" << i[k].sym << ")";
    }
  }
  return os.str();
}

std::string term_to_string(const TermPtr& t) {
  std::ostringstream os;
  switch (t->kind) {
    case Term::Kind::Instance:
    case Term::Kind::Pred: {
      os << t->name << "(";
      for (size_t i = 0; i < t->syms.size(); ++i) os << (i ? ", " : "") << t->syms[i];
      os << ")";
      break;
    }
    case Term::Kind::Nu: {
      os << "new " << t->name;
      TermPtr b = t->body;
      while (b->kind == Term::Kind::Nu) {
        os << ", " << b->name;
        b = b->body;
      }
      os << " . " << term_to_string(b);
      break;
    }
    case Term::Kind::Apply: {
      std::string g = arch_to_string(t->arch);
      os << "<" << (g.empty() ? " " : " " + g + " ") << ">(";
      for (size_t i = 0; i < t->args.size(); ++i) os << (i ? ", " : "") << term_to_string(t->args[i]);
      os << ")";
      break;
    }
  }
  return os.str();
}

std::set<std::string> free_vars(const TermPtr& t) {
  std::set<std::string> out;
  switch (t->kind) {
    case Term::Kind::Instance:
    case Term::Kind::Pred:
      for (const auto& s : t->syms)
        if (!is_ident_sym(s)) out.insert(s);
      break;
    case Term::Kind::Apply:
      for (const auto& s : t->arch.symbols())
        if (!is_ident_sym(s)) out.insert(s);
      for (const auto& a : t->args) {
        auto f = free_vars(a);
        out.insert(f.begin(), f.end());
      }
      break;
    case Term::Kind::Nu:
      out = free_vars(t->body);
      out.erase(t->name);
      break;
  }
  return out;
}

std::set<std::string> instantiated_symbols(const TermPtr& t) {
  std::set<std::string> out;
  std::function<void(const TermPtr&)> go = [&](const TermPtr& u) {
    switch (u->kind) {
      case Term::Kind::Instance:
        out.insert(u->syms[0]);
        break;
      case Term::Kind::Pred:
        break;
      case Term::Kind::Apply:
        for (const auto& a : u->args) go(a);
        break;
      case Term::Kind::Nu:
        go(u->body);
        break;
    }
  };
  go(t);
  return out;
}

std::vector<std::string> bound_vars(const TermPtr& t) {
  std::vector<std::string> out;
  std::function<void(const TermPtr&)> go = [&](const TermPtr& u) {
    if (u->kind == Term::Kind::Nu) {
      out.push_back(u->name);
      go(u->body);
    } else if (u->kind == Term::Kind::Apply) {
      for (const auto& a : u->args) go(a);
    }
  };
  go(t);
  return out;
}

bool predicate_less(const TermPtr& t) {
  switch (t->kind) {
    case Term::Kind::Pred:
      return false;
    case Term::Kind::Instance:
      return true;
    case Term::Kind::Nu:
      return predicate_less(t->body);
    case Term::Kind::Apply:
      return std::all_of(t->args.begin(), t->args.end(), predicate_less);
  }
  return true;
}

int term_height(const TermPtr& t) {
  switch (t->kind) {
    case Term::Kind::Instance:
    case Term::Kind::Pred:
      return 1;
    case Term::Kind::Nu:
      return 1 + term_height(t->body);
    case Term::Kind::Apply: {
      int h = 0;
      for (const auto& a : t->args) h = std::max(h, term_height(a));
      return 1 + h;
    }
  }
  return 0;
}

TermPtr apply_substitution(const TermPtr& t, const Substitution& eta) {
  auto sub = [&](const std::string& s) {
    auto it = eta.find(s);
    return it == eta.end() ? s : it->second;
  };
  switch (t->kind) {
    case Term::Kind::Instance:
    case Term::Kind::Pred: {
      auto c = std::make_shared<Term>(*t);
      for (auto& s : c->syms) s = sub(s);
      return c;
    }
    case Term::Kind::Apply: {
      std::vector<TermPtr> args;
      for (const auto& a : t->args) args.push_back(apply_substitution(a, eta));
      return mk_apply(t->arch.rename(eta), std::move(args));
    }
    case Term::Kind::Nu: {
      if (eta.count(t->name)) {
        Substitution inner = eta;
        inner.erase(t->name);
        return mk_nu(t->name, apply_substitution(t->body, inner));
      }
      return mk_nu(t->name, apply_substitution(t->body, eta));
    }
  }
  return t;
}

namespace {

TermPtr strip_binders(const TermPtr& t, std::vector<std::string>& binders) {
  switch (t->kind) {
    case Term::Kind::Nu:
      binders.push_back(t->name);
      return strip_binders(t->body, binders);
    case Term::Kind::Apply: {
      std::vector<TermPtr> args;
      for (const auto& a : t->args) args.push_back(strip_binders(a, binders));
      return mk_apply(t->arch, std::move(args));
    }
    default:
      return t;
  }
}

void merge(const TermPtr& t, ArchSpec& g, std::vector<TermPtr>& atoms) {
  if (t->kind == Term::Kind::Apply) {
    g = g + t->arch;
    for (const auto& a : t->args) merge(a, g, atoms);
  } else {
    atoms.push_back(t);
  }
}

}  // namespace

TermPtr hoist_binders(const TermPtr& t) {
  std::vector<std::string> binders;
  TermPtr core = strip_binders(t, binders);
  return mk_nus(binders, core);
}

TermPtr flatten(const TermPtr& t) {
  if (!predicate_less(t)) throw Error("NotFlattenable", "predicate atom in " + term_to_string(t));
  std::vector<std::string> binders;
  TermPtr core = strip_binders(t, binders);
  if (core->kind != Term::Kind::Apply) return mk_nus(binders, core);
  ArchSpec g;
  std::vector<TermPtr> atoms;
  merge(core, g, atoms);
  return mk_nus(binders, mk_apply(g, atoms));
}

std::vector<std::vector<int>> flatten_redexes(const TermPtr& t) {
  std::vector<std::vector<int>> out;
  TermPtr core = t;
  while (core->kind == Term::Kind::Nu) core = core->body;
  std::vector<int> path;
  std::function<void(const TermPtr&)> go = [&](const TermPtr& u) {
    for (size_t i = 0; i < u->args.size(); ++i) {
      if (u->args[i]->kind != Term::Kind::Apply) continue;
      path.push_back(static_cast<int>(i));
      out.push_back(path);
      go(u->args[i]);
      path.pop_back();
    }
  };
  if (core->kind == Term::Kind::Apply) go(core);
  return out;
}

TermPtr flatten_step(const TermPtr& t, const std::vector<int>& path) {
  if (t->kind == Term::Kind::Nu) return mk_nu(t->name, flatten_step(t->body, path));
  if (t->kind != Term::Kind::Apply || path.empty()) throw Error("BadRedex", "not an application");
  int i = path[0];
  if (path.size() == 1) {
    const TermPtr& inner = t->args.at(i);
    if (inner->kind != Term::Kind::Apply) throw Error("BadRedex", "argument is not an application");
    std::vector<TermPtr> args(t->args.begin(), t->args.begin() + i);
    args.insert(args.end(), inner->args.begin(), inner->args.end());
    args.insert(args.end(), t->args.begin() + i + 1, t->args.end());
    return mk_apply(t->arch + inner->arch, std::move(args));
  }
  std::vector<TermPtr> args = t->args;
  args.at(i) = flatten_step(args[i], std::vector<int>(path.begin() + 1, path.end()));
  return mk_apply(t->arch, std::move(args));
}

std::vector<int> FlatBody::pred_positions() const {
  std::vector<int> v;
  for (size_t i = 0; i < atoms.size(); ++i)
    if (!atoms[i].instance) v.push_back(static_cast<int>(i));
  return v;
}

std::vector<int> FlatBody::instance_positions() const {
  std::vector<int> v;
  for (size_t i = 0; i < atoms.size(); ++i)
    if (atoms[i].instance) v.push_back(static_cast<int>(i));
  return v;
}

std::set<std::string> FlatBody::variables() const {
  std::set<std::string> s(binders.begin(), binders.end());
  for (const auto& x : gamma.symbols()) s.insert(x);
  for (const auto& a : atoms) s.insert(a.syms.begin(), a.syms.end());
  return s;
}

FlatBody flatten_body(const TermPtr& t) {
  FlatBody fb;
  TermPtr core = strip_binders(t, fb.binders);
  std::vector<TermPtr> atoms;
  merge(core, fb.gamma, atoms);
  for (const auto& a : atoms) fb.atoms.push_back(Atom{a->kind == Term::Kind::Instance, a->name, a->syms});
  return fb;
}

TermPtr body_to_term(const FlatBody& b) {
  std::vector<TermPtr> atoms;
  for (const auto& a : b.atoms)
    atoms.push_back(a.instance ? mk_instance(a.name, a.syms.at(0)) : mk_pred(a.name, a.syms));
  TermPtr core = (b.gamma.empty() && atoms.size() == 1) ? atoms[0] : mk_apply(b.gamma, atoms);
  return mk_nus(b.binders, core);
}

}  // namespace pav
