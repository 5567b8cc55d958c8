#include "pav/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace pav {

// ---------------------------------------------------------------- spec.hpp

bool ComponentType::has_port(const std::string& p) const {
  return std::find(ports.begin(), ports.end(), p) != ports.end();
}
bool ComponentType::has_state(const std::string& s) const {
  return std::find(states.begin(), states.end(), s) != states.end();
}
int ComponentType::state_index(const std::string& s) const {
  auto it = std::find(states.begin(), states.end(), s);
  return it == states.end() ? -1 : static_cast<int>(it - states.begin());
}
const Transition* ComponentType::rule_for(const std::string& port) const {
  for (const auto& r : rules)
    if (r.port == port) return &r;
  return nullptr;
}

const ComponentType* Spec::component(const std::string& name) const {
  for (const auto& c : components)
    if (c.name == name) return &c;
  return nullptr;
}
int Spec::component_index(const std::string& name) const {
  for (size_t i = 0; i < components.size(); ++i)
    if (components[i].name == name) return static_cast<int>(i);
  return -1;
}
int Spec::owner_of_port(const std::string& port) const {
  for (size_t i = 0; i < components.size(); ++i)
    if (components[i].has_port(port)) return static_cast<int>(i);
  return -1;
}
int Spec::owner_of_state(const std::string& state) const {
  for (size_t i = 0; i < components.size(); ++i)
    if (components[i].has_state(state)) return static_cast<int>(i);
  return -1;
}

bool spec_equal(const Spec& a, const Spec& b) {
  if (!(a.components == b.components)) return false;
  if (a.rules.size() != b.rules.size() || a.queries.size() != b.queries.size()) return false;
  for (size_t i = 0; i < a.rules.size(); ++i) {
    const auto& x = a.rules[i];
    const auto& y = b.rules[i];
    if (x.head != y.head || x.params != y.params || !term_equal(x.body, y.body)) return false;
  }
  for (size_t i = 0; i < a.queries.size(); ++i)
    if (a.queries[i].kind != b.queries[i].kind || a.queries[i].pattern != b.queries[i].pattern)
      return false;
  if (!a.root || !b.root) return !a.root && !b.root;
  return term_equal(a.root, b.root);
}

std::string Diagnostic::to_string() const {
  std::ostringstream os;
  if (line > 0) os << line << ":" << col << ": ";
  os << code;
  if (!subject.empty()) os << "(" << subject << ")";
  if (!message.empty()) os << ": " << message;
  return os.str();
}

// ------------------------------------------------------------------ lexer

namespace {

struct Token {
  enum class Kind { Ident, Number, Punct, End };
  Kind kind;
  std::string text;
  int line, col;
};

struct ParseFailure {
  Diagnostic diag;
};

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto adv = [&](size_t n) {
    for (size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      adv(1);
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') adv(1);
      continue;
    }
    int l = line, cl = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      out.push_back({Token::Kind::Ident, src.substr(i, j - i), l, cl});
      adv(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < src.size() && std::isalnum(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Token::Kind::Number, src.substr(i, j - i), l, cl});
      adv(j - i);
      continue;
    }
    std::string two = src.substr(i, 2);
    if (two == "->" || two == "<-") {
      out.push_back({Token::Kind::Punct, two, l, cl});
      adv(2);
      continue;
    }
    if (std::string("{}()<>;,.+@-").find(c) != std::string::npos) {
      out.push_back({Token::Kind::Punct, std::string(1, c), l, cl});
      adv(1);
      continue;
    }
    throw ParseFailure{{"SyntaxError", std::string(1, c), "unexpected character", l, cl}};
  }
  out.push_back({Token::Kind::End, "", line, col});
  return out;
}

// ----------------------------------------------------------------- parser

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : t_(std::move(toks)) {
    for (size_t i = 0; i + 1 < t_.size(); ++i) {
      if (t_[i].kind == Token::Kind::Ident) all_idents_.insert(t_[i].text);
      if (t_[i].kind == Token::Kind::Ident && t_[i].text == "component" &&
          t_[i + 1].kind == Token::Kind::Ident)
        component_names_.insert(t_[i + 1].text);
    }
  }

  Spec run() {
    Spec s;
    while (peek().kind != Token::Kind::End) {
      const Token& k = peek();
      if (is_kw("component")) {
        s.components.push_back(component());
      } else if (is_kw("root")) {
        next();
        if (s.root) fail_at(k, "DuplicateName", "root", "root term declared twice");
        params_.clear();
        s.root = alpha(term());
        expect(";");
      } else if (is_kw("check")) {
        s.queries.push_back(query());
      } else if (k.kind == Token::Kind::Ident) {
        s.rules.push_back(rule());
      } else {
        fail("component, rule, root or check");
      }
    }
    if (!s.root) fail("root declaration");
    return s;
  }

 private:
  std::vector<Token> t_;
  size_t p_ = 0;
  std::set<std::string> all_idents_, component_names_, claimed_;
  std::set<std::string> params_;

  const Token& peek() const { return t_[p_]; }
  const Token& next() { return t_[p_++]; }
  bool is_kw(const char* kw) const {
    return peek().kind == Token::Kind::Ident && peek().text == kw;
  }
  bool is_punct(const char* s) const {
    return peek().kind == Token::Kind::Punct && peek().text == s;
  }
  [[noreturn]] void fail(const std::string& expected) {
    const Token& k = peek();
    std::string got = k.kind == Token::Kind::End ? "end of input" : "'" + k.text + "'";
    if (k.kind == Token::Kind::Number)
      throw ParseFailure{{"SyntaxError", k.text,
                          "literal identifiers are not allowed, expected " + expected, k.line, k.col}};
    throw ParseFailure{{"SyntaxError", "", "expected " + expected + ", got " + got, k.line, k.col}};
  }
  [[noreturn]] void fail_at(const Token& k, const std::string& code, const std::string& subj,
                            const std::string& msg) {
    throw ParseFailure{{code, subj, msg, k.line, k.col}};
  }
  void expect(const char* s) {
    if (!is_punct(s)) fail(std::string("'") + s + "'");
    next();
  }
  std::string ident() {
    if (peek().kind != Token::Kind::Ident) fail("identifier");
    return next().text;
  }
  void expect_kw(const char* kw) {
    if (!is_kw(kw)) fail(std::string("'") + kw + "'");
    next();
  }

  ComponentType component() {
    expect_kw("component");
    const Token& nt = peek();
    ComponentType c;
    c.name = ident();
    expect("{");
    while (!is_punct("}")) {
      if (is_kw("ports")) {
        next();
        do {
          const Token& pt = peek();
          std::string p = ident();
          if (c.has_port(p)) fail_at(pt, "DuplicateName", p, "port declared twice in " + c.name);
          c.ports.push_back(p);
        } while (is_punct(",") && (next(), true));
        expect(";");
      } else if (is_kw("states")) {
        next();
        do {
          const Token& st = peek();
          std::string s = ident();
          if (c.has_state(s)) fail_at(st, "DuplicateName", s, "state declared twice in " + c.name);
          c.states.push_back(s);
          if (is_kw("init")) {
            next();
            if (!c.init.empty()) fail_at(st, "DuplicateName", s, "two initial states in " + c.name);
            c.init = s;
          }
        } while (is_punct(",") && (next(), true));
        expect(";");
      } else if (is_kw("rule")) {
        next();
        Transition tr;
        tr.pre = ident();
        expect("-");
        tr.port = ident();
        expect("->");
        tr.post = ident();
        expect(";");
        c.rules.push_back(tr);
      } else {
        fail("ports, states, rule or '}'");
      }
    }
    expect("}");
    if (c.init.empty()) fail_at(nt, "SyntaxError", c.name, "component without an init state");
    return c;
  }

  SafetyQuery query() {
    expect_kw("check");
    SafetyQuery q;
    if (is_kw("deadlock")) {
      next();
      q.kind = SafetyQuery::Kind::Deadlock;
    } else if (is_kw("pattern")) {
      next();
      q.kind = SafetyQuery::Kind::StatePattern;
      do {
        std::string ty = ident();
        expect("@");
        std::string st = ident();
        q.pattern.emplace_back(ty, st);
      } while (is_punct(",") && (next(), true));
      expect_kw("distinct");
    } else {
      fail("deadlock or pattern");
    }
    expect(";");
    return q;
  }

  Rule rule() {
    const Token& ht = peek();
    Rule r;
    r.head = ident();
    if (component_names_.count(r.head))
      fail_at(ht, "DuplicateName", r.head, "rule head uses a component type name");
    expect("(");
    params_.clear();
    if (!is_punct(")")) {
      do {
        const Token& pt = peek();
        std::string x = ident();
        if (params_.count(x)) fail_at(pt, "DuplicateName", x, "repeated parameter");
        params_.insert(x);
        r.params.push_back(x);
      } while (is_punct(",") && (next(), true));
    }
    expect(")");
    expect("<-");
    r.body = alpha(term());
    expect(";");
    return r;
  }

  TermPtr term() {
    if (is_kw("new")) {
      next();
      std::vector<std::string> vs;
      vs.push_back(ident());
      while (!is_punct(".")) {
        if (is_punct(",")) next();
        vs.push_back(ident());
      }
      expect(".");
      return mk_nus(vs, term());
    }
    if (is_punct("<")) {
      next();
      ArchSpec g;
      if (!is_punct(">")) g = to_sop(arch());
      expect(">");
      expect("(");
      std::vector<TermPtr> args;
      args.push_back(term());
      while (is_punct(",")) {
        next();
        args.push_back(term());
      }
      expect(")");
      return mk_apply(g, std::move(args));
    }
    const Token& at = peek();
    std::string name = ident();
    expect("(");
    std::vector<std::string> syms;
    if (!is_punct(")")) {
      do syms.push_back(ident());
      while (is_punct(",") && (next(), true));
    }
    expect(")");
    if (component_names_.count(name)) {
      if (syms.size() != 1)
        fail_at(at, "ArityMismatch", name, "instance atoms take exactly one variable");
      return mk_instance(name, syms[0]);
    }
    return mk_pred(name, std::move(syms));
  }

  ArchExpr arch() {
    ArchExpr s;
    s.kind = ArchExpr::Kind::Sum;
    s.kids.push_back(prod());
    while (is_punct("+")) {
      next();
      s.kids.push_back(prod());
    }
    return s;
  }
  ArchExpr prod() {
    ArchExpr p;
    p.kind = ArchExpr::Kind::Prod;
    p.kids.push_back(factor());
    while (is_punct(".")) {
      next();
      p.kids.push_back(factor());
    }
    return p;
  }
  ArchExpr factor() {
    if (is_punct("(")) {
      next();
      ArchExpr e = arch();
      expect(")");
      return e;
    }
    ArchExpr e;
    e.kind = ArchExpr::Kind::Port;
    e.port.port = ident();
    expect("(");
    e.port.sym = ident();
    expect(")");
    return e;
  }

  std::string fresh(const std::string& v) {
    if (!claimed_.count(v) && !params_.count(v)) {
      claimed_.insert(v);
      return v;
    }
    for (int k = 1;; ++k) {
      std::string c = v + "_" + std::to_string(k);
      if (!claimed_.count(c) && !all_idents_.count(c) && !params_.count(c)) {
        claimed_.insert(c);
        return c;
      }
    }
  }

  TermPtr alpha(const TermPtr& t) { return alpha_rec(t, {}); }
  TermPtr alpha_rec(const TermPtr& t, const Substitution& env) {
    switch (t->kind) {
      case Term::Kind::Nu: {
        Substitution e2 = env;
        e2[t->name] = fresh(t->name);
        return mk_nu(e2[t->name], alpha_rec(t->body, e2));
      }
      case Term::Kind::Apply: {
        std::vector<TermPtr> args;
        for (const auto& a : t->args) args.push_back(alpha_rec(a, env));
        return mk_apply(t->arch.rename(env), std::move(args));
      }
      default:
        return apply_substitution(t, env);
    }
  }
};

void collect_preds(const TermPtr& t, std::vector<const Term*>& out) {
  switch (t->kind) {
    case Term::Kind::Pred:
      out.push_back(t.get());
      break;
    case Term::Kind::Nu:
      collect_preds(t->body, out);
      break;
    case Term::Kind::Apply:
      for (const auto& a : t->args) collect_preds(a, out);
      break;
    default:
      break;
  }
}

void collect_arch(const TermPtr& t, std::vector<const Term*>& out) {
  if (t->kind == Term::Kind::Apply) {
    out.push_back(t.get());
    for (const auto& a : t->args) collect_arch(a, out);
  } else if (t->kind == Term::Kind::Nu) {
    collect_arch(t->body, out);
  }
}

}  // namespace

ParseResult parse_spec(const std::string& text) {
  ParseResult r;
  try {
    Parser p(lex(text));
    r.spec = p.run();
  } catch (const ParseFailure& f) {
    r.diagnostics.push_back(f.diag);
  }
  return r;
}

// --------------------------------------------------------------- validate

std::vector<Diagnostic> validate_spec(const Spec& spec) {
  std::vector<Diagnostic> d;
  auto add = [&](const std::string& code, const std::string& subj, const std::string& msg) {
    d.push_back(Diagnostic{code, subj, msg, 0, 0});
  };

  std::map<std::string, std::string> port_owner, state_owner;
  std::set<std::string> type_names;
  for (const auto& c : spec.components) {
    if (!type_names.insert(c.name).second) add("DuplicateName", c.name, "component type declared twice");
    if (!c.has_state(c.init)) add("UnknownState", c.init, "initial state of " + c.name);
    for (const auto& p : c.ports) {
      auto [it, fresh] = port_owner.emplace(p, c.name);
      if (!fresh && it->second != c.name) add("NameClash", p, "port shared by " + it->second + " and " + c.name);
    }
    for (const auto& s : c.states) {
      auto [it, fresh] = state_owner.emplace(s, c.name);
      if (!fresh && it->second != c.name) add("NameClash", s, "state shared by " + it->second + " and " + c.name);
    }
    std::map<std::string, Transition> by_port;
    for (const auto& tr : c.rules) {
      if (!c.has_state(tr.pre)) add("UnknownState", tr.pre, "in a rule of " + c.name);
      if (!c.has_state(tr.post)) add("UnknownState", tr.post, "in a rule of " + c.name);
      if (!c.has_port(tr.port)) add("UnknownPort", tr.port, "in a rule of " + c.name);
      auto [it, fresh] = by_port.emplace(tr.port, tr);
      if (!fresh && !(it->second == tr))
        add("AssumptionViolation", tr.port, "port labels two different transitions of " + c.name);
    }
  }

  std::map<std::string, size_t> arity;
  for (const auto& r : spec.rules) {
    if (type_names.count(r.head)) add("DuplicateName", r.head, "predicate named like a component type");
    auto [it, fresh] = arity.emplace(r.head, r.params.size());
    if (!fresh && it->second != r.params.size())
      add("ArityMismatch", r.head, "rules disagree on the number of parameters");
  }

  std::set<std::string> used_ports;
  auto check_term = [&](const TermPtr& t, const std::vector<std::string>& params, const std::string& where) {
    std::vector<const Term*> preds;
    collect_preds(t, preds);
    for (const Term* p : preds) {
      auto it = arity.find(p->name);
      if (it == arity.end())
        add("UnknownPredicate", p->name, "used in " + where);
      else if (it->second != p->syms.size())
        add("ArityMismatch", p->name, "used with " + std::to_string(p->syms.size()) + " arguments in " + where);
    }
    std::set<std::string> ps(params.begin(), params.end());
    for (const auto& v : free_vars(t))
      if (!ps.count(v)) add("FreeVariableEscape", v, "free in " + where);
    std::set<std::string> seen;
    for (const auto& b : bound_vars(t)) {
      if (!seen.insert(b).second) add("DuplicateBinder", b, "bound twice in " + where);
      if (ps.count(b)) add("DuplicateBinder", b, "binder shadows a parameter in " + where);
    }
    // ports must exist, have a transition, and match the type of any
    // instance atom of the same body that carries the symbol
    std::map<std::string, std::string> inst_type;
    std::function<void(const TermPtr&)> insts = [&](const TermPtr& u) {
      if (u->kind == Term::Kind::Instance) inst_type[u->syms[0]] = u->name;
      if (u->kind == Term::Kind::Nu) insts(u->body);
      if (u->kind == Term::Kind::Apply)
        for (const auto& a : u->args) insts(a);
    };
    insts(t);
    for (const auto& [var, ty] : inst_type)
      if (!type_names.count(ty)) add("UnknownComponent", ty, "in " + where);
    std::vector<const Term*> apps;
    collect_arch(t, apps);
    for (const Term* a : apps)
      for (const auto& inter : a->arch.interactions())
        for (const auto& pr : inter) {
          used_ports.insert(pr.port);
          auto it = port_owner.find(pr.port);
          if (it == port_owner.end()) {
            add("UnknownPort", pr.port, "in " + where);
            continue;
          }
          auto jt = inst_type.find(pr.sym);
          if (jt != inst_type.end() && jt->second != it->second)
            add("PortTypeMismatch", pr.port, pr.sym + " is a " + jt->second + " in " + where);
        }
  };
  for (const auto& r : spec.rules) check_term(r.body, r.params, "rule " + r.head);
  if (spec.root) check_term(spec.root, {}, "root term");

  for (const auto& p : used_ports) {
    int o = spec.owner_of_port(p);
    if (o >= 0 && !spec.components[o].rule_for(p))
      add("PortWithoutTransition", p, "port used in an interaction but labels no transition");
  }

  for (const auto& q : spec.queries)
    for (const auto& [ty, st] : q.pattern) {
      const ComponentType* c = spec.component(ty);
      if (!c)
        add("UnknownComponent", ty, "in check pattern");
      else if (!c->has_state(st))
        add("UnknownState", st, "not a state of " + ty + " in check pattern");
    }
  return d;
}

// ------------------------------------------------------------ pretty-print

std::string pretty_print(const Spec& spec) {
  std::ostringstream os;
  auto join = [](const std::vector<std::string>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i];
    return s;
  };
  for (const auto& c : spec.components) {
    os << "component " << c.name << " {\n";
    os << "  ports " << join(c.ports) << ";\n";
    os << "  states ";
    for (size_t i = 0; i < c.states.size(); ++i)
      os << (i ? ", " : "") << c.states[i] << (c.states[i] == c.init ? " init" : "");
    os << ";\n";
    for (const auto& r : c.rules) os << "  rule " << r.pre << " -" << r.port << "-> " << r.post << ";\n";
    os << "}\n\n";
  }
  for (const auto& r : spec.rules)
    os << r.head << "(" << join(r.params) << ") <- " << term_to_string(r.body) << ";\n";
  if (!spec.rules.empty()) os << "\n";
  if (spec.root) os << "root " << term_to_string(spec.root) << ";\n";
  for (const auto& q : spec.queries) {
    if (q.kind == SafetyQuery::Kind::Deadlock) {
      os << "check deadlock;\n";
    } else {
      os << "check pattern ";
      for (size_t i = 0; i < q.pattern.size(); ++i)
        os << (i ? ", " : "") << q.pattern[i].first << "@" << q.pattern[i].second;
      os << " distinct;\n";
    }
  }
  return os.str();
}

Spec load_spec_text(const std::string& text) {
  ParseResult r = parse_spec(text);
  if (!r.spec) {
    const Diagnostic& d = r.diagnostics.at(0);
    throw Error(d.code, d.to_string());
  }
  auto diags = validate_spec(*r.spec);
  if (!diags.empty()) {
    std::string msg;
    for (const auto& d : diags) msg += (msg.empty() ? "" : "; ") + d.to_string();
    throw Error(diags[0].code, msg);
  }
  return *r.spec;
}

Spec load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("IOError", "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return load_spec_text(ss.str());
}

}  // namespace pav
