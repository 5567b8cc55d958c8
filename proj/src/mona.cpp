#include "pav/mona.hpp"

#include <sys/stat.h>
#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace pav {

namespace {

const std::set<std::string>& keywords() {
  static const std::set<std::string> k = {
      "all0", "all1", "all2", "allpos", "assert", "const", "defaultwhere1", "defaultwhere2", "empty", "ex0",
      "ex1", "ex2", "execute", "export", "false", "guide", "import", "in", "in_state_space", "inter", "lastpos",
      "let0", "let1", "let2", "m2l-str", "m2l-tree", "macro", "max", "min", "notin", "pred", "prefix", "restrict",
      "root", "sub", "succ", "tree", "tree_root", "true", "type", "union", "universe", "var0", "var1", "var2",
      "variant", "where", "ws1s", "ws2s"};
  return k;
}

void collect_names(const FormulaPtr& f, std::set<std::string>& out) {
  if (!f->t1.var.empty()) out.insert(f->t1.var);
  if (!f->t2.var.empty()) out.insert(f->t2.var);
  if (!f->var.empty()) out.insert(f->var);
  for (const auto& k : f->kids) collect_names(k, out);
}

FTerm rename_term(const FTerm& t, const std::map<std::string, std::string>& m) {
  FTerm r = t;
  auto it = m.find(t.var);
  if (it != m.end()) r.var = it->second;
  return r;
}

FormulaPtr rename_all(const FormulaPtr& f, const std::map<std::string, std::string>& m) {
  auto nm = [&](const std::string& v) {
    auto it = m.find(v);
    return it == m.end() ? v : it->second;
  };
  std::vector<FormulaPtr> ks;
  for (const auto& k : f->kids) ks.push_back(rename_all(k, m));
  switch (f->kind) {
    case FK::True:
      return f_true();
    case FK::False:
      return f_false();
    case FK::Eq:
      return f_eq(rename_term(f->t1, m), rename_term(f->t2, m));
    case FK::In:
      return f_in(nm(f->var), rename_term(f->t1, m));
    case FK::Not:
      return f_not(ks[0]);
    case FK::And:
      return f_and(ks);
    case FK::Or:
      return f_or(ks);
    case FK::Implies:
      return f_implies(ks[0], ks[1]);
    case FK::Iff:
      return f_iff(ks[0], ks[1]);
    case FK::Ex1:
      return f_ex1(nm(f->var), ks[0]);
    case FK::All1:
      return f_all1(nm(f->var), ks[0]);
    case FK::Ex2:
      return f_ex2(nm(f->var), ks[0]);
    case FK::All2:
      return f_all2(nm(f->var), ks[0]);
  }
  return f;
}

FormulaPtr sanitize(const FormulaPtr& f) {
  FormulaPtr g = rename_apart(f);
  std::set<std::string> names;
  collect_names(g, names);
  std::map<std::string, std::string> m;
  for (const auto& n : names) {
    if (!keywords().count(n)) continue;
    std::string c = n + "_";
    while (names.count(c) || keywords().count(c)) c += "_";
    names.insert(c);
    m[n] = c;
  }
  return m.empty() ? g : rename_all(g, m);
}

class Emitter {
 public:
  explicit Emitter(MonaMode mode) : mode_(mode) {}

  std::string term(const FTerm& t) const {
    int limit = mode_ == MonaMode::WS1S ? 1 : 2;
    for (int a : t.succ)
      if (a >= limit)
        throw Error("UnsupportedArity", "succ_" + std::to_string(a) + " does not exist in " + mode_name(mode_));
    if (mode_ == MonaMode::WS1S) {
      int k = static_cast<int>(t.succ.size());
      if (t.var.empty()) return std::to_string(k);
      return k == 0 ? t.var : t.var + "+" + std::to_string(k);
    }
    std::string s = t.var.empty() ? "root" : t.var;
    for (int a : t.succ) s += "." + std::to_string(a);
    return s;
  }

  void formula(const FormulaPtr& f, std::string& out) const {
    switch (f->kind) {
      case FK::True:
        out += "true";
        return;
      case FK::False:
        out += "false";
        return;
      case FK::Eq:
        out += term(f->t1) + " = " + term(f->t2);
        return;
      case FK::In:
        out += term(f->t1) + " in " + f->var;
        return;
      case FK::Not:
        out += "(~";
        formula(f->kids[0], out);
        out += ")";
        return;
      case FK::And:
      case FK::Or:
      case FK::Implies:
      case FK::Iff: {
        const char* op = f->kind == FK::And ? " & " : f->kind == FK::Or ? " | " : f->kind == FK::Implies ? " => " : " <=> ";
        out += "(";
        for (size_t i = 0; i < f->kids.size(); ++i) {
          if (i) out += op;
          formula(f->kids[i], out);
        }
        out += ")";
        return;
      }
      default: {
        const char* q = f->kind == FK::Ex1 ? "ex1 " : f->kind == FK::All1 ? "all1 " : f->kind == FK::Ex2 ? "ex2 " : "all2 ";
        out += "(";
        out += q;
        out += f->var + ": ";
        formula(f->kids[0], out);
        out += ")";
      }
    }
  }

 private:
  MonaMode mode_;
};

std::string join(const std::set<std::string>& xs) {
  std::string s;
  for (const auto& x : xs) s += (s.empty() ? "" : ", ") + x;
  return s;
}

// -- reader -----------------------------------------------------------------

class Reader {
 public:
  Reader(const std::string& text) : s_(text) {}

  MonaFile file() {
    MonaFile m;
    std::string h = word();
    if (h == "ws1s")
      m.mode = MonaMode::WS1S;
    else if (h == "ws2s")
      m.mode = MonaMode::WS2S;
    else
      fail("expected ws1s or ws2s");
    mode_ = m.mode;
    expect(";");
    for (;;) {
      size_t save = i_;
      std::string w = peek_word();
      if (w != "var1" && w != "var2") {
        i_ = save;
        break;
      }
      word();
      auto& dst = w == "var1" ? m.var1 : m.var2;
      dst.push_back(word());
      while (accept(",")) dst.push_back(word());
      expect(";");
    }
    m.body = formula();
    expect(";");
    skip();
    if (i_ != s_.size()) fail("trailing text");
    return m;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error("ParseError", msg + " at offset " + std::to_string(i_));
  }
  void skip() {
    while (i_ < s_.size()) {
      if (std::isspace(static_cast<unsigned char>(s_[i_]))) {
        ++i_;
      } else if (s_[i_] == '#') {
        while (i_ < s_.size() && s_[i_] != '\n') ++i_;
      } else {
        break;
      }
    }
  }
  static bool word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
  std::string peek_word() {
    skip();
    size_t j = i_;
    while (j < s_.size() && word_char(s_[j])) ++j;
    return s_.substr(i_, j - i_);
  }
  std::string word() {
    std::string w = peek_word();
    if (w.empty()) fail("expected a name");
    i_ += w.size();
    return w;
  }
  bool accept(const std::string& p) {
    skip();
    if (s_.compare(i_, p.size(), p) == 0) {
      i_ += p.size();
      return true;
    }
    return false;
  }
  void expect(const std::string& p) {
    if (!accept(p)) fail("expected '" + p + "'");
  }

  FTerm term() {
    std::string w = word();
    FTerm t;
    if (mode_ == MonaMode::WS1S) {
      if (std::isdigit(static_cast<unsigned char>(w[0]))) {
        t.succ.assign(std::stoi(w), 0);
        return t;
      }
      t.var = w;
      skip();
      if (accept("+")) t.succ.assign(std::stoi(word()), 0);
      return t;
    }
    if (w != "root") t.var = w;
    while (i_ < s_.size() && s_[i_] == '.') {
      ++i_;
      std::string d = word();
      if (d != "0" && d != "1") fail("bad successor");
      t.succ.push_back(d[0] - '0');
    }
    return t;
  }

  FormulaPtr atom() {
    std::string w = peek_word();
    if (w == "true") {
      word();
      return f_true();
    }
    if (w == "false") {
      word();
      return f_false();
    }
    FTerm a = term();
    if (accept("=")) return f_eq(a, term());
    if (peek_word() == "in") {
      word();
      return f_in(word(), a);
    }
    fail("expected '=' or 'in'");
  }

  FormulaPtr formula() {
    if (!accept("(")) return atom();
    if (accept("~")) {
      FormulaPtr a = formula();
      expect(")");
      return f_not(a);
    }
    size_t save = i_;
    std::string w = peek_word();
    if (w == "ex1" || w == "all1" || w == "ex2" || w == "all2") {
      word();
      std::string v = word();
      expect(":");
      FormulaPtr b = formula();
      expect(")");
      if (w == "ex1") return f_ex1(v, b);
      if (w == "all1") return f_all1(v, b);
      if (w == "ex2") return f_ex2(v, b);
      return f_all2(v, b);
    }
    i_ = save;
    std::vector<FormulaPtr> ks{formula()};
    std::string op;
    for (const char* o : {"<=>", "=>", "&", "|"}) {
      skip();
      if (s_.compare(i_, std::string(o).size(), o) == 0) {
        op = o;
        break;
      }
    }
    if (op.empty()) fail("expected a connective");
    while (accept(op)) ks.push_back(formula());
    expect(")");
    if (op == "&") return f_and(ks);
    if (op == "|") return f_or(ks);
    if (ks.size() != 2) fail("binary connective with " + std::to_string(ks.size()) + " operands");
    return op == "=>" ? f_implies(ks[0], ks[1]) : f_iff(ks[0], ks[1]);
  }

  const std::string& s_;
  size_t i_ = 0;
  MonaMode mode_ = MonaMode::WS1S;
};

bool executable(const std::string& p) {
  struct stat st;
  return !p.empty() && ::stat(p.c_str(), &st) == 0 && S_ISREG(st.st_mode) && ::access(p.c_str(), X_OK) == 0;
}

std::string shell_quote(const std::string& s) {
  std::string r = "'";
  for (char c : s) r += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return r + "'";
}

}  // namespace

std::string mode_name(MonaMode m) { return m == MonaMode::WS1S ? "ws1s" : "ws2s"; }

MonaMode mode_for_kappa(int kappa) {
  if (kappa <= 1) return MonaMode::WS1S;
  if (kappa == 2) return MonaMode::WS2S;
  throw Error("UnsupportedArity", "no solver logic for " + std::to_string(kappa) + " successors");
}

std::string emit_mona(const FormulaPtr& f, MonaMode mode) {
  FormulaPtr g = sanitize(f);
  Emitter e(mode);
  std::string out = mode_name(mode) + ";\n";
  auto fo = free_fo(g);
  auto so = free_so(g);
  if (!fo.empty()) out += "var1 " + join(fo) + ";\n";
  if (!so.empty()) out += "var2 " + join(so) + ";\n";
  e.formula(g, out);
  out += ";\n";
  return out;
}

MonaFile parse_mona(const std::string& text) { return Reader(text).file(); }

std::string find_mona(const std::string& flag_path) {
  if (!flag_path.empty()) return executable(flag_path) ? flag_path : "";
  if (const char* env = std::getenv("MONA_BIN")) return executable(env) ? env : "";
  const char* path = std::getenv("PATH");
  if (!path) return "";
  std::stringstream ss(path);
  std::string dir;
  while (std::getline(ss, dir, ':')) {
    std::string p = (dir.empty() ? "." : dir) + "/mona";
    if (executable(p)) return p;
  }
  return "";
}

SolverResult run_solver(const std::string& text, const std::string& flag_path, int timeout_secs) {
  SolverResult r;
  r.binary = find_mona(flag_path);
  if (r.binary.empty()) {
    r.error = "SolverNotFound";
    r.output = "no mona binary (use --mona-path or MONA_BIN)";
    return r;
  }
  char tmpl[] = "/tmp/pav_XXXXXX.mona";
  int fd = ::mkstemps(tmpl, 5);
  if (fd < 0) {
    r.error = "SolverFailed";
    r.output = "cannot create a temporary file";
    return r;
  }
  ::close(fd);
  {
    std::ofstream os(tmpl);
    os << text;
  }
  std::string cmd = "timeout " + std::to_string(timeout_secs) + " " + shell_quote(r.binary) + " " + shell_quote(tmpl) + " 2>&1";
  auto t0 = std::chrono::steady_clock::now();
  FILE* p = ::popen(cmd.c_str(), "r");
  if (!p) {
    ::unlink(tmpl);
    r.error = "SolverFailed";
    return r;
  }
  std::array<char, 4096> buf;
  size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.output.append(buf.data(), n);
  int status = ::pclose(p);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  ::unlink(tmpl);
  if (WIFEXITED(status) && WEXITSTATUS(status) == 124) {
    r.error = "Timeout";
    return r;
  }
  if (r.output.find("unsatisfiable") != std::string::npos) {
    r.kind = SolverResult::Kind::Unsat;
  } else if (r.output.find("satisfying example") != std::string::npos || r.output.find("valid") != std::string::npos) {
    r.kind = SolverResult::Kind::Sat;
  } else {
    r.error = "ParseError";
  }
  return r;
}

}  // namespace pav
