#include "pav/commands.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "pav/builders.hpp"
#include "pav/crosscheck.hpp"
#include "pav/dsl.hpp"
#include "pav/mona.hpp"
#include "pav/normalize.hpp"
#include "pav/path_automata.hpp"
#include "pav/rewriting.hpp"

namespace pav {

using json = nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string interaction_string(const GroundInteraction& gi) {
  std::string s = "{";
  for (const auto& p : gi) s += (s.size() > 1 ? ", " : "") + p.port + "(" + node_name(p.sym) + ")";
  return s + "}";
}

json interaction_json(const GroundInteraction& gi) {
  json a = json::array();
  for (const auto& p : gi) a.push_back({p.port, node_name(p.sym)});
  return a;
}

std::string place_string(const Place& p) { return p.second + "@" + node_name(p.first); }

json places_json(const PlaceSet& ps) {
  json a = json::array();
  for (const auto& p : ps) a.push_back(place_string(p));
  return a;
}

json config_json(const Behavior& b, const Configuration& s) {
  json o = json::object();
  for (const auto& [n, st] : b.named(s)) o[node_name(n)] = st;
  return o;
}

json tree_json(const RewritingSystem& rs, const RewritingTree& t) {
  json o = json::object();
  for (const auto& [w, r] : t.label) o[node_name(w)] = rs.rules[r].head + "#" + std::to_string(r + 1);
  return o;
}

std::string query_string(const SafetyQuery& q) {
  if (q.kind == SafetyQuery::Kind::Deadlock) return "deadlock";
  std::string s = "pattern";
  for (const auto& [ty, st] : q.pattern) s += " " + ty + "@" + st;
  return s;
}

struct Ctx {
  explicit Ctx(const CommandOptions& o) : opt(o) {}
  const CommandOptions& opt;
  json result = json::object();
  json stats = json::object();
  json timing = json::object();
  json diagnostics = json::array();
  std::vector<std::pair<std::string, std::string>> rows;  // human summary
  std::vector<std::string> lines;                        // human details
  std::string verdict = "ok";

  void row(const std::string& k, const std::string& v) { rows.push_back({k, v}); }
  void diag(const std::string& code, const std::string& msg, const std::string& subject = "", int line = 0, int col = 0) {
    json d = {{"code", code}, {"message", msg}};
    if (!subject.empty()) d["subject"] = subject;
    if (line > 0) {
      d["line"] = line;
      d["col"] = col;
    }
    diagnostics.push_back(d);
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("IOError", "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Spec load(Ctx& c) {
  if (c.opt.spec.empty()) throw Error("UsageError", "missing spec file");
  ParseResult pr = parse_spec(read_file(c.opt.spec));
  std::vector<Diagnostic> ds = pr.diagnostics;
  if (pr.spec && ds.empty()) ds = validate_spec(*pr.spec);
  if (!ds.empty()) {
    for (const auto& d : ds) c.diag(d.code, d.message, d.subject, d.line, d.col);
    throw Error(ds[0].code, ds[0].to_string());
  }
  return *pr.spec;
}

RewritingSystem normalized(Ctx& c, const Spec& s) {
  auto t0 = Clock::now();
  Normalized n = normalize_spec(s);
  c.timing["normalize_seconds"] = since(t0);
  c.stats["rules"] = n.system.size();
  c.stats["branching_degree"] = branching_degree(n.system);
  return n.system;
}

int tree_budget(const CommandOptions& o) { return o.max_nodes > 0 ? o.max_nodes : 12; }

RewritingTree chosen_tree(Ctx& c, const RewritingSystem& rs) {
  if (c.opt.tree >= 0) {
    auto ts = enumerate_trees(rs, tree_budget(c.opt));
    if (c.opt.tree >= static_cast<int>(ts.size()))
      throw Error("UsageError", "only " + std::to_string(ts.size()) + " trees with at most " + std::to_string(tree_budget(c.opt)) + " nodes");
    return ts[c.opt.tree];
  }
  int n = c.opt.size > 0 ? c.opt.size : kFallbackMinSize;
  auto t = tree_with_size(rs, n);
  if (!t) throw Error("NoSuchSize", "no rewriting tree yields " + std::to_string(n) + " instances of " + rs.components[0].name);
  return *t;
}

const SafetyQuery& the_query(const RewritingSystem& rs) {
  static const SafetyQuery deadlock;
  return rs.queries.empty() ? deadlock : rs.queries[0];
}

// ---- check / normalize / unfold ------------------------------------------

void cmd_check(Ctx& c) {
  Spec s = load(c);
  c.result["components"] = s.components.size();
  c.result["rules"] = s.rules.size();
  json qs = json::array();
  for (const auto& q : s.queries) qs.push_back(query_string(q));
  c.result["queries"] = qs;
  c.row("components", std::to_string(s.components.size()));
  c.row("rules", std::to_string(s.rules.size()));
  c.row("queries", std::to_string(s.queries.size()));
}

void cmd_normalize(Ctx& c) {
  Spec s = load(c);
  Normalized n = normalize_spec(s);
  const RewritingSystem& rs = n.system;
  c.stats["rules"] = rs.size();
  c.stats["branching_degree"] = branching_degree(rs);
  json rules = json::array();
  for (int i = 0; i < rs.size(); ++i) {
    const RSRule& r = rs.rules[i];
    rules.push_back({{"index", i + 1},
                     {"head", r.head},
                     {"params", r.params},
                     {"wrapper", r.wrapper},
                     {"body", term_to_string(body_to_term(r.body))}});
    std::string ps;
    for (const auto& p : r.params) ps += (ps.empty() ? "" : ", ") + p;
    c.lines.push_back(std::to_string(i + 1) + ". " + r.head + "(" + ps + ") <- " + term_to_string(body_to_term(r.body)));
  }
  c.result["rules"] = rules;
  json up = json::object();
  for (const auto& [p, pos] : n.upsilon) up[p] = std::vector<int>(pos.begin(), pos.end());
  c.result["profiles"] = up;
  Assumption1Result a1 = check_assumption1(rs, n.upsilon);
  c.result["single_instantiation"] = a1.ok;
  if (!a1.ok) c.diag("AssumptionViolation", a1.reason, a1.var);
  c.result["text"] = pretty_print(system_to_spec(rs));
  c.row("rules", std::to_string(rs.size()));
  c.row("branching degree", std::to_string(branching_degree(rs)));
}

void cmd_unfold(Ctx& c) {
  Spec s = load(c);
  RewritingSystem rs = normalized(c, s);
  auto t0 = Clock::now();
  auto trees = enumerate_trees(rs, tree_budget(c.opt));
  c.timing["enumerate_seconds"] = since(t0);
  json arr = json::array();
  for (const auto& t : trees) {
    GroundSystem g = ground_system(rs, t);
    json nodes = json::array(), edges = json::array(), inst = json::object(), inter = json::array();
    for (const auto& w : t.nodes()) {
      nodes.push_back(node_name(w));
      if (!w.empty()) edges.push_back(node_name(parent(w)) + " -> " + node_name(w));
    }
    for (const auto& [n, ty] : g.instances) inst[node_name(n)] = ty;
    for (const auto& gi : g.arch) inter.push_back(interaction_json(gi));
    json j = {{"nodes", nodes}, {"edges", edges}, {"labels", tree_json(rs, t)}, {"instances", inst}, {"interactions", inter}};
    c.lines.push_back(j.dump());
    arr.push_back(j);
  }
  c.result["trees"] = arr;
  c.stats["trees_enumerated"] = trees.size();
  c.row("max nodes", std::to_string(tree_budget(c.opt)));
  c.row("trees", std::to_string(trees.size()));
}

// ---- ground verification -------------------------------------------------

struct GroundRun {
  int size = 0;
  GroundVerdict v;
  json j;
};

GroundRun ground_run(Ctx& c, const RewritingSystem& rs, const RewritingTree& t) {
  GroundSystem g = ground_system(rs, t);
  Behavior b(g, rs.components);
  GroundRun r;
  r.size = family_size(rs, g);
  r.v = verify_ground(b, the_query(rs), c.opt.limit);
  json j;
  j["size"] = r.size;
  j["tree"] = tree_json(rs, t);
  j["instances"] = b.n_instances();
  j["interactions"] = b.interactions().size();
  j["explored"] = r.v.explored;
  j["trap_method"] = r.v.trap_proved ? "safe-proved" : "inconclusive";
  j["exact"] = r.v.exact_safe ? (*r.v.exact_safe ? "safe" : "unsafe") : "overflow";
  json w = json::array();
  for (const auto& gi : r.v.witness) w.push_back({{"interaction", interaction_json(gi)}});
  if (r.v.kind == GroundVerdict::Kind::UnsafeWitness) j["witness"] = w;
  if (r.v.bad_in_theta) j["trap_counterexample"] = config_json(b, *r.v.bad_in_theta);
  r.j = j;
  return r;
}

std::string ground_verdict(const GroundVerdict& v) {
  if (v.kind == GroundVerdict::Kind::UnsafeWitness) return "unsafe-witness";
  if (v.exact_safe && *v.exact_safe) return "safe-proved";
  return "inconclusive";
}

// Ground runs over a range of sizes.  Unsafe if any size is unsafe.
std::string ground_sweep(Ctx& c, const RewritingSystem& rs, int lo, int hi, json& runs) {
  bool unsafe = false, all_safe = true;
  long explored = 0;
  for (int n = lo; n <= hi; ++n) {
    auto t = tree_with_size(rs, n);
    if (!t) {
      runs.push_back({{"size", n}, {"skipped", "no tree with this size"}});
      c.lines.push_back("size " + std::to_string(n) + ": no tree");
      continue;
    }
    GroundRun r = ground_run(c, rs, *t);
    explored += r.v.explored;
    std::string gv = ground_verdict(r.v);
    r.j["verdict"] = gv;
    runs.push_back(r.j);
    c.lines.push_back("size " + std::to_string(n) + ": " + gv + " (explored " + std::to_string(r.v.explored) +
                      ", trap method " + (r.v.trap_proved ? "proves it" : "inconclusive") + ")");
    if (gv == "unsafe-witness") unsafe = true;
    if (gv != "safe-proved") all_safe = false;
  }
  c.stats["configurations_explored"] = explored;
  if (unsafe) return "unsafe-witness";
  return all_safe ? "safe-proved" : "inconclusive";
}

void cmd_verify_ground(Ctx& c) {
  Spec s = load(c);
  RewritingSystem rs = normalized(c, s);
  c.result["query"] = query_string(the_query(rs));
  auto t0 = Clock::now();
  if (c.opt.size > 0 || c.opt.tree >= 0) {
    RewritingTree t = chosen_tree(c, rs);
    GroundRun r = ground_run(c, rs, t);
    c.verdict = ground_verdict(r.v);
    c.result["run"] = r.j;
    c.result["method"] = r.v.trap_proved ? "trap-invariant" : "exact";
    c.stats["configurations_explored"] = r.v.explored;
    c.row("size", std::to_string(r.size));
    c.row("instances", std::to_string(r.j["instances"].get<int>()));
    c.row("explored", std::to_string(r.v.explored));
    c.row("trap method", r.v.trap_proved ? "safe-proved" : "inconclusive");
    for (const auto& gi : r.v.witness) c.lines.push_back("  fire " + interaction_string(gi));
  } else {
    json runs = json::array();
    c.verdict = ground_sweep(c, rs, kFallbackMinSize, kFallbackMaxSize, runs);
    c.result["runs"] = runs;
  }
  c.timing["ground_seconds"] = since(t0);
}

void cmd_traps(Ctx& c) {
  Spec s = load(c);
  RewritingSystem rs = normalized(c, s);
  RewritingTree t = chosen_tree(c, rs);
  GroundSystem g = ground_system(rs, t);
  Behavior b(g, rs.components);
  c.result["tree"] = tree_json(rs, t);
  PlaceSet all = b.all_places();
  PlaceSet maxi = b.maximal_trap_within(all);
  c.result["maximal_trap"] = places_json(maxi);
  std::vector<Place> pl(all.begin(), all.end());
  const int kMaxPlaces = 16;
  if (static_cast<int>(pl.size()) > kMaxPlaces) {
    c.diag("TooLarge", std::to_string(pl.size()) + " places, minimal traps are listed up to " + std::to_string(kMaxPlaces));
    c.result["minimal_marked_traps"] = nullptr;
  } else {
    std::vector<unsigned> found;
    std::vector<unsigned> masks;
    for (unsigned m = 1; m < (1u << pl.size()); ++m) masks.push_back(m);
    std::stable_sort(masks.begin(), masks.end(), [](unsigned a, unsigned b) { return __builtin_popcount(a) < __builtin_popcount(b); });
    json arr = json::array();
    for (unsigned m : masks) {
      bool super = false;
      for (unsigned f : found)
        if ((f & m) == f) super = true;
      if (super) continue;
      PlaceSet th;
      for (size_t i = 0; i < pl.size(); ++i)
        if (m >> i & 1) th.insert(pl[i]);
      if (!b.is_trap(th) || !b.is_marked(th)) continue;
      found.push_back(m);
      arr.push_back(places_json(th));
      std::string line;
      for (const auto& p : th) line += (line.empty() ? "" : ", ") + place_string(p);
      c.lines.push_back("  {" + line + "}");
    }
    c.result["minimal_marked_traps"] = arr;
    c.stats["minimal_marked_traps"] = found.size();
  }
  std::optional<Configuration> cex;
  bool proved = trap_method_proves(b, the_query(rs), &cex);
  c.result["trap_method"] = proved ? "safe-proved" : "inconclusive";
  if (cex) c.result["trap_counterexample"] = config_json(b, *cex);
  c.row("instances", std::to_string(b.n_instances()));
  c.row("places", std::to_string(pl.size()));
  c.row("trap method", proved ? "safe-proved" : "inconclusive");
}

// ---- symbolic ------------------------------------------------------------

struct Emitted {
  std::string text;
  MonaMode mode;
  long size;
};

Emitted emit_safe(Ctx& c, const RewritingSystem& rs) {
  FormulaBuilder fb(rs);
  auto t0 = Clock::now();
  FormulaPtr safe = fb.safe(the_query(rs));
  Emitted e;
  e.mode = mode_for_kappa(fb.kappa());
  e.text = emit_mona(safe, e.mode);
  e.size = formula_size(safe);
  c.timing["emit_seconds"] = since(t0);
  c.stats["formula_size"] = e.size;
  json fv = json::array();
  for (const auto& v : free_so(safe)) fv.push_back(v);
  c.result["free_variables"] = fv;
  c.result["logic"] = mode_name(e.mode);
  c.row("logic", mode_name(e.mode));
  c.row("formula size", std::to_string(e.size));
  return e;
}

void cmd_emit(Ctx& c) {
  Spec s = load(c);
  RewritingSystem rs = normalized(c, s);
  Emitted e = emit_safe(c, rs);
  c.result["bytes"] = e.text.size();
  if (!c.opt.output.empty()) {
    std::ofstream os(c.opt.output);
    if (!os) throw Error("IOError", "cannot write " + c.opt.output);
    os << e.text;
    c.result["output"] = c.opt.output;
    c.row("written to", c.opt.output);
  } else {
    c.result["text"] = e.text;
    c.lines.push_back(e.text);
  }
}

void cmd_verify(Ctx& c) {
  Spec s = load(c);
  RewritingSystem rs = normalized(c, s);
  c.result["query"] = query_string(the_query(rs));
  Emitted e = emit_safe(c, rs);
  SolverResult sr = run_solver(e.text, c.opt.mona_path, c.opt.solver_timeout);
  c.timing["solver_seconds"] = sr.seconds;
  if (sr.error == "SolverNotFound") {
    c.diag("SolverNotFound", sr.output);
    c.result["solver"] = "absent";
    c.result["banner"] = "bounded evidence only";
    c.lines.push_back("*** no solver: bounded evidence only, sizes " + std::to_string(kFallbackMinSize) + ".." +
                      std::to_string(kFallbackMaxSize) + " ***");
    json runs = json::array();
    std::string gv = ground_sweep(c, rs, kFallbackMinSize, kFallbackMaxSize, runs);
    c.result["runs"] = runs;
    // finitely many sizes never prove the parametric property
    c.verdict = gv == "unsafe-witness" ? gv : "inconclusive";
    c.result["method"] = "bounded";
    return;
  }
  c.result["solver"] = sr.binary;
  if (!sr.error.empty()) {
    c.diag(sr.error == "Timeout" ? "SolverError" : sr.error, sr.error + ": " + sr.output.substr(0, 400));
    c.verdict = "error";
    return;
  }
  if (sr.kind == SolverResult::Kind::Unsat) {
    c.verdict = "safe-proved";
    c.result["method"] = "solver";
    c.row("solver", "unsatisfiable");
    return;
  }
  c.result["candidate"] = sr.output;
  c.row("solver", "satisfiable");
  json runs = json::array();
  std::string gv = ground_sweep(c, rs, kFallbackMinSize, kFallbackMaxSize, runs);
  c.result["runs"] = runs;
  c.verdict = gv == "unsafe-witness" ? gv : "inconclusive";
  c.result["method"] = "solver";
}

void cmd_oracle_check(Ctx& c) {
  Spec s = load(c);
  RewritingSystem rs = normalized(c, s);
  CrosscheckOptions co;
  if (c.opt.max_nodes > 0) co.max_nodes = c.opt.max_nodes;
  co.trapinv_max_nodes = std::min(co.max_nodes, co.trapinv_max_nodes);
  co.suites = c.opt.suites;
  json arr = json::array();
  bool ok = true;
  double total = 0;
  for (const auto& r : run_crosschecks(rs, co)) {
    arr.push_back({{"suite", r.name}, {"checks", r.checks}, {"failures", r.failures}, {"skipped", r.skipped}, {"examples", r.examples},
                   {"passed", r.passed()}});
    total += r.seconds;
    ok = ok && r.passed();
    std::ostringstream ln;
    ln << std::left << std::setw(16) << r.name << (r.passed() ? " pass " : " FAIL ") << r.checks << " checks, " << r.failures
       << " failures, " << r.skipped << " skipped";
    c.lines.push_back(ln.str());
    for (const auto& ex : r.examples) c.diag("CrosscheckFailed", r.name + ": " + ex);
  }
  c.timing["crosscheck_seconds"] = total;
  c.result["suites"] = arr;
  c.verdict = ok ? "ok" : "error";
}

std::pair<int, std::string> site(const std::string& s) {
  auto colon = s.find_first_of(".:");
  if (colon == std::string::npos) throw Error("UsageError", "expected <rule>.<variable>, got " + s);
  return {std::stoi(s.substr(0, colon)) - 1, s.substr(colon + 1)};
}

void cmd_paths(Ctx& c) {
  Spec s = load(c);
  RewritingSystem rs = normalized(c, s);
  auto [r1, z1] = site(c.opt.from);
  auto [r2, z2] = site(c.opt.to);
  if (r1 < 0 || r1 >= rs.size() || r2 < 0 || r2 >= rs.size()) throw Error("UsageError", "rule index out of range");
  PathAutomaton a = build_path_automaton(rs, r1, z1, r2, z2);
  json st = json::array(), tr = json::array(), in = json::array(), fi = json::array();
  for (size_t q = 0; q < a.states.size(); ++q) st.push_back(a.state_name(static_cast<int>(q)));
  for (int q : a.initial) in.push_back(a.state_name(q));
  for (int q : a.final) fi.push_back(a.state_name(q));
  for (const auto& d : a.delta) {
    std::string lbl = std::to_string(d.alpha) + (d.up ? "^" : "v");
    tr.push_back({a.state_name(d.from), lbl, a.state_name(d.to)});
    c.lines.push_back("  " + a.state_name(d.from) + " --" + lbl + "--> " + a.state_name(d.to));
  }
  c.result["states"] = st;
  c.result["initial"] = in;
  c.result["final"] = fi;
  c.result["transitions"] = tr;
  c.row("states", std::to_string(a.states.size()));
  c.row("transitions", std::to_string(a.delta.size()));
  if (c.opt.tree >= 0) {
    RewritingTree t = chosen_tree(c, rs);
    json acc = json::array();
    for (const auto& [w1, l1] : t.label)
      for (const auto& [w2, l2] : t.label)
        if (l1 == r1 && l2 == r2 && accepts_on_tree(a, t, w1, w2))
          acc.push_back({node_name(w1), node_name(w2), path_to_string(tree_path_directions(t, w1, w2))});
    c.result["accepted_pairs"] = acc;
  }
}

void cmd_corpus_list(Ctx& c) {
  std::string dir = c.opt.corpus_dir.empty() ? std::string(PAV_CORPUS_DIR) : c.opt.corpus_dir;
  std::vector<std::string> files;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.path().extension() == ".pas" && !e.is_symlink()) files.push_back(e.path().string());  // tll.pas is an alias
  std::sort(files.begin(), files.end());
  json arr = json::array();
  for (const auto& f : files) {
    json j = {{"file", std::filesystem::path(f).filename().string()}};
    try {
      Spec s = load_spec_file(f);
      Normalized n = normalize_spec(s);
      j["components"] = s.components.size();
      j["rules"] = n.system.size();
      j["branching_degree"] = branching_degree(n.system);
      j["loadable"] = true;
    } catch (const Error& e) {
      j["loadable"] = false;
      j["error"] = e.code();
      c.diag(e.code(), e.what(), f);
      c.verdict = "error";
    }
    std::ostringstream ln;
    ln << std::left << std::setw(26) << j["file"].get<std::string>()
       << (j["loadable"].get<bool>() ? "rules " + std::to_string(j["rules"].get<int>()) + ", kappa " + std::to_string(j["branching_degree"].get<int>())
                                     : "error");
    c.lines.push_back(ln.str());
    arr.push_back(j);
  }
  c.result["specs"] = arr;
  c.row("specs", std::to_string(files.size()));
}

}  // namespace

int exit_code_for(const std::string& verdict) {
  if (verdict == "ok" || verdict == "safe-proved") return 0;
  if (verdict == "unsafe-witness") return 1;
  if (verdict == "inconclusive") return 2;
  return 3;
}

CommandResult run_command(const CommandOptions& opt) {
  Ctx c(opt);
  auto t0 = Clock::now();
  try {
    const std::string& k = opt.command;
    if (k == "check")
      cmd_check(c);
    else if (k == "normalize")
      cmd_normalize(c);
    else if (k == "unfold")
      cmd_unfold(c);
    else if (k == "verify-ground")
      cmd_verify_ground(c);
    else if (k == "traps")
      cmd_traps(c);
    else if (k == "emit")
      cmd_emit(c);
    else if (k == "verify")
      cmd_verify(c);
    else if (k == "oracle-check")
      cmd_oracle_check(c);
    else if (k == "paths")
      cmd_paths(c);
    else if (k == "corpus-list")
      cmd_corpus_list(c);
    else
      throw Error("UsageError", "unknown command " + k);
  } catch (const Error& e) {
    bool seen = false;
    for (const auto& d : c.diagnostics) seen = seen || d["code"] == e.code();
    std::string msg = e.what();
    if (msg.rfind(e.code() + ": ", 0) == 0) msg = msg.substr(e.code().size() + 2);
    if (!seen) c.diag(e.code(), msg);
    c.verdict = "error";
  } catch (const std::exception& e) {
    c.diag("InternalError", e.what());
    c.verdict = "error";
  }
  c.timing["total_seconds"] = since(t0);

  CommandResult r;
  r.verdict = c.verdict;
  r.exit_code = exit_code_for(c.verdict);
  json j;
  j["command"] = opt.command;
  j["spec"] = opt.spec.empty() ? json(nullptr) : json(opt.spec);
  j["verdict"] = c.verdict;
  j["exit_code"] = r.exit_code;
  j["statistics"] = c.stats;
  j["diagnostics"] = c.diagnostics;
  j["result"] = c.result;
  j["timing"] = c.timing;
  r.json = j.dump(2);

  std::ostringstream h;
  auto line = [&](const std::string& k2, const std::string& v) { h << std::left << std::setw(20) << k2 << v << "\n"; };
  line("command", opt.command);
  if (!opt.spec.empty()) line("spec", opt.spec);
  for (const auto& [k2, v] : c.rows) line(k2, v);
  line("verdict", c.verdict);
  for (const auto& d : c.diagnostics) h << "  " << d["code"].get<std::string>() << ": " << d["message"].get<std::string>() << "\n";
  for (const auto& l : c.lines) h << l << "\n";
  r.human = h.str();
  return r;
}

}  // namespace pav
