#include "doctest.h"
#include "pav/builders.hpp"
#include "pav/eval.hpp"
#include "pav/mona.hpp"
#include "pav/sat.hpp"
#include "support.hpp"

using namespace pav;

TEST_CASE("sat solver") {
  SatSolver s;
  int a = s.new_var(), b = s.new_var(), c = s.new_var();
  s.add_clause({a, b});
  s.add_clause({-a, c});
  s.add_clause({-b, c});
  s.add_clause({-c});
  CHECK_FALSE(s.solve());

  SatSolver t;
  int x = t.new_var(), y = t.new_var();
  t.add_clause({x, y});
  t.add_clause({-x});
  REQUIRE(t.solve());
  CHECK(t.value(y));
}

TEST_CASE("free variables and renaming") {
  FormulaPtr f = f_and(f_ex1("x", f_in("X", tvar("x"))), f_in("Y", tvar("x")));
  CHECK(free_fo(f) == std::set<std::string>{"x"});
  CHECK(free_so(f) == std::set<std::string>{"X", "Y"});
  FormulaPtr g = rename_apart(f);
  CHECK(free_fo(g) == free_fo(f));
  CHECK(max_succ_index(f) == -1);
  CHECK(max_succ_index(f_in("X", tsucc(tvar("x"), 1))) == 1);
}

TEST_CASE("bounded evaluation basics") {
  // every node has a 0-successor inside X ... false on a finite set
  FormulaPtr succ = f_ex2("X", f_and(f_in("X", troot()), f_all1("x", f_implies(f_in("X", tvar("x")), f_in("X", tsucc(tvar("x"), 0))))));
  Valuation v;
  CHECK_FALSE(bounded_eval(succ, v, 3, 1));
  FormulaPtr some = f_ex2("X", f_and(f_in("X", troot()), f_ex1("x", f_and(f_in("X", tvar("x")), f_neq(tvar("x"), troot())))));
  CHECK(bounded_eval(some, v, 3, 1));
}

TEST_CASE("rtree accepts enumerated trees only") {
  RewritingSystem rs = corpus_system("ring");
  FormulaBuilder fb(rs);
  FormulaPtr f = fb.rtree();
  for (const auto& t : enumerate_trees(rs, 6)) {
    Valuation v;
    ParamSets ps = tree_to_param_sets(rs, t);
    for (int r = 0; r < rs.size(); ++r) v.so[fb.U(r)] = ps[r];
    CHECK(bounded_eval(f, v, t.depth() + 1, 1));
    v.so[fb.U(0)].insert("0");  // two roots
    CHECK_FALSE(bounded_eval(f, v, t.depth() + 1, 1));
  }
}

TEST_CASE("config partitions instances") {
  RewritingSystem rs = corpus_system("token-ring");
  FormulaBuilder fb(rs);
  RewritingTree t = *tree_with_size(rs, 2);
  GroundSystem g = ground_system(rs, t);
  ParamSets ps = tree_to_param_sets(rs, t);
  FormulaPtr f = f_ex2(fb.Z_vars(), f_and({fb.inst(), fb.config("Xs"), fb.init("Xs")}));
  Valuation v;
  for (int r = 0; r < rs.size(); ++r) v.so[fb.U(r)] = ps[r];
  for (const auto& s : rs.all_states()) v.so[FormulaBuilder::S("Xs", s)];
  for (const auto& [n, ty] : g.instances) v.so[FormulaBuilder::S("Xs", rs.component(ty)->init)].insert(n);
  CHECK(bounded_eval(f, v, t.depth() + 1, 1));
  // one instance in two states
  Node some = g.instances.begin()->first;
  for (const auto& s : rs.component(g.instances.begin()->second)->states) v.so[FormulaBuilder::S("Xs", s)].insert(some);
  CHECK_FALSE(bounded_eval(f, v, t.depth() + 1, 1));
}

TEST_CASE("mona output reads back") {
  for (const char* n : {"ring", "sync-philo", "tree-dfs"}) {
    CAPTURE(n);
    RewritingSystem rs = corpus_system(n);
    FormulaBuilder fb(rs);
    MonaMode m = mode_for_kappa(fb.kappa());
    std::string text = emit_mona(fb.safe(rs.queries[0]), m);
    CHECK(text.rfind(fb.kappa() <= 1 ? "ws1s;" : "ws2s;", 0) == 0);
    MonaFile mf = parse_mona(text);
    CHECK(mf.mode == m);
    CHECK(emit_mona(mf.body, m) == text);
    CHECK(mf.var1.empty());
  }
  CHECK_THROWS_WITH_AS(parse_mona("ws1s;\nvar2 X\n"), doctest::Contains("ParseError"), Error);
}

TEST_CASE("arity limits") {
  CHECK(mode_for_kappa(1) == MonaMode::WS1S);
  CHECK(mode_for_kappa(2) == MonaMode::WS2S);
  CHECK_THROWS_WITH_AS(mode_for_kappa(3), doctest::Contains("UnsupportedArity"), Error);
  FormulaPtr f = f_in("X", tsucc(tvar("x"), 2));
  CHECK_THROWS_WITH_AS(emit_mona(f, MonaMode::WS2S), doctest::Contains("UnsupportedArity"), Error);
  CHECK_THROWS_WITH_AS(emit_mona(f_in("X", tsucc(tvar("x"), 1)), MonaMode::WS1S), doctest::Contains("UnsupportedArity"), Error);
}

TEST_CASE("keywords are renamed") {
  std::string text = emit_mona(f_ex2("in", f_in("in", troot())), MonaMode::WS1S);
  CHECK(text.find("in_") != std::string::npos);
}

TEST_CASE("missing solver") {
  SolverResult r = run_solver("ws1s;\ntrue;\n", "/nonexistent/mona", 5);
  CHECK(r.kind == SolverResult::Kind::Error);
  CHECK(r.error == "SolverNotFound");
}
