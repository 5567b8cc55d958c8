#include "doctest.h"
#include "pav/rewriting.hpp"
#include "support.hpp"

using namespace pav;

TEST_CASE("ring normalizes with both chain parameters instantiated once") {
  Normalized n = normalize_spec(load_spec_file(corpus_file("ring")));
  CHECK(n.system.rules[0].head == "A_b");
  CHECK(n.upsilon.at("Chain") == std::set<int>{0, 1});
  CHECK(check_assumption1(n.system, n.upsilon).ok);
}

TEST_CASE("isolation keeps one instance atom per body") {
  RewritingSystem rs = isolate_instance_atoms(make_system(load_spec_file(corpus_file("ring"))));
  int wrappers = 0;
  for (const auto& r : rs.rules) {
    int inst = 0;
    for (const auto& a : r.body.atoms) inst += a.instance;
    CHECK(inst <= 1);
    wrappers += r.wrapper;
  }
  CHECK(wrappers == 1);  // one component type

  RewritingSystem tll = make_system(load_spec_file(corpus_file("tree-linked-leaves")));
  RewritingSystem iso = isolate_instance_atoms(tll);
  CHECK(iso.size() == tll.size());
}

TEST_CASE("double instantiation is not normalizable") {
  std::string text = R"(
component B {
  ports p;
  states s init;
  rule s -p-> s;
}
A(x) <- < p(x) > ( B(x), C(x) );
C(x) <- B(x);
root new x . < p(x) > ( A(x) );
)";
  CHECK_THROWS_WITH_AS(normalize_spec(load_spec_text(text)), doctest::Contains("NotNormalizable"), Error);
}

TEST_CASE("normalized systems print back to the DSL") {
  for (const char* n : {"ring", "tree-dfs", "sync-philo"}) {
    CAPTURE(n);
    RewritingSystem rs = corpus_system(n);
    Spec s = system_to_spec(rs);
    Spec again = load_spec_text(pretty_print(s));
    CHECK(again.rules.size() == s.rules.size());
  }
}

TEST_CASE("branching degree") {
  CHECK(branching_degree(corpus_system("ring")) == 1);
  CHECK(branching_degree(corpus_system("tree-linked-leaves")) == 2);
  std::string text = std::string(kCType) + "root new i, j . < out(i).in(j) > ( CType(i), CType(j) );\n";
  CHECK(branching_degree(normalize_spec(load_spec_text(text)).system) == 1);
}
