#include "doctest.h"
#include "pav/rewriting.hpp"
#include "support.hpp"

using namespace pav;

TEST_CASE("ring trees, one per size") {
  RewritingSystem rs = corpus_system("ring");
  auto ts = enumerate_trees(rs, 6);
  REQUIRE(ts.size() == 3);
  CHECK(ts[0].size() == 4);
  CHECK(ts[1].size() == 5);
  CHECK(ts[2].size() == 6);
  CHECK(enumerate_trees(rs, 0).empty());
  for (const auto& t : ts) CHECK(tree_problem(rs, t).empty());
}

TEST_CASE("ground ring of three") {
  RewritingSystem rs = corpus_system("ring");
  auto t = tree_with_size(rs, 3);
  REQUIRE(t);
  GroundSystem g = ground_system(rs, *t);
  CHECK(g.instances.size() == 3);
  CHECK(g.arch.size() == 3);
  // every instance sends once and receives once
  std::map<Node, int> outs, ins;
  for (const auto& pi : g.arch)
    for (const auto& p : pi) (p.port == "out" ? outs : ins)[p.sym]++;
  for (const auto& [n, ty] : g.instances) {
    CHECK(outs[n] == 1);
    CHECK(ins[n] == 1);
  }
  CHECK(g == ground_system_direct(rs, *t));
}

TEST_CASE("balanced TLL tree") {
  RewritingSystem rs = corpus_system("tree-linked-leaves");
  auto ts = enumerate_trees(rs, 8);
  REQUIRE(ts.size() == 1);
  GroundSystem g = ground_system(rs, ts[0]);
  int n = 0, l = 0;
  for (const auto& [w, ty] : g.instances) (ty == "NType" ? n : l)++;
  CHECK(n == 3);
  CHECK(l == 4);
  int ring = 0;
  for (const auto& pi : g.arch)
    for (const auto& p : pi) ring += p.port == "out";
  CHECK(ring == 4);
}

TEST_CASE("param sets round trip") {
  for (const char* name : {"ring", "tree-dfs", "star", "sync-philo"}) {
    RewritingSystem rs = corpus_system(name);
    for (const auto& t : enumerate_trees(rs, 9)) CHECK(param_sets_to_tree(rs, tree_to_param_sets(rs, t)) == t);
  }
  RewritingSystem rs = corpus_system("ring");
  ParamSets ps = tree_to_param_sets(rs, enumerate_trees(rs, 4)[0]);
  ps[0].insert("0");
  CHECK_THROWS_WITH_AS(param_sets_to_tree(rs, ps), doctest::Contains("Incompatible"), Error);
}

TEST_CASE("substitution chains") {
  RewritingSystem rs = corpus_system("tree-linked-leaves");
  RewritingTree t = enumerate_trees(rs, 8)[0];
  // l1 of the root rule ends at the left-most leaf, not the right-most
  CHECK(same_identifier_oracle(rs, t, "0", "l1", "000", "n"));
  CHECK_FALSE(same_identifier_oracle(rs, t, "0", "l1", "011", "n"));
  CHECK(same_identifier_oracle(rs, t, "0", "r", "0", "r"));
}

TEST_CASE("characteristic term of a leaf-only tree is its body") {
  std::string text = std::string(kCType) + "root new i . < out(i) > ( CType(i) );\n";
  RewritingSystem rs = normalize_spec(load_spec_text(text)).system;
  auto ts = enumerate_trees(rs, 3);
  REQUIRE(ts.size() == 1);
  GroundSystem g = ground_system(rs, ts[0]);
  CHECK(g.instances.size() == 1);
  CHECK(g.arch.size() == 1);
}
