#include "doctest.h"
#include "pav/path_automata.hpp"
#include "support.hpp"

using namespace pav;

TEST_CASE("direction words") {
  RewritingSystem rs = corpus_system("tree-linked-leaves");
  RewritingTree t = enumerate_trees(rs, 8)[0];
  CHECK(tree_path_directions(t, "00", "00").empty());
  CHECK(tree_path_directions(t, "00", "01") == DirectionPath{{0, true}, {1, false}});
  CHECK(tree_path_directions(t, "0", "000") == DirectionPath{{0, false}, {0, false}});
  CHECK_THROWS_WITH_AS(tree_path_directions(t, "0", "0000"), doctest::Contains("NodeAbsent"), Error);
}

TEST_CASE("tracking l1 of the root rule") {
  RewritingSystem rs = corpus_system("tree-linked-leaves");
  RewritingTree t = enumerate_trees(rs, 8)[0];
  int root = t.label.at("0"), leaf = t.label.at("000"), inner = t.label.at("00");
  PathAutomaton a = build_path_automaton(rs, root, "l1", leaf, "n");
  REQUIRE(a.initial.size() == 1);
  CHECK(a.state_name(a.initial[0]) == "d" + std::to_string(root + 1) + "_l1");
  CHECK(accepts(a, tree_path_directions(t, "0", "000")));
  CHECK(accepts_on_tree(a, t, "0", "000"));
  CHECK_FALSE(accepts_on_tree(a, t, "0", "011"));

  PathAutomaton b = build_path_automaton(rs, root, "l1", inner, "n");
  CHECK_FALSE(accepts_on_tree(b, t, "0", "00"));

  // no descent followed by an ascent
  for (const auto& d : a.delta)
    if (!a.states[d.from].up) CHECK_FALSE(d.up);
  CHECK_FALSE(accepts(a, DirectionPath{{0, false}, {0, true}}));
}

TEST_CASE("ring: y1 reaches the chain below") {
  RewritingSystem rs = corpus_system("ring");
  RewritingTree t = *tree_with_size(rs, 2);
  int ring = t.label.at("0"), chain = t.label.at("00");
  PathAutomaton a = build_path_automaton(rs, ring, "y1", chain, rs.rules[chain].params[0]);
  CHECK(accepts(a, DirectionPath{{0, false}}));
  CHECK(accepts_on_tree(a, t, "0", "00"));
}

TEST_CASE("empty path") {
  RewritingSystem rs = corpus_system("ring");
  for (int r = 0; r < rs.size(); ++r)
    for (const auto& z : rs.rule_vars(r)) {
      PathAutomaton a = build_path_automaton(rs, r, z, r, z);
      CHECK(accepts(a, {}));
    }
  CHECK_THROWS_WITH_AS(build_path_automaton(rs, 1, "nope", 1, "y1"), doctest::Contains("UnknownVariable"), Error);
}
