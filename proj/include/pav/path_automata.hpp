#pragma once

#include <string>
#include <vector>

#include "pav/rewriting.hpp"

namespace pav {

struct PAState {
  int rule;
  std::string var;
  bool up;
  bool operator==(const PAState&) const = default;
};

struct PATransition {
  int from;
  int alpha;
  bool up;
  int to;
  bool operator==(const PATransition&) const = default;
};

struct PathAutomaton {
  std::vector<PAState> states;
  std::vector<int> initial, final;
  std::vector<PATransition> delta;
  int find(int rule, const std::string& var, bool up) const;
  std::string state_name(int q) const;  // e.g. "d3_y1" (down, rule 3, y1)
};

// Tracks z1 in body(r1) to z2 in body(r2).  With trim, only states that lie
// on some path from an initial to a final state are kept.
PathAutomaton build_path_automaton(const RewritingSystem& rs, int r1, const std::string& z1, int r2,
                                   const std::string& z2, bool trim = true);

struct Direction {
  int alpha;
  bool up;
  bool operator==(const Direction&) const = default;
};
using DirectionPath = std::vector<Direction>;

DirectionPath tree_path_directions(const RewritingTree& t, const Node& w1, const Node& w2);
std::string path_to_string(const DirectionPath& p);

// Word acceptance (subset simulation).
bool accepts(const PathAutomaton& a, const DirectionPath& w);
// Acceptance with every visited node carrying the rule of the run's state.
bool accepts_on_tree(const PathAutomaton& a, const RewritingTree& t, const Node& w1, const Node& w2);

}  // namespace pav
