#pragma once

#include <string>
#include <vector>

#include "pav/normalize.hpp"

namespace pav {

// One family of checks comparing the symbolic encoding with a ground
// computation.  Trees whose checks would not fit the evaluator budgets
// are counted in `skipped` rather than failed.
struct SuiteResult {
  std::string name;
  long checks = 0;
  long failures = 0;
  long skipped = 0;
  std::vector<std::string> examples;  // first few failures
  double seconds = 0;
  bool passed() const { return failures == 0; }
};

struct CrosscheckOptions {
  int max_nodes = 7;
  int trapinv_max_nodes = 6;
  int rtree_max_nodes = 5;
  int max_place_bits = 12;  // instance-states per tree for the TrapInv suite
  std::vector<std::string> suites;  // empty: all of them
};

// Suite names: traps, path-formula, path-automaton, flow, rtree.
std::vector<std::string> crosscheck_suites();
SuiteResult run_suite(const RewritingSystem& rs, const std::string& name, const CrosscheckOptions& opt);
std::vector<SuiteResult> run_crosschecks(const RewritingSystem& rs, const CrosscheckOptions& opt);

// Tree shapes with at most n nodes in which every node has at most k
// children, numbered left to right without gaps.
std::vector<std::vector<Node>> tree_skeletons(int n, int k);

}  // namespace pav
