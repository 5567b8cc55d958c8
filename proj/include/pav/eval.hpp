#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "pav/formula.hpp"

namespace pav {

struct Valuation {
  std::map<std::string, Node> fo;
  std::map<std::string, std::set<Node>> so;
};

using SetAssignment = std::map<std::string, std::set<Node>>;

struct EvalOptions {
  int kappa = 0;   // 0: smallest arity the formula needs
  int budget = 4;  // quantifiers range over nodes of depth <= budget
  // Optional per-name bounds for set variables, free or bound.  A bound
  // variable never takes values outside its carrier.
  std::map<std::string, std::set<Node>> carriers;
  int brute_force_bits = 22;
};

struct EvalStats {
  long sat_calls = 0;
  long brute_force_sets = 0;
  long memo_hits = 0;
};

// Evaluates WSkS formulas over the nodes of depth <= budget.  First-order
// quantifiers are exact on that window.  Second-order quantifiers are
// decided by model extraction, SAT grounding or enumeration of subsets of
// the window (or of the carrier), so a universal second-order quantifier
// only sees finite sets inside the window.  Raises BudgetExceeded when a
// term leaves the window by more than one level, when a free variable is
// too deep, or when enumeration would exceed brute_force_bits.
class BoundedEvaluator {
 public:
  BoundedEvaluator(const FormulaPtr& f, EvalOptions opt);
  ~BoundedEvaluator();
  BoundedEvaluator(const BoundedEvaluator&) = delete;
  BoundedEvaluator& operator=(const BoundedEvaluator&) = delete;

  bool eval(const Valuation& v);
  // All assignments of the target set variables that make the formula true,
  // the other free variables being fixed by v.
  std::vector<SetAssignment> models(const Valuation& v, const std::vector<std::string>& targets);
  const EvalStats& stats() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

bool bounded_eval(const FormulaPtr& f, const Valuation& v, int budget, int kappa = 0);

}  // namespace pav
