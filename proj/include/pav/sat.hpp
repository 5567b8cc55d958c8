#pragma once

#include <climits>
#include <vector>

namespace pav {

// Plain DPLL with two watched literals.  Literals are +v / -v for v >= 1.
class SatSolver {
 public:
  int new_var();
  int num_vars() const { return n_; }
  void add_clause(std::vector<int> lits);
  bool solve();
  bool value(int v) const { return val_[v] == 1; }

 private:
  static int idx(int lit) { return lit > 0 ? 2 * lit : -2 * lit + 1; }
  int lit_value(int lit) const;
  void assign(int lit);
  bool propagate();

  int n_ = 0;
  bool empty_clause_ = false;
  std::vector<std::vector<int>> clauses_;
  std::vector<std::vector<int>> watches_;  // literal index -> clauses watching it
  std::vector<int> units_;
  std::vector<signed char> val_;  // -1 unassigned
  std::vector<int> trail_;
  size_t qhead_ = 0;
};

// Tseitin encoding with constant folding.
class Circuit {
 public:
  static constexpr int kTrue = INT_MAX;
  static constexpr int kFalse = -INT_MAX;

  explicit Circuit(SatSolver& s) : s_(s) {}
  int input() { return s_.new_var(); }
  static int neg(int l) { return -l; }
  int conj(const std::vector<int>& ls);
  int disj(const std::vector<int>& ls);
  int iff(int a, int b);
  void require(int l);
  bool trivially_false() const { return false_; }

 private:
  SatSolver& s_;
  bool false_ = false;
};

}  // namespace pav
