#include "pav/sat.hpp"

#include <algorithm>
#include <cstdlib>

namespace pav {

int SatSolver::new_var() {
  ++n_;
  val_.resize(n_ + 1, -1);
  watches_.resize(2 * n_ + 2);
  return n_;
}

void SatSolver::add_clause(std::vector<int> lits) {
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  for (size_t i = 0; i + 1 < lits.size(); ++i)
    for (size_t j = i + 1; j < lits.size(); ++j)
      if (lits[i] == -lits[j]) return;  // tautology
  if (lits.empty()) {
    empty_clause_ = true;
    return;
  }
  if (lits.size() == 1) {
    units_.push_back(lits[0]);
    return;
  }
  int c = static_cast<int>(clauses_.size());
  clauses_.push_back(lits);
  watches_[idx(lits[0])].push_back(c);
  watches_[idx(lits[1])].push_back(c);
}

int SatSolver::lit_value(int lit) const {
  int v = val_[std::abs(lit)];
  if (v < 0) return -1;
  return lit > 0 ? v : 1 - v;
}

void SatSolver::assign(int lit) {
  val_[std::abs(lit)] = lit > 0 ? 1 : 0;
  trail_.push_back(lit);
}

// Returns false on conflict.
bool SatSolver::propagate() {
  while (qhead_ < trail_.size()) {
    int falsified = -trail_[qhead_++];
    auto& ws = watches_[idx(falsified)];
    for (size_t i = 0; i < ws.size();) {
      auto& c = clauses_[ws[i]];
      if (c[0] == falsified) std::swap(c[0], c[1]);
      if (lit_value(c[0]) == 1) {
        ++i;
        continue;
      }
      bool moved = false;
      for (size_t k = 2; k < c.size(); ++k)
        if (lit_value(c[k]) != 0) {
          std::swap(c[1], c[k]);
          watches_[idx(c[1])].push_back(ws[i]);
          ws[i] = ws.back();
          ws.pop_back();
          moved = true;
          break;
        }
      if (moved) continue;
      if (lit_value(c[0]) == 0) return false;
      if (lit_value(c[0]) < 0) assign(c[0]);
      ++i;
    }
  }
  return true;
}

bool SatSolver::solve() {
  if (empty_clause_) return false;
  std::fill(val_.begin(), val_.end(), -1);
  trail_.clear();
  qhead_ = 0;
  for (int u : units_) {
    int lv = lit_value(u);
    if (lv == 0) return false;
    if (lv < 0) assign(u);
  }
  struct Decision {
    size_t trail_size;
    int lit;
    bool flipped;
  };
  std::vector<Decision> stack;
  int next_var = 1;
  for (;;) {
    if (!propagate()) {
      for (;;) {
        if (stack.empty()) return false;
        Decision d = stack.back();
        stack.pop_back();
        while (trail_.size() > d.trail_size) {
          val_[std::abs(trail_.back())] = -1;
          trail_.pop_back();
        }
        qhead_ = trail_.size();
        next_var = 1;
        if (!d.flipped) {
          stack.push_back({d.trail_size, -d.lit, true});
          assign(-d.lit);
          break;
        }
      }
      continue;
    }
    while (next_var <= n_ && val_[next_var] >= 0) ++next_var;
    if (next_var > n_) return true;
    stack.push_back({trail_.size(), -next_var, false});
    assign(-next_var);
  }
}

int Circuit::conj(const std::vector<int>& ls) {
  std::vector<int> xs;
  for (int l : ls) {
    if (l == kFalse) return kFalse;
    if (l != kTrue) xs.push_back(l);
  }
  if (xs.empty()) return kTrue;
  if (xs.size() == 1) return xs[0];
  int g = s_.new_var();
  std::vector<int> big{g};
  for (int l : xs) {
    s_.add_clause({-g, l});
    big.push_back(-l);
  }
  s_.add_clause(big);
  return g;
}

int Circuit::disj(const std::vector<int>& ls) {
  std::vector<int> neg;
  for (int l : ls) neg.push_back(-l);
  return -conj(neg);
}

int Circuit::iff(int a, int b) {
  if (a == kTrue) return b;
  if (b == kTrue) return a;
  if (a == kFalse) return -b;
  if (b == kFalse) return -a;
  if (a == b) return kTrue;
  if (a == -b) return kFalse;
  int g = s_.new_var();
  s_.add_clause({-g, -a, b});
  s_.add_clause({-g, a, -b});
  s_.add_clause({g, a, b});
  s_.add_clause({g, -a, -b});
  return g;
}

void Circuit::require(int l) {
  if (l == kTrue) return;
  if (l == kFalse) {
    false_ = true;
    s_.add_clause({});
    return;
  }
  s_.add_clause({l});
}

}  // namespace pav
