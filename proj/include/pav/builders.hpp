#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "pav/formula.hpp"
#include "pav/path_automata.hpp"

namespace pav {

// Naming scheme for the set variables of the encoding:
//   U1..UN      nodes labeled by rule r_i
//   Z1..ZK      instances of component type j
//   <P>_<S>     configuration tuples, P in Xs, Ys1, Ys2, Fs1, Fs2, Ds1, Ds2
//   R_<q>       run labels of a path automaton state q (e.g. R_d3_y1)
class FormulaBuilder {
 public:
  explicit FormulaBuilder(const RewritingSystem& rs);

  const RewritingSystem& system() const { return rs_; }
  int kappa() const { return kappa_; }

  std::string U(int r) const { return "U" + std::to_string(r + 1); }
  std::string Z(int j) const { return "Z" + std::to_string(j + 1); }
  static std::string S(const std::string& prefix, const std::string& state) { return prefix + "_" + state; }
  static std::string R(const PathAutomaton& a, int q) { return "R_" + a.state_name(q); }
  std::vector<std::string> U_vars() const;
  std::vector<std::string> Z_vars() const;
  std::vector<std::string> state_vars(const std::string& prefix) const;

  FormulaPtr rtree();
  FormulaPtr inst();
  FormulaPtr config(const std::string& xp);
  FormulaPtr init(const std::string& xp);
  FormulaPtr inter(const std::string& xp, const std::string& yp);

  // Phi_A(x,y,R) alone, with the run variables left free.
  FormulaPtr phi(const PathAutomaton& a, const std::string& x, const std::string& y);
  FormulaPtr psi(const PathAutomaton& a);
  FormulaPtr path(int r1, const std::string& z1, int r2, const std::string& z2, const std::string& x,
                  const std::string& y);

  FormulaPtr iflow(int rule, int interaction, const std::string& xp, const std::string& yp);
  FormulaPtr flow(const std::string& xp, const std::string& yp);
  FormulaPtr trap(const std::string& xp);
  FormulaPtr trapinv(const std::string& xp);
  FormulaPtr deadlock(const std::string& xp);
  FormulaPtr pattern(const SafetyQuery& q, const std::string& xp);  // UnsupportedQuery
  FormulaPtr bad(const SafetyQuery& q, const std::string& xp);
  FormulaPtr safe(const SafetyQuery& q);

 private:
  const RewritingSystem& rs_;
  int kappa_;
  std::map<std::tuple<int, std::string, int, std::string, std::string, std::string>, FormulaPtr> paths_;
  std::map<std::pair<std::string, std::string>, FormulaPtr> flows_;
};

}  // namespace pav
