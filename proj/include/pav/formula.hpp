#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "pav/common.hpp"

namespace pav {

// succ_{succ[k-1]}( ... succ_{succ[0]}(base) ), base is a first-order
// variable or the root constant when var is empty.
struct FTerm {
  std::string var;
  std::vector<int> succ;
  bool operator==(const FTerm&) const = default;
  bool operator<(const FTerm& o) const;
};

FTerm tvar(const std::string& v);
FTerm troot();
FTerm tsucc(FTerm t, int i);

enum class FK { True, False, Eq, In, Not, And, Or, Implies, Iff, Ex1, All1, Ex2, All2 };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  FK kind;
  FTerm t1, t2;                  // Eq: t1 = t2, In: t1 in var
  std::string var;               // In: set variable; quantifiers: bound variable
  std::vector<FormulaPtr> kids;  // connectives and quantifier bodies
};

// Constructors fold boolean constants and flatten nested &/|.
FormulaPtr f_true();
FormulaPtr f_false();
FormulaPtr f_eq(const FTerm& a, const FTerm& b);
FormulaPtr f_neq(const FTerm& a, const FTerm& b);
FormulaPtr f_in(const std::string& set, const FTerm& t);
FormulaPtr f_not(const FormulaPtr& a);
FormulaPtr f_and(std::vector<FormulaPtr> ks);
FormulaPtr f_or(std::vector<FormulaPtr> ks);
FormulaPtr f_and(const FormulaPtr& a, const FormulaPtr& b);
FormulaPtr f_or(const FormulaPtr& a, const FormulaPtr& b);
FormulaPtr f_implies(const FormulaPtr& a, const FormulaPtr& b);
FormulaPtr f_iff(const FormulaPtr& a, const FormulaPtr& b);
FormulaPtr f_ex1(const std::string& v, const FormulaPtr& body);
FormulaPtr f_all1(const std::string& v, const FormulaPtr& body);
FormulaPtr f_ex2(const std::string& v, const FormulaPtr& body);
FormulaPtr f_all2(const std::string& v, const FormulaPtr& body);
FormulaPtr f_ex1(const std::vector<std::string>& vs, FormulaPtr body);
FormulaPtr f_ex2(const std::vector<std::string>& vs, FormulaPtr body);
FormulaPtr f_all2(const std::vector<std::string>& vs, FormulaPtr body);

bool is_const(const FormulaPtr& f, bool value);

std::set<std::string> free_fo(const FormulaPtr& f);
std::set<std::string> free_so(const FormulaPtr& f);
int succ_nesting(const FormulaPtr& f);
int max_succ_index(const FormulaPtr& f);  // -1 if no successor occurs
long formula_size(const FormulaPtr& f);   // tree size (shared nodes counted per use)
bool formula_equal(const FormulaPtr& a, const FormulaPtr& b);

// Every binder gets a name distinct from all other binders and from the
// free variables, by appending _k where needed.
FormulaPtr rename_apart(const FormulaPtr& f);

std::string term_to_string(const FTerm& t);
std::string formula_to_string(const FormulaPtr& f);

}  // namespace pav
