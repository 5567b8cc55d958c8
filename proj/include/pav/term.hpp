#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "pav/common.hpp"

namespace pav {

struct PortRef {
  std::string port;
  std::string sym;
  auto operator<=>(const PortRef&) const = default;
};

// One product of ports; kept sorted and duplicate-free.
using Interaction = std::vector<PortRef>;

// Architecture specification in sum-of-products form.  The constructors
// keep interactions sorted and unique, so structural equality is equality
// modulo associativity/commutativity of + and the product.
class ArchSpec {
 public:
  ArchSpec() = default;
  static ArchSpec port(const std::string& p, const std::string& sym);
  static ArchSpec from_interactions(std::vector<Interaction> inters);

  ArchSpec operator+(const ArchSpec& o) const;
  ArchSpec operator*(const ArchSpec& o) const;

  const std::vector<Interaction>& interactions() const { return inters_; }
  bool empty() const { return inters_.empty(); }
  std::set<std::string> symbols() const;
  ArchSpec rename(const std::map<std::string, std::string>& m) const;
  bool operator==(const ArchSpec&) const = default;

 private:
  std::vector<Interaction> inters_;
};

// Unnormalized +/. expression as written in source, kept only for testing
// that the set semantics commutes with conversion to sum-of-products.
struct ArchExpr {
  enum class Kind { Port, Sum, Prod };
  Kind kind = Kind::Port;
  PortRef port;
  std::vector<ArchExpr> kids;
};
ArchSpec to_sop(const ArchExpr& e);

// A ground architecture: a set of interactions over identifiers.
using GroundInteraction = std::set<PortRef>;
using Architecture = std::set<GroundInteraction>;

Architecture arch_semantics(const ArchSpec& g);
Architecture arch_expr_semantics(const ArchExpr& e);

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  enum class Kind { Instance, Apply, Nu, Pred };
  Kind kind = Kind::Instance;
  std::string name;               // component type, predicate or bound variable
  std::vector<std::string> syms;  // Instance: exactly one symbol; Pred: arguments
  ArchSpec arch;                  // Apply
  std::vector<TermPtr> args;      // Apply
  TermPtr body;                   // Nu
  Node origin;                    // Instance: tree node of the atom (metadata)
  bool has_origin = false;
};

TermPtr mk_instance(const std::string& type, const std::string& sym);
TermPtr mk_pred(const std::string& pred, std::vector<std::string> args);
TermPtr mk_apply(ArchSpec g, std::vector<TermPtr> args);
TermPtr mk_nu(const std::string& var, TermPtr body);
TermPtr mk_nus(const std::vector<std::string>& vars, TermPtr body);

bool term_equal(const TermPtr& a, const TermPtr& b);
std::string term_to_string(const TermPtr& t);
std::string arch_to_string(const ArchSpec& g);

std::set<std::string> free_vars(const TermPtr& t);
std::set<std::string> instantiated_symbols(const TermPtr& t);
std::vector<std::string> bound_vars(const TermPtr& t);
bool predicate_less(const TermPtr& t);
int term_height(const TermPtr& t);

using Substitution = std::map<std::string, std::string>;
TermPtr apply_substitution(const TermPtr& t, const Substitution& eta);

// Flattening: binders are hoisted to a global prefix and nested
// applications are merged.  Raises NotFlattenable on predicate atoms.
TermPtr flatten(const TermPtr& t);

// One flattening step at the redex designated by `path` (indices into
// Apply arguments, ending at the nested Apply to merge).  Used to test
// that arbitrary step orders converge to flatten().
std::vector<std::vector<int>> flatten_redexes(const TermPtr& t);
TermPtr flatten_step(const TermPtr& t, const std::vector<int>& path);
TermPtr hoist_binders(const TermPtr& t);

// Rule bodies in the shape  new y... . <G>(atoms)
struct Atom {
  bool instance = false;
  std::string name;
  std::vector<std::string> syms;
  bool operator==(const Atom&) const = default;
};

struct FlatBody {
  std::vector<std::string> binders;
  ArchSpec gamma;
  std::vector<Atom> atoms;
  std::vector<int> pred_positions() const;
  std::vector<int> instance_positions() const;
  int n_pred() const { return static_cast<int>(pred_positions().size()); }
  std::set<std::string> variables() const;
};

FlatBody flatten_body(const TermPtr& t);
TermPtr body_to_term(const FlatBody& b);

}  // namespace pav
