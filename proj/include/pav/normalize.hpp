#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "pav/spec.hpp"

namespace pav {

struct RSRule {
  std::string head;
  std::vector<std::string> params;
  FlatBody body;
  bool wrapper = false;
  int source = -1;  // index of the rule it was derived from, -1 if new
};

// rules[0] is always the synthetic root rule  A_b() <- b.
struct RewritingSystem {
  std::vector<ComponentType> components;
  std::vector<RSRule> rules;
  std::vector<SafetyQuery> queries;

  int size() const { return static_cast<int>(rules.size()); }
  const ComponentType* component(const std::string& name) const;
  int component_index(const std::string& name) const;
  int owner_of_port(const std::string& port) const;
  int owner_of_state(const std::string& state) const;
  std::vector<int> rules_for(const std::string& head) const;
  std::set<std::string> predicates() const;
  std::vector<std::string> all_states() const;  // declaration order
  // variables of a rule: params followed by the rest of the body's symbols
  std::vector<std::string> rule_vars(int r) const;
};

RewritingSystem make_system(const Spec& spec);

// Every body keeps its first instance atom; the others become predicate
// atoms of wrapper rules  W_B(x) <- B(x), one wrapper per component type.
RewritingSystem isolate_instance_atoms(const RewritingSystem& rs);

// predicate -> 0-based parameter positions instantiated exactly once
using Profile = std::map<std::string, std::set<int>>;

struct Normalized {
  RewritingSystem system;
  Profile upsilon;
};

// Isolation followed by the profile construction.  Raises NotNormalizable.
Normalized normalize(const RewritingSystem& rs);
Normalized normalize_spec(const Spec& spec);

struct Assumption1Result {
  bool ok = true;
  std::string var, rule;
  std::string reason;
};
Assumption1Result check_assumption1(const RewritingSystem& rs, const Profile& upsilon);

// Back to DSL form (root = body of rules[0]).
Spec system_to_spec(const RewritingSystem& rs);

}  // namespace pav
