#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pav/term.hpp"

namespace pav {

struct Transition {
  std::string pre, port, post;
  bool operator==(const Transition&) const = default;
};

struct ComponentType {
  std::string name;
  std::vector<std::string> ports;
  std::vector<std::string> states;
  std::string init;
  std::vector<Transition> rules;

  bool has_port(const std::string& p) const;
  bool has_state(const std::string& s) const;
  int state_index(const std::string& s) const;
  int init_index() const { return state_index(init); }
  // pre/post of the unique rule labeled by `port` (the determinism assumption).
  const Transition* rule_for(const std::string& port) const;
  bool operator==(const ComponentType&) const = default;
};

struct Rule {
  std::string head;
  std::vector<std::string> params;
  TermPtr body;
  bool wrapper = false;  // A_B(x) <- B(x) introduced by instance isolation
};

struct SafetyQuery {
  enum class Kind { Deadlock, StatePattern };
  Kind kind = Kind::Deadlock;
  std::vector<std::pair<std::string, std::string>> pattern;  // (type, state)
};

struct Spec {
  std::vector<ComponentType> components;
  std::vector<Rule> rules;
  TermPtr root;
  std::vector<SafetyQuery> queries;

  const ComponentType* component(const std::string& name) const;
  int component_index(const std::string& name) const;
  // Component type owning a port or state name (names are globally disjoint).
  int owner_of_port(const std::string& port) const;
  int owner_of_state(const std::string& state) const;
};

bool spec_equal(const Spec& a, const Spec& b);

}  // namespace pav
