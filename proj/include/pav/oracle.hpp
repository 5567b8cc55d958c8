#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pav/rewriting.hpp"

namespace pav {

// One local state index per instance, instances ordered by node.
using Configuration = std::vector<int>;
// (instance node, state name)
using Place = std::pair<Node, std::string>;
using PlaceSet = std::set<Place>;

class Behavior {
 public:
  Behavior(const GroundSystem& g, const std::vector<ComponentType>& components);

  int n_instances() const { return static_cast<int>(nodes_.size()); }
  const std::vector<Node>& nodes() const { return nodes_; }
  const ComponentType& type_of(int i) const { return *types_[i]; }
  const std::vector<GroundInteraction>& interactions() const { return inters_; }
  Configuration initial() const { return init_; }

  bool enabled(const Configuration& s, int k) const;
  Configuration fire(const Configuration& s, int k) const;
  // By value, raising UnknownInteraction if π is not in the architecture.
  bool enabled(const Configuration& s, const GroundInteraction& pi) const;
  Configuration fire(const Configuration& s, const GroundInteraction& pi) const;
  bool deadlocked(const Configuration& s) const;

  std::map<Node, std::string> named(const Configuration& s) const;
  Configuration from_named(const std::map<Node, std::string>& m) const;
  PlaceSet support(const Configuration& s) const;
  PlaceSet all_places() const;
  PlaceSet pre(int k) const;
  PlaceSet post(int k) const;

  // theta is a trap when pre(π) ∩ θ ≠ ∅ implies post(π) ∩ θ ≠ ∅.
  bool is_trap(const PlaceSet& theta) const;
  bool is_marked(const PlaceSet& theta) const;
  PlaceSet maximal_trap_within(const PlaceSet& q) const;
  bool trap_invariant_holds(const Configuration& s) const;

  bool matches_pattern(const Configuration& s, const SafetyQuery& q) const;
  bool is_bad(const Configuration& s, const SafetyQuery& q) const;

 private:
  struct Part {
    int inst, pre, post;
  };
  int index_of(const Node& n) const;
  void shrink_to_trap(std::vector<char>& in, const std::vector<int>& offset) const;
  int interaction_index(const GroundInteraction& pi) const;

  std::vector<Node> nodes_;
  std::vector<const ComponentType*> types_;
  std::vector<GroundInteraction> inters_;
  std::vector<std::vector<Part>> parts_;
  Configuration init_;
};

struct ReachResult {
  std::vector<Configuration> configs;  // BFS order, configs[0] = initial
  std::vector<int> parent;             // BFS tree
  std::vector<int> via;                // interaction index used to reach
  bool overflow = false;
  std::vector<int> path_to(int idx) const;  // interaction indices
};

constexpr long kDefaultLimit = 2000000;

ReachResult reachable(const Behavior& b, long limit = kDefaultLimit);

struct GroundVerdict {
  enum class Kind { SafeProved, UnsafeWitness, Inconclusive, Overflow };
  Kind kind = Kind::Inconclusive;
  bool trap_proved = false;
  std::optional<bool> exact_safe;  // unset on overflow
  std::vector<GroundInteraction> witness;
  long explored = 0;
  std::optional<Configuration> bad_in_theta;  // counterexample to the trap method
};

std::string verdict_name(GroundVerdict::Kind k);

// Trap method: no configuration of the trap invariant is bad.
bool trap_method_proves(const Behavior& b, const SafetyQuery& q, std::optional<Configuration>* cex = nullptr);
GroundVerdict verify_ground(const Behavior& b, const SafetyQuery& q, long limit = kDefaultLimit);

}  // namespace pav
