#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pav/normalize.hpp"

namespace pav {

struct RewritingTree {
  std::map<Node, int> label;  // node -> rule index (0-based, rules[0] = root rule)
  int size() const { return static_cast<int>(label.size()); }
  int depth() const;
  std::vector<Node> nodes() const;  // preorder
  bool operator==(const RewritingTree&) const = default;
};

int branching_degree(const RewritingSystem& rs);

// All valid trees with at most max_nodes nodes, by size, then by preorder
// label sequence.
std::vector<RewritingTree> enumerate_trees(const RewritingSystem& rs, int max_nodes);
std::vector<RewritingTree> trees_of_size(const RewritingSystem& rs, int n);

// Empty string when valid, otherwise the reason.
std::string tree_problem(const RewritingSystem& rs, const RewritingTree& t);

// Characteristic term: bound variables are renamed v@<node>,
// instance atoms carry the node where they occur as origin.
TermPtr characteristic_term(const RewritingSystem& rs, const RewritingTree& t);

// Interactions of a ground system use plain node strings as symbols.
struct GroundSystem {
  std::map<Node, std::string> instances;  // node -> component type
  Architecture arch;
  std::map<Node, std::string> init;       // node -> initial state
  bool operator==(const GroundSystem&) const = default;
};

// Through the characteristic term: substitute, flatten, take the semantics.
GroundSystem ground_system(const RewritingSystem& rs, const RewritingTree& t);

// Same data computed node by node by chasing parameters up the tree.
GroundSystem ground_system_direct(const RewritingSystem& rs, const RewritingTree& t);

// Binding site of variable z at node w: the node where it is bound by a
// binder, together with its name there.
std::pair<Node, std::string> resolve_variable(const RewritingSystem& rs, const RewritingTree& t,
                                              const Node& w, const std::string& z);
bool same_identifier_oracle(const RewritingSystem& rs, const RewritingTree& t, const Node& w1,
                            const std::string& z1, const Node& w2, const std::string& z2);

using ParamSets = std::vector<std::set<Node>>;
ParamSets tree_to_param_sets(const RewritingSystem& rs, const RewritingTree& t);
RewritingTree param_sets_to_tree(const RewritingSystem& rs, const ParamSets& sets);  // Incompatible

// Number of instances of the first declared component type.
int family_size(const RewritingSystem& rs, const GroundSystem& g);
// First tree, in enumeration order, whose family size is n.
std::optional<RewritingTree> tree_with_size(const RewritingSystem& rs, int n, int max_nodes = 64);

}  // namespace pav
