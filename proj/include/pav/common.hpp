#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace pav {

// Every failure raised by the library carries a stable code such as
// "SyntaxError" or "NotNormalizable" next to the human message.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& msg)
      : std::runtime_error(code + ": " + msg), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

// Tree nodes are words over [0,k-1] spelled as digit strings; "" is the root.
using Node = std::string;

inline std::string node_name(const Node& n) { return n.empty() ? "e" : n; }
inline Node parse_node_name(const std::string& s) { return s == "e" ? Node() : s; }
inline int node_depth(const Node& n) { return static_cast<int>(n.size()); }
inline Node child(const Node& n, int i) { return n + static_cast<char>('0' + i); }
inline Node parent(const Node& n) { return n.substr(0, n.size() - 1); }

// Ground identifiers are tree nodes; inside terms they are spelled "#<node>"
// so they can never be confused with variables, which are DSL identifiers.
inline std::string ident_sym(const Node& n) { return "#" + n; }
inline bool is_ident_sym(const std::string& s) { return !s.empty() && s[0] == '#'; }
inline Node ident_node(const std::string& s) { return s.substr(1); }
inline std::string sym_display(const std::string& s) {
  return is_ident_sym(s) ? node_name(ident_node(s)) : s;
}

}  // namespace pav
