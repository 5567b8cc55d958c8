#pragma once

#include <string>

#include "pav/dsl.hpp"
#include "pav/normalize.hpp"

inline std::string corpus_file(const std::string& name) { return std::string(PAV_CORPUS_DIR) + "/" + name + ".pas"; }

inline pav::RewritingSystem corpus_system(const std::string& name) {
  return pav::normalize_spec(pav::load_spec_file(corpus_file(name))).system;
}

// codes of all diagnostics, parse and validation together
inline std::vector<std::string> codes_of(const std::string& text) {
  pav::ParseResult pr = pav::parse_spec(text);
  std::vector<std::string> out;
  for (const auto& d : pr.diagnostics) out.push_back(d.code);
  if (pr.spec)
    for (const auto& d : pav::validate_spec(*pr.spec)) out.push_back(d.code);
  return out;
}

inline bool has_code(const std::vector<std::string>& v, const std::string& c) {
  for (const auto& x : v)
    if (x == c) return true;
  return false;
}

constexpr const char* kCType = R"(
component CType {
  ports out, in;
  states q0 init, q1;
  rule q0 -out-> q1;
  rule q1 -in-> q0;
}
)";
