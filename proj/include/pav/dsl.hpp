#pragma once

#include <string>
#include <vector>

#include "pav/spec.hpp"

namespace pav {

struct Diagnostic {
  std::string code;     // SyntaxError, DuplicateName, AssumptionViolation, ...
  std::string subject;  // offending name, if any
  std::string message;
  int line = 0, col = 0;
  std::string to_string() const;
};

struct ParseResult {
  std::optional<Spec> spec;
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return spec.has_value() && diagnostics.empty(); }
};

// Parses the .pas language.  Bound variables are renamed to globally
// fresh names while parsing.
ParseResult parse_spec(const std::string& text);

std::vector<Diagnostic> validate_spec(const Spec& spec);

std::string pretty_print(const Spec& spec);

// parse + validate; throws Error carrying the first diagnostic's code.
Spec load_spec_text(const std::string& text);
Spec load_spec_file(const std::string& path);

}  // namespace pav
