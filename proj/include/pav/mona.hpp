#pragma once

#include <string>
#include <vector>

#include "pav/formula.hpp"

namespace pav {

enum class MonaMode { WS1S, WS2S };

std::string mode_name(MonaMode m);
// ws1s for kappa <= 1, ws2s for kappa == 2, UnsupportedArity above.
MonaMode mode_for_kappa(int kappa);

// Renders f as a MONA input file.  Binders are renamed apart first and
// names that collide with MONA keywords get a trailing underscore.
// Raises UnsupportedArity when a successor index does not exist in mode.
std::string emit_mona(const FormulaPtr& f, MonaMode mode);

struct MonaFile {
  MonaMode mode = MonaMode::WS1S;
  std::vector<std::string> var1, var2;
  FormulaPtr body;
};

// Reads back what emit_mona writes (not general MONA syntax).  ParseError.
MonaFile parse_mona(const std::string& text);

struct SolverResult {
  enum class Kind { Unsat, Sat, Error };
  Kind kind = Kind::Error;
  std::string error;   // SolverNotFound, Timeout, ParseError, SolverFailed
  std::string output;  // raw solver output, witnesses included
  std::string binary;
  double seconds = 0;
};

// flag path, then MONA_BIN, then `mona` on PATH; empty if none is usable.
std::string find_mona(const std::string& flag_path);
SolverResult run_solver(const std::string& text, const std::string& flag_path, int timeout_secs);

}  // namespace pav
