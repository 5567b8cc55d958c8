#pragma once

#include <string>
#include <vector>

#include "pav/oracle.hpp"

namespace pav {

struct CommandOptions {
  std::string command;  // check, normalize, unfold, verify-ground, traps, emit, verify, oracle-check, paths, corpus-list
  std::string spec;
  int max_nodes = 0;  // 0: 12 for tree enumeration, 7 for oracle-check
  int size = 0;   // 0: not given
  int tree = -1;  // index into the tree enumeration, -1: not given
  long limit = kDefaultLimit;
  std::string mona_path;
  int solver_timeout = 60;
  std::string output;  // emit: file to write
  std::string from, to;  // paths: "<rule>:<var>", rules numbered from 1
  std::vector<std::string> suites;
  std::string corpus_dir;
};

// verdict -> exit code: ok and safe-proved 0, unsafe-witness 1,
// inconclusive 2, error 3.
int exit_code_for(const std::string& verdict);

struct CommandResult {
  std::string verdict;
  int exit_code = 3;
  std::string json;   // one JSON object, keys sorted
  std::string human;  // fixed-width summary
};

CommandResult run_command(const CommandOptions& opt);

// Sizes tried by verify when no solver is available.
constexpr int kFallbackMinSize = 2;
constexpr int kFallbackMaxSize = 6;

}  // namespace pav
