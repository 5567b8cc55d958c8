// pav: command-line frontend.  One subcommand per invocation; the report
// goes to stdout, the exit code follows the verdict.
#include <iostream>

#include "CLI11.hpp"
#include "pav/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"parameterized architecture verifier"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  pav::CommandOptions opt;
  bool as_json = false;

  auto common = [&](CLI::App* sc, bool needs_spec) {
    if (needs_spec) sc->add_option("spec", opt.spec, "specification file (.pas)")->required();
    sc->add_flag("--json", as_json, "print the report as JSON");
    sc->add_option("--max-nodes", opt.max_nodes, "tree budget in nodes")->check(CLI::Range(1, 64));
    sc->add_option("--limit", opt.limit, "cap on explored configurations")->check(CLI::PositiveNumber);
  };
  auto sized = [&](CLI::App* sc) {
    sc->add_option("--size", opt.size, "family size (instances of the first declared type)")->check(CLI::Range(1, 1000));
    sc->add_option("--tree", opt.tree, "index into the tree enumeration")->check(CLI::NonNegativeNumber);
  };
  auto solver = [&](CLI::App* sc) {
    sc->add_option("--mona-path", opt.mona_path, "MONA binary");
    sc->add_option("--solver-timeout", opt.solver_timeout, "seconds")->check(CLI::PositiveNumber);
  };

  auto* check = app.add_subcommand("check", "parse and validate a spec");
  common(check, true);
  auto* norm = app.add_subcommand("normalize", "print the normalized rewriting system");
  common(norm, true);
  auto* unfold = app.add_subcommand("unfold", "enumerate rewriting trees and their ground systems");
  common(unfold, true);
  auto* vg = app.add_subcommand("verify-ground", "explicit-state verification of one or more instances");
  common(vg, true);
  sized(vg);
  auto* traps = app.add_subcommand("traps", "traps of one instance");
  common(traps, true);
  sized(traps);
  auto* emit = app.add_subcommand("emit", "write the solver input for the first query");
  common(emit, true);
  emit->add_option("-o,--output", opt.output, "file to write (default: in the report)");
  auto* verify = app.add_subcommand("verify", "parametric verification through the solver");
  common(verify, true);
  solver(verify);
  auto* oc = app.add_subcommand("oracle-check", "cross-check the encoding against ground computations");
  common(oc, true);
  oc->add_option("--suite", opt.suites, "traps, path-formula, path-automaton, flow or rtree (repeatable)");
  auto* paths = app.add_subcommand("paths", "instantiation-tracking automaton between two variables");
  common(paths, true);
  paths->add_option("--from", opt.from, "<rule>.<variable>, rules numbered from 1")->required();
  paths->add_option("--to", opt.to, "<rule>.<variable>")->required();
  paths->add_option("--tree", opt.tree, "also list accepted node pairs of this tree")->check(CLI::NonNegativeNumber);
  auto* corpus = app.add_subcommand("corpus", "built-in benchmark corpus");
  corpus->require_subcommand(1);
  auto* clist = corpus->add_subcommand("list", "list the corpus specs");
  clist->add_flag("--json", as_json, "print the report as JSON");
  clist->add_option("--dir", opt.corpus_dir, "corpus directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 3;
  }

  for (auto* sc : app.get_subcommands()) {
    opt.command = sc->get_name();
    if (opt.command == "corpus") opt.command = "corpus-list";
  }

  pav::CommandResult r = pav::run_command(opt);
  std::cout << (as_json ? r.json + "\n" : r.human);
  return r.exit_code;
}
