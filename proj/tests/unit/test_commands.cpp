#include "doctest.h"
#include "json.hpp"
#include "pav/commands.hpp"
#include "support.hpp"

using namespace pav;
using nlohmann::json;

namespace {
json run(const std::string& cmd, const std::string& spec, std::function<void(CommandOptions&)> tweak = {}) {
  CommandOptions o;
  o.command = cmd;
  o.spec = spec;
  if (tweak) tweak(o);
  CommandResult r = run_command(o);
  json j = json::parse(r.json);
  CHECK(j["exit_code"] == r.exit_code);
  CHECK(r.exit_code == exit_code_for(r.verdict));
  return j;
}
}  // namespace

TEST_CASE("exit codes") {
  CHECK(exit_code_for("ok") == 0);
  CHECK(exit_code_for("safe-proved") == 0);
  CHECK(exit_code_for("unsafe-witness") == 1);
  CHECK(exit_code_for("inconclusive") == 2);
  CHECK(exit_code_for("error") == 3);
}

TEST_CASE("verify-ground on the philosophers") {
  json j = run("verify-ground", corpus_file("alt-philo-sym"), [](CommandOptions& o) { o.size = 3; });
  CHECK(j["verdict"] == "unsafe-witness");
  CHECK_FALSE(j["result"]["run"]["witness"].empty());
  json s = run("verify-ground", corpus_file("sync-philo"), [](CommandOptions& o) { o.size = 4; });
  CHECK(s["verdict"] == "safe-proved");
  CHECK(s["result"]["method"] == "trap-invariant");
  json a = run("verify-ground", corpus_file("alt-philo-asym"), [](CommandOptions& o) { o.size = 3; });
  CHECK(a["result"]["method"] == "exact");
}

TEST_CASE("verify without a solver is bounded") {
  json j = run("verify", corpus_file("token-ring"), [](CommandOptions& o) { o.mona_path = "/nonexistent/mona"; });
  if (j["result"].contains("banner")) {
    CHECK(j["verdict"] == "inconclusive");
    CHECK(j["result"]["runs"].size() == kFallbackMaxSize - kFallbackMinSize + 1);
  }
}

TEST_CASE("errors become diagnostics") {
  json j = run("check", "/nonexistent.pas");
  CHECK(j["verdict"] == "error");
  CHECK(j["diagnostics"][0]["code"] == "IOError");
  json k = run("verify-ground", corpus_file("tree-linked-leaves"), [](CommandOptions& o) { o.size = 2; });
  CHECK(k["diagnostics"][0]["code"] == "NoSuchSize");
  json p = run("paths", corpus_file("ring"), [](CommandOptions& o) {
    o.from = "2.y1";
    o.to = "9.x";
  });
  CHECK(p["verdict"] == "error");
}

TEST_CASE("oracle-check on the leaf ring") {
  json j = run("oracle-check", corpus_file("tree-linked-leaves"), [](CommandOptions& o) { o.max_nodes = 8; });
  CHECK(j["verdict"] == "ok");
  for (const auto& s : j["result"]["suites"]) CHECK(s["failures"] == 0);
}
