#include "doctest.h"
#include "support.hpp"

using namespace pav;

TEST_CASE("ring spec parses") {
  Spec s = load_spec_file(corpus_file("ring"));
  CHECK(s.components.size() == 1);
  CHECK(s.rules.size() == 3);
  CHECK(s.queries.size() == 1);
  CHECK(validate_spec(s).empty());
}

TEST_CASE("predicate-less spec") {
  std::string text = std::string(kCType) + "root new i, j . < out(i).in(j) > ( CType(i), CType(j) );\ncheck deadlock;\n";
  Spec s = load_spec_text(text);
  CHECK(s.rules.empty());
  CHECK(predicate_less(s.root));
}

TEST_CASE("diagnostics") {
  std::string two_rules = R"(
component C {
  ports p;
  states a init, b;
  rule a -p-> b;
  rule b -p-> a;
}
root new i . < p(i) > ( C(i) );
)";
  CHECK(has_code(codes_of(two_rules), "AssumptionViolation"));

  std::string escape = std::string(kCType) + R"(
R() <- new a, b . < out(a).in(b) > ( Chain(a, b) );
Chain(x1, x2) <- < out(x1).in(y) > ( CType(x1), CType(x2) );
root R();
)";
  CHECK(has_code(codes_of(escape), "FreeVariableEscape"));

  std::string clash = std::string(kCType) + R"(
component D {
  ports p;
  states q0 init;
  rule q0 -p-> q0;
}
root new i . < p(i) > ( D(i) );
)";
  CHECK(has_code(codes_of(clash), "NameClash"));

  auto syntax = parse_spec("component C { ports p; states a init; rule a -p-> a; }\nroot new i . < p(i) ( C(i) );");
  REQUIRE_FALSE(syntax.diagnostics.empty());
  CHECK(syntax.diagnostics[0].code == "SyntaxError");
  CHECK(syntax.diagnostics[0].line == 2);

  CHECK_THROWS_AS(load_spec_file("/nonexistent.pas"), Error);
}

TEST_CASE("pretty print round trip") {
  for (const char* n : {"ring", "token-ring", "tree-linked-leaves", "tree-dfs", "alt-philo-sym", "ring-star"}) {
    CAPTURE(n);
    Spec s = load_spec_file(corpus_file(n));
    Spec again = load_spec_text(pretty_print(s));
    CHECK(spec_equal(s, again));
    CHECK(pretty_print(again) == pretty_print(s));
  }
  CHECK(load_spec_text(pretty_print(load_spec_file(corpus_file("tree-linked-leaves")))).rules.size() == 4);
}
