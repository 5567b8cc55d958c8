#include "doctest.h"
#include "pav/term.hpp"

using namespace pav;

TEST_CASE("arch semantics") {
  const std::string i0 = ident_sym("0"), i1 = ident_sym("1");
  auto P = [](const std::string& p, const std::string& s) { return ArchSpec::port(p, s); };
  ArchSpec g = P("out", i0) * P("in", i1) + P("out", i1) * P("in", i0);
  Architecture a = arch_semantics(g);
  CHECK(a.size() == 2);
  CHECK(a.count(GroundInteraction{{"out", i0}, {"in", i1}}));
  CHECK(a.count(GroundInteraction{{"out", i1}, {"in", i0}}));

  // distributes over +
  ArchSpec d = (P("a", i0) + P("b", i0)) * P("c", i1);
  CHECK(arch_semantics(d) == Architecture{{{"a", i0}, {"c", i1}}, {{"b", i0}, {"c", i1}}});
  CHECK(arch_semantics(P("p", i0)) == Architecture{{{"p", i0}}});
  CHECK_THROWS_WITH_AS(arch_semantics(P("p", "x")), doctest::Contains("NonGround"), Error);

  // the unnormalized reading agrees
  ArchExpr e{ArchExpr::Kind::Prod, {}, {ArchExpr{ArchExpr::Kind::Sum, {}, {ArchExpr{ArchExpr::Kind::Port, {"a", i0}, {}}, ArchExpr{ArchExpr::Kind::Port, {"b", i0}, {}}}},
                                         ArchExpr{ArchExpr::Kind::Port, {"c", i1}, {}}}};
  CHECK(arch_expr_semantics(e) == arch_semantics(to_sop(e)));
}

TEST_CASE("sum of products is commutative") {
  ArchSpec x = ArchSpec::port("a", "0"), y = ArchSpec::port("b", "1");
  CHECK(x * y == y * x);
  CHECK(x + y == y + x);
  CHECK((x + x) == x);
}

TEST_CASE("free and instantiated symbols") {
  ArchSpec g = ArchSpec::port("out", "x") * ArchSpec::port("in", "y");
  TermPtr t = mk_nu("x", mk_apply(g, {mk_instance("CType", "x")}));
  CHECK(free_vars(t) == std::set<std::string>{"y"});
  CHECK(free_vars(mk_pred("Chain", {"y1", "x2"})) == std::set<std::string>{"y1", "x2"});

  TermPtr u = mk_apply(ArchSpec::port("out", "i") * ArchSpec::port("in", "j"), {mk_instance("CType", "j")});
  CHECK(instantiated_symbols(u) == std::set<std::string>{"j"});
  CHECK(instantiated_symbols(mk_pred("Chain", {"a", "b"})).empty());
}

TEST_CASE("substitution respects binders") {
  TermPtr p = apply_substitution(mk_pred("Chain", {"x1", "x2"}), {{"x1", "w"}});
  CHECK(term_equal(p, mk_pred("Chain", {"w", "x2"})));
  TermPtr b = mk_nu("x", mk_instance("CType", "x"));
  CHECK(term_equal(apply_substitution(b, {{"x", "i"}}), b));
}

TEST_CASE("flatten merges nested applications") {
  ArchSpec g1 = ArchSpec::port("out", "a") * ArchSpec::port("in", "b");
  ArchSpec g2 = ArchSpec::port("out", "b") * ArchSpec::port("in", "a");
  TermPtr inner = mk_apply(g2, {mk_instance("CType", "b")});
  TermPtr t = mk_apply(g1, {inner, mk_instance("CType", "a")});
  TermPtr f = flatten(t);
  REQUIRE(f->kind == Term::Kind::Apply);
  CHECK(f->arch == g1 + g2);
  CHECK(f->args.size() == 2);

  TermPtr single = mk_apply(ArchSpec::port("p", "i"), {mk_instance("CType", "i")});
  CHECK(term_equal(flatten(single), single));

  CHECK_THROWS_WITH_AS(flatten(mk_apply(g1, {mk_pred("Chain", {"a", "b"})})), doctest::Contains("NotFlattenable"), Error);
}

TEST_CASE("flatten steps converge in any order") {
  ArchSpec g = ArchSpec::port("p", "a");
  TermPtr leaf = mk_apply(ArchSpec::port("q", "b"), {mk_instance("T", "b")});
  TermPtr mid = mk_apply(ArchSpec::port("r", "c"), {leaf, mk_instance("T", "c")});
  TermPtr t = mk_apply(g, {mid, mk_apply(ArchSpec::port("s", "d"), {mk_instance("T", "d")}), mk_instance("T", "a")});
  TermPtr want = flatten(t);
  // always take the last redex instead of the first
  TermPtr cur = t;
  for (int guard = 0; guard < 20; ++guard) {
    auto rs = flatten_redexes(cur);
    if (rs.empty()) break;
    cur = flatten_step(cur, rs.back());
  }
  CHECK(flatten(cur)->arch == want->arch);
  CHECK(flatten(cur)->args.size() == want->args.size());
}
