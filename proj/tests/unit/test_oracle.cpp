#include "doctest.h"
#include "pav/oracle.hpp"
#include "support.hpp"

using namespace pav;

namespace {
struct Inst {
  RewritingSystem rs;
  GroundSystem g;
  Behavior b;
  Inst(const std::string& name, int size)
      : rs(corpus_system(name)), g(ground_system(rs, *tree_with_size(rs, size))), b(g, rs.components) {}
};
}  // namespace

TEST_CASE("literal ring is stuck at init") {
  Inst r("ring", 3);
  Configuration s = r.b.initial();
  for (size_t k = 0; k < r.b.interactions().size(); ++k) CHECK_FALSE(r.b.enabled(s, static_cast<int>(k)));
  CHECK(r.b.deadlocked(s));
  ReachResult rr = reachable(r.b);
  CHECK(rr.configs.size() == 1);
  CHECK_THROWS_WITH_AS(r.b.enabled(s, GroundInteraction{{"out", "nowhere"}}), doctest::Contains("UnknownInteraction"), Error);
}

TEST_CASE("token ring moves its token around") {
  Inst r("token-ring", 3);
  ReachResult rr = reachable(r.b);
  CHECK(rr.configs.size() == 4);  // head holds it, or one of the three cells
  for (const auto& s : rr.configs) {
    CHECK_FALSE(r.b.deadlocked(s));
    CHECK(r.b.trap_invariant_holds(s));
  }
  // no token anywhere
  Configuration empty = r.b.initial();
  for (int i = 0; i < r.b.n_instances(); ++i)
    empty[i] = r.b.type_of(i).state_index(r.b.type_of(i).name == "Head" ? "hq0" : "q0");
  CHECK_FALSE(r.b.trap_invariant_holds(empty));
}

TEST_CASE("fire and fire back") {
  Inst r("token-ring", 2);
  Configuration s = r.b.initial();
  int k = -1;
  for (size_t i = 0; i < r.b.interactions().size(); ++i)
    if (r.b.enabled(s, static_cast<int>(i))) k = static_cast<int>(i);
  REQUIRE(k >= 0);
  Configuration t = r.b.fire(s, k);
  CHECK(t != s);
  CHECK_FALSE(r.b.enabled(t, k));
}

TEST_CASE("maximal trap against subsets") {
  Inst r("token-ring", 2);
  PlaceSet all = r.b.all_places();
  CHECK(r.b.maximal_trap_within({}).empty());
  CHECK(r.b.is_trap(r.b.maximal_trap_within(all)));
  for (const auto& drop : all) {
    PlaceSet q = all;
    q.erase(drop);
    PlaceSet want;
    std::vector<Place> pl(q.begin(), q.end());
    for (unsigned m = 1; m < (1u << pl.size()); ++m) {
      PlaceSet th;
      for (size_t i = 0; i < pl.size(); ++i)
        if (m >> i & 1) th.insert(pl[i]);
      if (r.b.is_trap(th)) want.insert(th.begin(), th.end());
    }
    CHECK(r.b.maximal_trap_within(q) == want);
  }
}

TEST_CASE("philosopher verdicts at three") {
  Inst sym("alt-philo-sym", 3);
  GroundVerdict v = verify_ground(sym.b, sym.rs.queries[0]);
  CHECK(v.kind == GroundVerdict::Kind::UnsafeWitness);
  Configuration s = sym.b.initial();
  for (const auto& pi : v.witness) s = sym.b.fire(s, pi);
  CHECK(sym.b.deadlocked(s));
  CHECK(sym.b.trap_invariant_holds(s));

  Inst asym("alt-philo-asym", 3);
  GroundVerdict a = verify_ground(asym.b, asym.rs.queries[0]);
  CHECK(a.exact_safe == std::optional<bool>(true));
  CHECK_FALSE(a.trap_proved);

  Inst sync("sync-philo", 4);
  GroundVerdict y = verify_ground(sync.b, sync.rs.queries[0]);
  CHECK(y.trap_proved);
  CHECK(y.kind == GroundVerdict::Kind::SafeProved);
}

TEST_CASE("overflow is reported") {
  Inst r("sync-philo", 4);
  GroundVerdict v = verify_ground(r.b, r.rs.queries[0], 2);
  CHECK_FALSE(v.exact_safe.has_value());
}
