#include <doctest.h>

#include <cmath>
#include <set>

#include "bbroot/oracle.hpp"
#include "bbroot/random.hpp"
#include "fixtures.hpp"

using namespace bbroot;

static unsigned exact_order(const BlackBox& bb, const Element& x) {
  Element y = x;
  for (unsigned e = 1; e < 100000; ++e) {
    if (bb.is_identity(y)) return e;
    y = bb.mult(y, x);
  }
  return 0;
}

TEST_CASE("named streams are reproducible and independent") {
  RngStream root(42);
  RngStream a = root.child("a"), a2 = root.child("a"), b = root.child("b");
  CHECK(a.next() == a2.next());
  CHECK(root.child("a").next() != b.next());
  RngStream r1(9), r2(9);
  for (int i = 0; i < 10; ++i) r1.next();
  CHECK(r1.child("x", 3).next() == r2.child("x", 3).next());
  CHECK(r2.split("s").next() != r2.split("s").next());
}

TEST_CASE("trivial subgroup draws identity") {
  auto bb = bb_from_spec(fx::spec(Family::SL, 2, 5));
  Subgroup one{bb, {bb->identity()}};
  PrsState s = prs_init(one, 10, 100, 1);
  for (int i = 0; i < 50; ++i) CHECK(bb->is_identity(prs_next(s)));
  RngStream rng(1);
  PrsState e = make_sampler(Subgroup{bb, {}}, {}, rng);
  CHECK(bb->is_identity(e.next()));
  CHECK_THROWS_AS(prs_init(Subgroup{bb, {}}, 10, 100, 1), Error);
}

TEST_CASE("SL2(5) slots satisfy the exponent and draws are deterministic") {
  auto bb = bb_from_spec(fx::spec(Family::SL, 2, 5));
  Subgroup g = Subgroup::whole(bb);
  PrsState s = prs_init(g, 10, 100, 5);
  for (auto& x : s.slots()) CHECK(order_divides(*bb, x, 480));
  PrsState a = prs_init(g, 10, 100, 77), b = prs_init(g, 10, 100, 77);
  for (int i = 0; i < 200; ++i) CHECK(a.next().words() == b.next().words());
  CHECK(a.steps_taken() == 200);
}

TEST_CASE("SL2(5) coverage and order census") {
  auto bb = bb_from_spec(fx::spec(Family::SL, 2, 5));
  PrsState s = prs_init(Subgroup::whole(bb), 10, 100, 3);
  std::set<std::vector<std::uint32_t>> seen;
  for (int i = 0; i < 100; ++i) seen.insert(s.next().words());
  CHECK(seen.size() >= 15);
  // Exhaustive census of SL2(5) for the oracle.
  auto all = oracle::closure_set(oracle::to_matrices(Subgroup::whole(bb)), 1000);
  REQUIRE(all);
  std::set<unsigned> census;
  for (auto& w : *all) census.insert(exact_order(*bb, Element(w)));
  CHECK(census == std::set<unsigned>{1, 2, 3, 4, 5, 6, 10});
  std::set<unsigned> observed;
  for (int i = 0; i < 5000; ++i) observed.insert(exact_order(*bb, s.next()));
  CHECK(observed == census);
}

TEST_CASE("slots keep generating the same subgroup") {
  for (auto gens : {fx::sl2(5), fx::a5()}) {
    auto bb = fx::box(gens, 5, 5);
    PrsState s = prs_init(Subgroup::whole(bb), 4, 0, 11);
    for (int round = 0; round < 5; ++round) {
      for (int i = 0; i < 37; ++i) s.next();
      auto eq = oracle::same_closure(oracle::to_matrices(Subgroup{bb, s.slots()}), gens, 100000);
      CHECK(eq == std::optional<bool>(true));
    }
  }
}

TEST_CASE("even-order proportion in Sp6(5)") {
  auto bb = bb_from_spec(fx::spec(Family::Sp, 6, 5));
  PrsState s = prs_init(Subgroup::whole(bb), default_slots(bb->gens().size()), 100, 21);
  int even = 0, n = 2000;
  for (int i = 0; i < n; ++i)
    if (!bb->is_identity(bb_pow(*bb, s.next(), bb->exponent().odd))) ++even;
  CHECK(double(even) / n >= 0.25 - 3 * std::sqrt(0.25 * 0.75 / n));
}
