#include <doctest.h>

#include "bbroot/involution.hpp"
#include "bbroot/oracle.hpp"
#include "bbroot/subgrp.hpp"
#include "fixtures.hpp"

using namespace bbroot;

namespace {

struct Gl25 {
  BlackBoxPtr bb = bb_from_spec(fx::spec(Family::GL, 2, 5));
  const MatrixBackend* mb = matrix_backend(*bb);
  Field f = mb->field();
  Element el(std::vector<std::vector<std::int64_t>> rows) const { return mb->encode(Matrix::from_ints(f, rows)); }
};

bool is_scalar_diag(const Matrix& m) {
  for (std::size_t i = 0; i < m.n(); ++i)
    for (std::size_t j = 0; j < m.n(); ++j)
      if (i != j && m.at(i, j) != 0) return false;
  return true;
}

}  // namespace

TEST_CASE("make_involution") {
  Gl25 g;
  const Exponent& e = g.bb->exponent();
  REQUIRE(e.value == 480);
  auto t = g.el({{0, 1}, {1, 0}});
  auto r = make_involution(*g.bb, t, e);
  REQUIRE(r);
  CHECK(g.bb->equal(*r, t));
  CHECK_FALSE(make_involution(*g.bb, g.el({{1, 1}, {0, 1}}), e).has_value());
  CHECK_FALSE(make_involution(*g.bb, g.bb->identity(), e).has_value());
  auto d = make_involution(*g.bb, g.el({{2, 0}, {0, 3}}), e);
  REQUIRE(d);
  CHECK(g.bb->equal(*d, g.el({{-1, 0}, {0, -1}})));
}

TEST_CASE("pseudo-involutions") {
  auto bb = bb_from_spec(fx::spec(Family::SL, 2, 5));
  const auto* mb = matrix_backend(*bb);
  Element j = mb->encode(Matrix::from_ints(mb->field(), {{2, 0}, {0, 3}}));
  Element j2 = bb->mult(j, j);
  CHECK_FALSE(bb->is_identity(j2));
  CHECK(bb->is_identity(bb->mult(j2, j2)));
  CHECK(centralizes(Subgroup::whole(bb), j2));
  RngStream rng(3);
  auto found = make_pseudo_involution(Subgroup::whole(bb), bb->exponent(), 200, {}, rng);
  REQUIRE(found);
  Element s = bb->mult(*found, *found);
  CHECK_FALSE(bb->is_identity(s));
  CHECK(bb->is_identity(bb->mult(s, s)));
  CHECK(centralizes(Subgroup::whole(bb), s));

  auto a5 = fx::box(fx::a5(), 5, 5);
  CHECK_FALSE(make_pseudo_involution(Subgroup::whole(a5), a5->exponent(), 300, {}, rng).has_value());
  CHECK_FALSE(make_pseudo_involution(Subgroup{bb, {}}, bb->exponent(), 50, {}, rng).has_value());
}

TEST_CASE("zeta examples in GL2(5)") {
  Gl25 g;
  const Exponent& e = g.bb->exponent();
  Element i = g.el({{1, 0}, {0, -1}});
  auto r1 = zeta(*g.bb, i, g.el({{1, 1}, {0, 1}}), e);
  CHECK(r1.kind == ZetaKind::Zeta1);
  CHECK(g.bb->is_identity(r1.value));
  auto r0 = zeta(*g.bb, i, g.el({{0, 1}, {4, 0}}), e);
  CHECK(r0.kind == ZetaKind::Zeta0);
  CHECK(g.bb->equal(r0.value, g.el({{-1, 0}, {0, -1}})));
  Element c = g.el({{-1, 0}, {0, -1}});
  Element x = g.el({{1, 2}, {3, 4}});
  auto rc = zeta(*g.bb, c, x, e);
  CHECK(rc.kind == ZetaKind::Zeta1);
  CHECK(g.bb->equal(rc.value, g.bb->inv(x)));
  CHECK_THROWS_AS(zeta(*g.bb, g.el({{1, 1}, {0, 1}}), x, e), Error);
}

TEST_CASE("zeta outputs commute with i and Zeta0 never returns i without center") {
  auto bb = bb_from_spec(fx::spec(Family::OmegaOdd, 5, 5));
  RngStream rng(17);
  PrsState prs = make_sampler(Subgroup::whole(bb), {}, rng);
  std::optional<Element> i;
  while (!i) i = make_involution(*bb, prs.next(), bb->exponent());
  int zeta0 = 0;
  for (int t = 0; t < 300; ++t) {
    auto r = zeta(*bb, *i, prs.next(), bb->exponent());
    CHECK(bb->commute(r.value, *i));
    if (r.kind == ZetaKind::Zeta0) {
      ++zeta0;
      CHECK(bb->is_identity(bb->mult(r.value, r.value)));
      CHECK_FALSE(bb->equal(r.value, *i));
    }
  }
  CHECK(zeta0 > 0);
}

TEST_CASE("centralizer generators") {
  auto gens = fx::direct_product(fx::sl2(5), fx::sl2(5));
  auto bb = fx::box(gens, 5, 5);
  const auto* mb = matrix_backend(*bb);
  Element i = mb->encode(Matrix::from_ints(mb->field(), {{-1, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}));
  RngStream rng(5);
  Subgroup c = centralizer_gens(Subgroup::whole(bb), i, 50, {}, rng);
  for (auto& g : c.gens) CHECK(bb->commute(g, i));
  CHECK(oracle::brute_closure(oracle::to_matrices(c), 100000) == std::optional<std::size_t>(14400));

  // Long root style involution of SL4(5): centralizer outputs commute with it.
  auto sl4 = bb_from_spec(fx::spec(Family::SL, 4, 5));
  const auto* m4 = matrix_backend(*sl4);
  Element t = m4->encode(Matrix::from_ints(m4->field(), {{-1, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}));
  Subgroup c4 = centralizer_gens(Subgroup::whole(sl4), t, 50, {}, rng);
  for (auto& g : c4.gens) CHECK(sl4->commute(g, t));

  // Central i: zeta1 outputs are inverses of random elements.
  auto sl2 = bb_from_spec(fx::spec(Family::SL, 2, 5));
  const auto* m2 = matrix_backend(*sl2);
  Element z = m2->encode(Matrix::from_ints(m2->field(), {{-1, 0}, {0, -1}}));
  Subgroup cz = centralizer_gens(Subgroup::whole(sl2), z, 30, {}, rng);
  CHECK(oracle::brute_closure(oracle::to_matrices(cz), 1000) == std::optional<std::size_t>(120));
  CHECK(heart_gens(Subgroup::whole(sl2), z, 30, {}, rng).gens.empty());
}

TEST_CASE("heart of a t1 involution in Sp4(5) is the center") {
  auto bb = bb_from_spec(fx::spec(Family::Sp, 4, 5));
  const auto* mb = matrix_backend(*bb);
  Field f = mb->field();
  Element i = mb->encode(Matrix::from_ints(f, {{-1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, -1}}));
  Element minus = mb->encode(Matrix::from_ints(f, {{-1, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, -1}}));
  RngStream rng(8);
  PrsState prs = make_sampler(Subgroup::whole(bb), {}, rng);
  int hits = 0, zeta0 = 0;
  for (int t = 0; t < 400; ++t) {
    auto r = zeta(*bb, i, prs.next(), bb->exponent());
    if (r.kind != ZetaKind::Zeta0) continue;
    ++zeta0;
    const bool ok = bb->is_identity(r.value) || bb->equal(r.value, minus);
    CHECK(ok);
    if (bb->equal(r.value, minus)) ++hits;
  }
  CHECK(zeta0 > 0);
  CHECK(hits > 0);
}

TEST_CASE("heart of a classical involution in SL4(5) has elements of order 5") {
  auto bb = bb_from_spec(fx::spec(Family::SL, 4, 5));
  const auto* mb = matrix_backend(*bb);
  Element i = mb->encode(Matrix::from_ints(mb->field(), {{-1, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}));
  RngStream rng(9);
  Subgroup h = heart_gens(Subgroup::whole(bb), i, 80, {}, rng);
  REQUIRE(!h.gens.empty());
  PrsState prs = make_sampler(h, {}, rng);
  bool order5 = false;
  for (int t = 0; t < 500 && !order5; ++t) {
    Element x = prs.next();
    CHECK(bb->commute(x, i));
    if (!bb->is_identity(x) && bb->is_identity(bb_pow(*bb, x, 5))) order5 = true;
  }
  CHECK(order5);
}

TEST_CASE("pseudo-involution hearts") {
  for (unsigned p : {5u, 7u}) {
    auto bb = bb_from_spec(fx::spec(Family::SL, 2, p));
    const auto* mb = matrix_backend(*bb);
    Field f = mb->field();
    Packed w = f.pow(f.primitive(), Natural((p - 1) / 4 == 0 ? 1 : (p - 1) / 4));
    // An order-4 element: diag(w, w^-1) with w of order 4 when p = 1 mod 4, else a rotation.
    Matrix jm = (p % 4 == 1) ? Matrix(f, 2, {w, 0, 0, f.inv(w)}) : Matrix::from_ints(f, {{0, 1}, {-1, 0}});
    Element j = mb->encode(jm);
    Element minus = mb->encode(Matrix::from_ints(f, {{-1, 0}, {0, -1}}));
    REQUIRE(bb->equal(bb->mult(j, j), minus));
    RngStream rng(p);
    PrsState prs = make_sampler(Subgroup::whole(bb), {}, rng);
    int hits = 0;
    Subgroup z1{bb, {}};
    for (int t = 0; t < 300; ++t) {
      Element g = prs.next();
      auto r = zeta(*bb, j, g, bb->exponent());
      if (r.kind == ZetaKind::Zeta0) {
        CHECK((bb->is_identity(r.value) || bb->equal(r.value, minus)));
        if (bb->equal(r.value, minus)) ++hits;
      } else if (!bb->is_identity(r.value)) {
        z1.gens.push_back(r.value);
      }
    }
    CHECK(hits > 0);
    // zeta1 images generate a subgroup with trivial second derived subgroup.
    REQUIRE(!z1.gens.empty());
    auto all = oracle::closure_set(oracle::to_matrices(z1), 10000);
    REQUIRE(all);
    MonteCarlo mc;
    Subgroup d2 = derived_subgroup(derived_subgroup(z1, mc, rng), mc, rng);
    CHECK(is_probably_trivial(d2));
  }
}

TEST_CASE("heart of a product splits by coordinates") {
  auto gens = fx::direct_product(fx::sl2(5), fx::sl2(5));
  auto bb = fx::box(gens, 5, 5);
  const auto* mb = matrix_backend(*bb);
  Element j = mb->encode(Matrix::from_ints(mb->field(), {{2, 0, 0, 0}, {0, 3, 0, 0}, {0, 0, 2, 0}, {0, 0, 0, 3}}));
  RngStream rng(12);
  Subgroup h = heart_gens(Subgroup::whole(bb), j, 200, {}, rng);
  REQUIRE(!h.gens.empty());
  for (auto& m : oracle::to_matrices(h)) {
    CHECK(is_scalar_diag(m));
    CHECK(m.at(0, 0) == m.at(1, 1));
    CHECK(m.at(2, 2) == m.at(3, 3));
  }
}
