#include <doctest.h>

#include "bbroot/matgrp.hpp"
#include "bbroot/oracle.hpp"

using namespace bbroot;

static GroupSpec spec(Family f, unsigned n, unsigned p, unsigned k = 1) {
  GroupSpec s;
  s.family = f;
  s.n = n;
  s.p = p;
  s.k = k;
  return s;
}

TEST_CASE("SL2(5) generators") {
  auto gens = standard_generators(spec(Family::SL, 2, 5));
  CHECK(gens.size() == 2);
  for (auto& g : gens) CHECK(g.det() == 1);
  CHECK(oracle::brute_closure(gens, 1000000) == std::optional<std::size_t>(120));
  CHECK(group_order(spec(Family::SL, 2, 5)) == 120);
  CHECK(group_order(spec(Family::GL, 2, 5)) == 480);
  CHECK(oracle::brute_closure(standard_generators(spec(Family::GL, 2, 5)), 1000000) ==
        std::optional<std::size_t>(480));
}

TEST_CASE("closure agrees with order formulas on small groups") {
  std::vector<GroupSpec> specs = {
      spec(Family::SL, 2, 7),         spec(Family::SL, 2, 5, 2),   spec(Family::SL, 3, 5),
      spec(Family::SU, 3, 5),         spec(Family::Sp, 4, 3),      spec(Family::OmegaOdd, 3, 5),
      spec(Family::OmegaPlus, 4, 5),  spec(Family::OmegaMinus, 4, 5), spec(Family::OmegaOdd, 5, 3),
      spec(Family::SU, 2, 7),         spec(Family::AffineSL, 2, 5), spec(Family::OmegaPlus, 4, 3),
  };
  for (auto& s : specs) {
    CAPTURE(family_name(s.family));
    CAPTURE(s.n);
    CAPTURE(s.p);
    auto gens = standard_generators(s);
    auto sz = oracle::brute_closure(gens, 2000000);
    REQUIRE(sz.has_value());
    CHECK(Natural(*sz) == group_order(s));
  }
  CHECK(group_order(spec(Family::OmegaOdd, 3, 5)) == 60);
  CHECK(group_order(spec(Family::OmegaPlus, 4, 5)) == 7200);
  CHECK(group_order(spec(Family::OmegaMinus, 4, 5)) == 7800);
  CHECK(group_order(spec(Family::SU, 3, 5)) == 378000);
  CHECK(group_order(spec(Family::Sp, 4, 3)) == 51840);
}

TEST_CASE("large closure exceeds cap") {
  CHECK_FALSE(oracle::brute_closure(standard_generators(spec(Family::Sp, 6, 5)), 1000000).has_value());
}

TEST_CASE("generators preserve forms and have determinant one") {
  std::vector<GroupSpec> specs = {
      spec(Family::Sp, 6, 5),         spec(Family::Sp, 6, 3, 3),      spec(Family::SU, 4, 5),
      spec(Family::SU, 5, 3),         spec(Family::OmegaOdd, 7, 5),   spec(Family::OmegaPlus, 8, 5),
      spec(Family::OmegaMinus, 8, 5), spec(Family::OmegaMinus, 6, 3, 2), spec(Family::SL, 6, 5),
  };
  for (auto& s : specs) {
    CAPTURE(family_name(s.family));
    CAPTURE(s.n);
    auto gens = standard_generators(s);
    auto g = form_of(s);
    for (auto& m : gens) {
      CHECK(m.det() == 1);
      if (g) CHECK(preserves_form(m, *g, form_kind(s.family), conjugation_power(s)));
    }
  }
}

TEST_CASE("user supplied form") {
  // Sp4 over GF(3) with the block form [[0, I], [-I, 0]].
  GroupSpec s = spec(Family::Sp, 4, 3);
  Field f = module_field(s);
  s.form = Matrix::from_ints(f, {{0, 0, 1, 0}, {0, 0, 0, 1}, {-1, 0, 0, 0}, {0, -1, 0, 0}});
  validate_spec(s);
  auto gens = standard_generators(s);
  for (auto& m : gens) CHECK(preserves_form(m, *s.form, FormKind::Alternating, 0));
  CHECK(Natural(*oracle::brute_closure(gens, 2000000)) == group_order(s));

  Field f5 = build_field(5, 1);
  GroupSpec bad = spec(Family::Sp, 4, 5);
  bad.form = Matrix::from_ints(f5, {{0, 0, 1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, 1, 0, 0}});
  CHECK_THROWS_AS(validate_spec(bad), Error);

  // Symmetric form of plus type handed to OmegaMinus is rejected.
  GroupSpec witt = spec(Family::OmegaMinus, 4, 5);
  witt.form = Matrix::from_ints(f5, {{0, 0, 0, 1}, {0, 0, 1, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}});
  CHECK_THROWS_AS(validate_spec(witt), Error);
}

TEST_CASE("commutator spaces of long root fixtures") {
  // Long root SL2 in SL6(5): act on the first two coordinates.
  GroupSpec sl = spec(Family::SL, 6, 5);
  Field f = module_field(sl);
  std::vector<Matrix> k;
  for (auto& g : standard_generators(spec(Family::SL, 2, 5))) {
    Matrix m = Matrix::identity(f, 6);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) m.at(i, j) = g.at(i, j);
    k.push_back(m);
  }
  CHECK(commutator_space(k, sl).dimension == 2);
  CHECK(commutator_space({}, sl).dimension == 0);
  CHECK(commutator_space({Matrix::identity(f, 6)}, sl).dimension == 0);

  // Sp(V1) in Sp6(5) on the hyperbolic pair (e1, f1) of the antidiagonal form.
  GroupSpec sp = spec(Family::Sp, 6, 5);
  std::vector<Matrix> ks;
  for (auto& g : standard_generators(spec(Family::SL, 2, 5))) {
    Matrix m = Matrix::identity(f, 6);
    m.at(0, 0) = g.at(0, 0);
    m.at(0, 5) = g.at(0, 1);
    m.at(5, 0) = g.at(1, 0);
    m.at(5, 5) = g.at(1, 1);
    CHECK(preserves_form(m, *form_of(sp), FormKind::Alternating, 0));
    ks.push_back(m);
  }
  auto cs = commutator_space(ks, sp);
  CHECK(cs.dimension == 2);
  CHECK(cs.nondegenerate == std::optional<bool>(true));
  CHECK(cs.witt_index == std::optional<std::size_t>(1));

  // Monotone under adding generators.
  auto more = ks;
  more.push_back(standard_generators(sp)[0]);
  CHECK(commutator_space(more, sp).dimension >= cs.dimension);
}

TEST_CASE("form decomposition and witt index") {
  Field f = build_field(5, 1);
  // Plus type 4-space: two hyperbolic pairs.
  Matrix g = Matrix::from_ints(f, {{0, 0, 0, 1}, {0, 0, 1, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}});
  std::vector<Vec> basis;
  for (int i = 0; i < 4; ++i) {
    Vec v(4, 0);
    v[i] = 1;
    basis.push_back(v);
  }
  auto d = decompose_form(g, FormKind::Symmetric, 0, basis);
  CHECK(d.e.size() == 2);
  CHECK(d.aniso.empty());
  CHECK(d.radical.empty());
  for (std::size_t i = 0; i < d.e.size(); ++i) {
    CHECK(form_eval(g, FormKind::Symmetric, 0, d.e[i], d.e[i]) == 0);
    CHECK(form_eval(g, FormKind::Symmetric, 0, d.f[i], d.f[i]) == 0);
    CHECK(form_eval(g, FormKind::Symmetric, 0, d.e[i], d.f[i]) == 1);
  }
  // Minus type: diag(1, -2) is anisotropic since 2 is a non-square mod 5.
  Matrix m = Matrix::from_ints(f, {{1, 0}, {0, -2}});
  auto d2 = decompose_form(m, FormKind::Symmetric, 0, {{1, 0}, {0, 1}});
  CHECK(d2.e.empty());
  CHECK(d2.aniso.size() == 2);
  // Degenerate form: radical split off.
  Matrix r = Matrix::from_ints(f, {{0, 1, 0}, {1, 0, 0}, {0, 0, 0}});
  auto d3 = decompose_form(r, FormKind::Symmetric, 0, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK(d3.radical.size() == 1);
  CHECK(d3.e.size() == 1);
}

TEST_CASE("unsupported and malformed specs") {
  CHECK_THROWS_AS(validate_spec(spec(Family::Sp, 5, 5)), Error);
  CHECK_THROWS_AS(validate_spec(spec(Family::OmegaPlus, 5, 5)), Error);
  CHECK_THROWS_AS(validate_spec(spec(Family::SL, 3, 4)), Error);
  CHECK(parse_family("G2") == std::nullopt);
}
