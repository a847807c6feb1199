#include <doctest.h>

#include "bbroot/blackbox.hpp"
#include "bbroot/random.hpp"

using namespace bbroot;

static GroupSpec spec(Family f, unsigned n, unsigned p, unsigned k = 1) {
  GroupSpec s;
  s.family = f;
  s.n = n;
  s.p = p;
  s.k = k;
  return s;
}

TEST_CASE("exponent split") {
  CHECK(exponent_split(480) == std::pair<unsigned, Natural>{5, 15});
  CHECK(exponent_split(120) == std::pair<unsigned, Natural>{3, 15});
  CHECK(exponent_split(15) == std::pair<unsigned, Natural>{0, 15});
  auto e = Exponent::of(480);
  CHECK(e.two_adic == 5);
  CHECK(e.odd == 15);
}

TEST_CASE("SL2(5) black box") {
  auto bb = bb_from_spec(spec(Family::SL, 2, 5));
  CHECK(bb->exponent().value == 480);
  const auto* mb = matrix_backend(*bb);
  REQUIRE(mb);
  Field f = mb->field();
  Element u = mb->encode(Matrix::from_ints(f, {{1, 1}, {0, 1}}));
  Element m1 = mb->encode(Matrix::from_ints(f, {{-1, 0}, {0, -1}}));
  CHECK(bb->equal(bb_pow(*bb, u, 1), u));
  CHECK(bb->is_identity(bb_pow(*bb, u, 5)));
  CHECK(order_divides(*bb, bb->identity(), 7));
  CHECK(order_divides(*bb, m1, 2));
  CHECK_FALSE(order_divides(*bb, m1, 3));
  CHECK(order_divides(*bb, u, 15));
  CHECK_FALSE(order_divides(*bb, u, 12));
}

TEST_CASE("oracle laws, power consistency and exponent contract") {
  std::vector<GroupSpec> specs = {spec(Family::SL, 2, 5), spec(Family::Sp, 6, 5), spec(Family::SU, 4, 5),
                                  spec(Family::OmegaOdd, 7, 5), spec(Family::OmegaMinus, 8, 5),
                                  spec(Family::SL, 6, 5), spec(Family::AffineSL, 3, 5),
                                  spec(Family::BlockSL, 3, 5, 2)};
  for (auto& s : specs) {
    CAPTURE(family_name(s.family));
    auto bb = bb_from_spec(s);
    for (auto& g : bb->gens()) CHECK(bb->is_identity(bb_pow(*bb, g, bb->exponent().value)));
    RngStream rng(7);
    PrsState prs = make_sampler(Subgroup::whole(bb), {}, rng);
    for (int t = 0; t < 1000; ++t) {
      Element x = prs.next();
      CHECK(bb->is_identity(bb_pow(*bb, x, bb->exponent().value)));
      if (t < 20) {
        Element y = prs.next(), z = prs.next();
        CHECK(bb->equal(bb->mult(bb->mult(x, y), z), bb->mult(x, bb->mult(y, z))));
        CHECK(bb->is_identity(bb->mult(x, bb->inv(x))));
        std::uint64_t a = rng.next(), b = rng.next();
        Natural na(a), nb(b);
        CHECK(bb->equal(bb_pow(*bb, x, na + nb), bb->mult(bb_pow(*bb, x, na), bb_pow(*bb, x, nb))));
      }
    }
  }
  CHECK(bb_from_spec(spec(Family::SL, 2, 5))->is_identity(bb_from_spec(spec(Family::SL, 2, 5))->identity()));
}

TEST_CASE("unsupported family") {
  GroupSpec s = spec(Family::Sp, 5, 5);
  CHECK_THROWS_AS(bb_from_spec(s), Error);
}
