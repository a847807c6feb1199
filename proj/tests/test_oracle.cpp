#include <doctest.h>

#include <nlohmann/json.hpp>

#include "bbroot/oracle.hpp"
#include "fixtures.hpp"

using namespace bbroot;

namespace {

Subgroup encode(const BlackBoxPtr& bb, const std::vector<Matrix>& ms) {
  const auto* mb = matrix_backend(*bb);
  Subgroup s{bb, {}};
  for (const auto& m : ms) s.gens.push_back(mb->encode(m));
  return s;
}

class OpaqueBackend final : public Backend {
 public:
  Element multiply(const Element& a, const Element&) const override { return a; }
  Element invert(const Element& a) const override { return a; }
  bool is_identity(const Element&) const override { return true; }
  Element identity() const override { return Element({0}); }
  std::size_t encoding_bits() const override { return 1; }
  std::string name() const override { return "opaque"; }
};

}  // namespace

TEST_CASE("brute closure") {
  CHECK(oracle::brute_closure(fx::sl2(5), 1000000) == std::optional<std::size_t>(120));
  auto gl = standard_generators(fx::spec(Family::GL, 2, 5));
  CHECK(oracle::brute_closure(gl, 1000000) == std::optional<std::size_t>(480));
  auto sp6 = standard_generators(fx::spec(Family::Sp, 6, 5));
  CHECK_FALSE(oracle::brute_closure(sp6, 100000));
  CHECK(oracle::same_closure(fx::sl2(5), fx::sl2(5), 1000) == std::optional<bool>(true));
  CHECK(oracle::same_closure(fx::sl2(5), gl, 1000) == std::optional<bool>(false));
}

TEST_CASE("verify_sl2") {
  auto bb = bb_from_spec(fx::spec(Family::SL, 2, 5));
  auto rep = oracle::verify_sl2(Subgroup::whole(bb), 5, 64);
  CHECK(rep.overall());
  bool saw_order = false;
  for (const auto& c : rep.checks)
    if (c.measured == "120") saw_order = true;
  CHECK(saw_order);

  auto a5 = bb_from_spec(fx::spec(Family::OmegaOdd, 3, 5));
  CHECK_FALSE(oracle::verify_sl2(Subgroup::whole(a5), 5, 64).overall());
  CHECK_FALSE(oracle::verify_sl2(Subgroup{bb, {}}, 5, 64).overall());
  CHECK_FALSE(oracle::verify_sl2(Subgroup{bb, {bb->identity()}}, 5, 64).overall());

  auto j = nlohmann::json::parse(rep.to_json());
  CHECK(j["overall"] == true);
  CHECK(j["checks"].size() == rep.checks.size());
}

TEST_CASE("long root signatures") {
  const auto sp = fx::spec(Family::Sp, 6, 5);
  auto sp6 = bb_from_spec(sp);
  std::vector<Matrix> lr;
  for (const auto& a : fx::sl2(5)) lr.push_back(fx::embed(a, 6, {0, 5}));
  CHECK(oracle::verify_long_root_whitebox(encode(sp6, lr), sp).overall());

  std::vector<Matrix> diag;
  for (const auto& a : fx::sl2(5)) {
    Matrix m = fx::embed(a, 6, {1, 4});
    m.at(2, 2) = a.at(0, 0);
    m.at(2, 3) = a.at(0, 1);
    m.at(3, 2) = a.at(1, 0);
    m.at(3, 3) = a.at(1, 1);
    diag.push_back(m);
  }
  auto bad = oracle::verify_long_root_whitebox(encode(sp6, diag), sp);
  CHECK_FALSE(bad.overall());
  bool dim4 = false;
  for (const auto& c : bad.checks)
    if (c.measured == "4") dim4 = true;
  CHECK(dim4);

  const auto om = fx::spec(Family::OmegaOdd, 7, 5);
  auto o7 = bb_from_spec(om);
  auto k = fx::omega7_long_root();
  const auto form = *form_of(om);
  for (const auto& m : k) CHECK(preserves_form(m, form, FormKind::Symmetric, 0));
  auto rep = oracle::verify_long_root_whitebox(encode(o7, k), om);
  CHECK(rep.overall());
  auto cs = commutator_space(k, om);
  CHECK(cs.dimension == 4);
  CHECK(cs.witt_index == std::optional<std::size_t>(2));

  const auto sl = fx::spec(Family::SL, 6, 5);
  auto sl6 = bb_from_spec(sl);
  std::vector<Matrix> t;
  for (const auto& a : fx::sl2(5)) t.push_back(fx::embed(a, 6, {2, 4}));
  CHECK(oracle::verify_long_root_whitebox(encode(sl6, t), sl).overall());
}

TEST_CASE("oracle errors") {
  auto be = std::make_shared<OpaqueBackend>();
  auto bb = std::make_shared<BlackBox>(be, std::vector<Element>{Element({1})}, Exponent::of(Natural(2)), 5,
                                       Natural(5));
  try {
    oracle::to_matrices(Subgroup::whole(bb));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::BackendNotWhiteBox);
  }
  auto aff = bb_from_spec(fx::spec(Family::AffineSL, 3, 5));
  try {
    oracle::verify_long_root_whitebox(Subgroup::whole(aff), fx::spec(Family::AffineSL, 3, 5));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::UnsupportedFamily);
  }
}

TEST_CASE("enveloping dimension") {
  CHECK(oracle::enveloping_dimension(fx::sl2(5)) == 4);
  std::vector<Matrix> lr;
  for (const auto& a : fx::sl2(5)) lr.push_back(fx::embed(a, 4, {0, 1}));
  // M2 on the moving plane plus the identity block
  CHECK(oracle::enveloping_dimension(lr) == 5);
}

TEST_CASE("unipotent groups") {
  const Field f = fx::sl2(5)[0].field();
  CHECK(oracle::is_unipotent({Matrix::from_ints(f, {{1, 1}, {0, 1}})}));
  CHECK_FALSE(oracle::is_unipotent(fx::sl2(5)));
  CHECK_FALSE(oracle::is_unipotent({Matrix::from_ints(f, {{-1, 0}, {0, -1}})}));
  // Upper and lower transvections generate SL2, which is not a 5-group.
  CHECK_FALSE(oracle::is_unipotent({Matrix::from_ints(f, {{1, 1}, {0, 1}}), Matrix::from_ints(f, {{1, 0}, {1, 1}})}));

  auto aff = bb_from_spec(fx::spec(Family::AffineSL, 3, 5));
  const auto* mb = matrix_backend(*aff);
  Matrix t = Matrix::identity(mb->field(), 4);
  t.at(0, 3) = 1;
  CHECK(oracle::verify_pcore_witness(mb->encode(t), Subgroup::whole(aff), 5).overall());
  Matrix u = Matrix::identity(mb->field(), 4);
  u.at(0, 1) = 1;
  auto bad = oracle::verify_pcore_witness(mb->encode(u), Subgroup::whole(aff), 5);
  CHECK_FALSE(bad.overall());
}
