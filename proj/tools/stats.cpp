#include "stats.hpp"

#include <cmath>

#include "bbroot/involution.hpp"
#include "bbroot/oracle.hpp"

namespace bbroot::stats {

double Estimate::sigma() const { return trials ? std::sqrt(floor * (1 - floor) / double(trials)) : 0.0; }

bool Estimate::meets() const { return trials > 0 && rate() >= floor - 3 * sigma(); }

std::pair<double, double> Estimate::wilson() const {
  if (!trials) return {0, 1};
  const double z = 1.96, n = double(trials), p = rate();
  const double c = (p + z * z / (2 * n)) / (1 + z * z / n);
  const double h = z * std::sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / (1 + z * z / n);
  return {std::max(0.0, c - h), std::min(1.0, c + h)};
}

nlohmann::json Estimate::to_json() const {
  auto [lo, hi] = wilson();
  return {{"name", name},   {"hits", hits},       {"trials", trials}, {"rate", rate()},
          {"floor", floor}, {"sigma", sigma()},   {"wilson95", {lo, hi}}, {"meets_floor", meets()}};
}

Estimate even_order(const Subgroup& g, std::size_t trials, RngStream& rng) {
  const BlackBox& bb = g.bb();
  Estimate e{"even order", 0, trials, 0.25};
  PrsState prs = make_sampler(g, SamplingConfig{}, rng);
  for (std::size_t t = 0; t < trials; ++t)
    if (!bb.is_identity(bb_pow(bb, prs.next(), bb.exponent().odd))) ++e.hits;
  return e;
}

Estimate odd_products(const Subgroup& g, const Element& i, std::size_t trials, RngStream& rng) {
  const BlackBox& bb = g.bb();
  Estimate e{"odd order i i^g", 0, trials, 1.0 / 32};
  PrsState prs = make_sampler(g, SamplingConfig{}, rng);
  for (std::size_t t = 0; t < trials; ++t) {
    Element z = bb.mult(i, bb.conj(i, prs.next()));
    if (bb.is_identity(bb_pow(bb, z, bb.exponent().odd))) ++e.hits;
  }
  return e;
}

Estimate pair_generation(const Subgroup& g, const Subgroup& k, const GroupSpec& spec, std::size_t trials,
                         RngStream& rng) {
  const BlackBox& bb = g.bb();
  const Natural q = spec.q();
  Estimate e{"<K,K^g> nondegenerate rank two", 0, trials, 1.0 - 1.0 / (q * q * q * q).convert_to<double>()};
  const auto kmats = oracle::to_matrices(k);
  const std::size_t d = commutator_space(kmats, spec).dimension;
  const bool form = form_kind(spec.family) != FormKind::None;
  PrsState prs = make_sampler(g, SamplingConfig{}, rng);
  for (std::size_t t = 0; t < trials; ++t) {
    Element x = prs.next();
    Subgroup n{k.parent, k.gens};
    bool commute = true;
    for (const auto& a : k.gens) {
      Element c = bb.conj(a, x);
      for (const auto& b : k.gens)
        if (!bb.commute(b, c)) commute = false;
      n.gens.push_back(std::move(c));
    }
    CommutatorSpace cs = commutator_space(oracle::to_matrices(n), spec);
    const bool ok = cs.dimension == 2 * d && (!form || cs.nondegenerate.value_or(false)) && !commute;
    if (ok) ++e.hits;
  }
  return e;
}

namespace {

bool central_block(const Matrix& m, std::size_t at, std::size_t b) {
  const Field& f = m.field();
  const Packed s = m.at(at, at);
  if (s != 1 && s != f.neg(1)) return false;
  for (std::size_t i = 0; i < b; ++i)
    for (std::size_t j = 0; j < b; ++j)
      if (m.at(at + i, at + j) != (i == j ? s : 0)) return false;
  return true;
}

}  // namespace

Estimate pseudo_split(const Subgroup& g, std::size_t block, std::size_t trials, RngStream& rng) {
  const BlackBox& bb = g.bb();
  const MatrixBackend* mb = matrix_backend(bb);
  if (!mb) throw Error(Errc::BackendNotWhiteBox, "pseudo-involution split needs matrices");
  Estimate e{"pseudo-involution central in one factor", 0, trials, 1.0 / 24};
  PrsState prs = make_sampler(g, SamplingConfig{}, rng);
  for (std::size_t t = 0; t < trials; ++t) {
    TwoPowerChain ch = two_power_chain(bb, prs.next(), bb.exponent());
    if (!ch.order_four || !centralizes(g, bb.mult(*ch.order_four, *ch.order_four))) continue;
    Matrix m = mb->decode(*ch.order_four);
    if (central_block(m, 0, block) != central_block(m, block, block)) ++e.hits;
  }
  return e;
}

HeartCensus heart_census(const Subgroup& g, const Element& i, std::size_t target, RngStream& rng) {
  const BlackBox& bb = g.bb();
  HeartCensus h;
  PrsState prs = make_sampler(g, SamplingConfig{}, rng);
  while (h.zeta0 < target && h.draws < 100 * target) {
    ++h.draws;
    ZetaResult r = zeta(bb, i, prs.next(), bb.exponent());
    if (r.kind != ZetaKind::Zeta0) continue;
    ++h.zeta0;
    if (centralizes(g, r.value)) ++h.central;
    if (!bb.is_identity(r.value)) ++h.nontrivial;
  }
  return h;
}

}  // namespace bbroot::stats
