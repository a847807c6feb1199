#include "bbroot/involution.hpp"

#include <thread>

namespace bbroot {

TwoPowerChain two_power_chain(const BlackBox& bb, const Element& x, const Exponent& e) {
  TwoPowerChain r;
  Element y = bb_pow(bb, x, e.odd);
  if (bb.is_identity(y)) return r;
  std::optional<Element> prev;
  for (unsigned s = 0; s <= e.two_adic; ++s) {
    Element y2 = bb.mult(y, y);
    if (bb.is_identity(y2)) {
      r.involution = y;
      r.order_four = prev;
      return r;
    }
    prev = y;
    y = std::move(y2);
  }
  throw Error(Errc::BadSpec, "exponent does not annihilate element");
}

std::optional<Element> make_involution(const BlackBox& bb, const Element& x, const Exponent& e) {
  return two_power_chain(bb, x, e).involution;
}

std::optional<Element> make_pseudo_involution(const Subgroup& x, const Exponent& e, std::size_t trials,
                                              const SamplingConfig& sc, RngStream& rng) {
  if (x.gens.empty()) return std::nullopt;
  const BlackBox& bb = x.bb();
  PrsState prs = make_sampler(x, sc, rng);
  for (std::size_t t = 0; t < trials; ++t) {
    TwoPowerChain c = two_power_chain(bb, prs.next(), e);
    if (!c.order_four) continue;
    if (centralizes(x, *c.involution)) return c.order_four;
  }
  return std::nullopt;
}

ZetaResult zeta(const BlackBox& bb, const Element& i, const Element& g, const Exponent& e) {
  Element i2 = bb.mult(i, i);
  if (!bb.is_identity(i2) && !bb.is_identity(bb.mult(i2, i2)))
    throw Error(Errc::NotAnInvolution, "zeta base is neither an involution nor a pseudo-involution");
  Element z = bb.mult(i, bb.conj(i, g));
  Element zm = bb_pow(bb, z, e.odd);
  if (bb.is_identity(zm)) {
    Element v = bb.mult(bb_pow(bb, z, Natural((e.odd + 1) / 2)), bb.inv(g));
    return {ZetaKind::Zeta1, std::move(v)};
  }
  // zm has 2-power order > 1; its last nonidentity square is i(z).
  Element y = std::move(zm);
  for (;;) {
    Element y2 = bb.mult(y, y);
    if (bb.is_identity(y2)) return {ZetaKind::Zeta0, std::move(y)};
    y = std::move(y2);
  }
}

namespace {

Subgroup collect(const Subgroup& x, const Element& i, std::size_t count, const SamplingConfig& sc,
                 RngStream& rng, bool keep_zeta1) {
  Subgroup out{x.parent, {}};
  if (x.gens.empty()) return out;
  const BlackBox& bb = x.bb();
  const unsigned workers = std::max(1u, std::min<unsigned>(sc.workers, unsigned(count)));
  std::vector<std::vector<Element>> parts(workers);
  auto work = [&](unsigned w, RngStream wr) {
    PrsState prs = make_sampler(x, sc, wr);
    const std::size_t share = count / workers + (w < count % workers ? 1 : 0);
    for (std::size_t t = 0; t < share; ++t) {
      ZetaResult r = zeta(bb, i, prs.next(), bb.exponent());
      if (r.kind == ZetaKind::Zeta1 && !keep_zeta1) continue;
      if (!bb.is_identity(r.value)) parts[w].push_back(std::move(r.value));
    }
  };
  // Worker streams depend only on (seed, worker id); results merge in worker order.
  const RngStream base = rng.split("zeta");
  if (workers == 1) {
    work(0, base.child("worker", 0));
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w, base.child("worker", w));
    for (auto& t : pool) t.join();
  }
  for (auto& part : parts)
    for (auto& g : part) out.gens.push_back(std::move(g));
  return out;
}

}  // namespace

Subgroup centralizer_gens(const Subgroup& x, const Element& i, std::size_t count, const SamplingConfig& sc,
                          RngStream& rng) {
  return collect(x, i, count, sc, rng, true);
}

Subgroup heart_gens(const Subgroup& x, const Element& i, std::size_t count, const SamplingConfig& sc,
                    RngStream& rng) {
  return collect(x, i, count, sc, rng, false);
}

}  // namespace bbroot
