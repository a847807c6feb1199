#include "bbroot/subgrp.hpp"

#include <cmath>

namespace bbroot {

Subgroup prune(const Subgroup& h, std::size_t cap, const MonteCarlo& mc, RngStream& rng) {
  if (h.gens.size() <= cap) return h;
  PrsState prs = make_sampler(h, mc.sampling, rng);
  Subgroup r{h.parent, {}};
  const std::size_t keep = std::max<std::size_t>(cap / 2, 2);
  // Random elements of a product replacement walk generate the whole group
  // with high probability once a few more than the rank are taken.
  while (r.gens.size() < keep) {
    Element g = prs.next();
    if (!h.bb().is_identity(g)) r.gens.push_back(std::move(g));
  }
  return r;
}

Subgroup normal_closure(const Subgroup& h, const Subgroup& x, const MonteCarlo& mc, RngStream& rng) {
  Subgroup n = drop_identities(h);
  if (n.gens.empty() || x.gens.empty()) return n;
  const BlackBox& bb = h.bb();
  PrsState conj = make_sampler(x, mc.sampling, rng);
  RngStream pick = rng.split("subproduct");
  for (std::size_t r = 0; r < mc.rounds; ++r) {
    // Random subproduct of the current generators, conjugated by a random element.
    Element s = bb.identity();
    bool any = false;
    for (const auto& g : n.gens)
      if (pick.coin()) {
        s = any ? bb.mult(s, g) : g;
        any = true;
      }
    if (!any) s = n.gens[pick.uniform(n.gens.size())];
    if (bb.is_identity(s)) continue;
    Element c = bb.conj(s, conj.next());
    if (bb.equal(c, s)) continue;
    n.gens.push_back(std::move(c));
    if (n.gens.size() > mc.gen_cap) n = prune(n, mc.gen_cap, mc, rng);
  }
  return n;
}

Subgroup derived_subgroup(const Subgroup& h, const MonteCarlo& mc, RngStream& rng) {
  Subgroup base = drop_identities(h);
  Subgroup c{h.parent, {}};
  if (base.gens.empty()) return c;
  const BlackBox& bb = h.bb();
  // Commutators of generator pairs first: the gens of H' lie in their normal
  // closure, so an abelian H yields exactly the trivial group.
  for (std::size_t a = 0; a < base.gens.size(); ++a)
    for (std::size_t b = a + 1; b < base.gens.size() && c.gens.size() < mc.commutators; ++b) {
      Element k = bb.comm(base.gens[a], base.gens[b]);
      if (!bb.is_identity(k)) c.gens.push_back(std::move(k));
    }
  PrsState prs = make_sampler(base, mc.sampling, rng);
  for (std::size_t t = 0; t < mc.commutators; ++t) {
    Element a = prs.next();
    Element b = prs.next();
    Element k = bb.comm(a, b);
    if (!bb.is_identity(k)) c.gens.push_back(std::move(k));
  }
  return normal_closure(c, base, mc, rng);
}

bool is_probably_trivial(const Subgroup& h) {
  for (const auto& g : h.gens)
    if (!h.bb().is_identity(g)) return false;
  return true;
}

bool is_p_group(const Subgroup& h, std::uint32_t p, const Exponent& e, const MonteCarlo& mc, RngStream& rng) {
  Subgroup s = drop_identities(h);
  if (s.gens.empty()) return true;
  const BlackBox& bb = h.bb();
  const Natural pp = primes_part(e.value, p);
  for (const auto& g : s.gens)
    if (!order_divides(bb, g, pp)) return false;
  PrsState prs = make_sampler(s, mc.sampling, rng);
  for (std::size_t t = 0; t < mc.samples; ++t)
    if (!order_divides(bb, prs.next(), pp)) return false;
  return true;
}

bool is_probably_solvable(const Subgroup& h, std::size_t depth, const MonteCarlo& mc, RngStream& rng) {
  Subgroup cur = drop_identities(h);
  for (std::size_t d = 0; d < depth && !is_probably_trivial(cur); ++d)
    cur = derived_subgroup(cur, mc, rng);
  return is_probably_trivial(cur);
}

std::size_t default_solvability_depth(const BlackBox& bb) {
  double n = double(bb.backend().encoding_bits());
  return 2 * std::size_t(std::ceil(std::log2(std::max(n, 2.0))));
}

}  // namespace bbroot
