#pragma once

#include "bbroot/blackbox.hpp"
#include "bbroot/random.hpp"

namespace bbroot {

struct MonteCarlo {
  SamplingConfig sampling;
  std::size_t rounds = 20;       // normal closure augmentation sweeps
  std::size_t commutators = 12;  // random commutators seeding a derived subgroup
  std::size_t samples = 64;      // p-group and triviality sampling
  std::size_t gen_cap = 60;      // generator lists are pruned beyond this
};

Subgroup normal_closure(const Subgroup& h, const Subgroup& x, const MonteCarlo& mc, RngStream& rng);
Subgroup derived_subgroup(const Subgroup& h, const MonteCarlo& mc, RngStream& rng);
// Equivalent to testing random products: a product of identities is the identity.
bool is_probably_trivial(const Subgroup& h);
bool is_p_group(const Subgroup& h, std::uint32_t p, const Exponent& e, const MonteCarlo& mc, RngStream& rng);
bool is_probably_solvable(const Subgroup& h, std::size_t depth, const MonteCarlo& mc, RngStream& rng);
std::size_t default_solvability_depth(const BlackBox& bb);

// Replace an overlong generator list by random elements of the same subgroup.
Subgroup prune(const Subgroup& h, std::size_t cap, const MonteCarlo& mc, RngStream& rng);

}  // namespace bbroot
