#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "bbroot/blackbox.hpp"

namespace bbroot {

// Seeded stream. Children are derived from the seed and a label only, so the
// amount drawn from one stream never perturbs a sibling.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed = 0) : seed_(seed), eng_(seed) {}
  RngStream child(std::string_view label, std::uint64_t index = 0) const;
  // Fresh child with an internal counter, for loops.
  RngStream split(std::string_view label);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t next() { return eng_(); }
  std::uint64_t uniform(std::uint64_t n);  // [0, n)
  bool coin() { return (eng_() >> 63) != 0; }
  std::mt19937_64& engine() { return eng_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 eng_;
  std::uint64_t splits_ = 0;
};

std::uint64_t mix_seed(std::uint64_t seed, std::string_view label, std::uint64_t index);

struct SamplingConfig {
  std::size_t slots = 0;  // 0: max(10, |gens| + 2)
  std::size_t burn_in = 100;
  unsigned workers = 1;   // parallel samplers, each with a private state
};

class PrsState {
 public:
  PrsState(const Subgroup& h, std::size_t slots, std::size_t burn_in, std::uint64_t seed);
  Element next();
  std::uint64_t steps_taken() const { return steps_; }
  const std::vector<Element>& slots() const { return slots_; }
  const BlackBox& bb() const { return *bb_; }

 private:
  void move();
  BlackBoxPtr bb_;
  std::vector<Element> slots_;
  std::mt19937_64 rng_;
  std::uint64_t steps_ = 0;
  std::size_t last_ = 0;
};

std::size_t default_slots(std::size_t gens);
PrsState prs_init(const Subgroup& h, std::size_t slots, std::size_t burn_in, std::uint64_t seed);
Element prs_next(PrsState& s);

// Random source for a subgroup honoring the sampling config; handles empty gens.
PrsState make_sampler(const Subgroup& h, const SamplingConfig& cfg, RngStream& rng);

}  // namespace bbroot
