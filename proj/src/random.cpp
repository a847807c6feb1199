#include "bbroot/random.hpp"

namespace bbroot {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::string_view label, std::uint64_t index) {
  return splitmix(splitmix(seed ^ fnv1a(label)) + index);
}

RngStream RngStream::child(std::string_view label, std::uint64_t index) const {
  return RngStream(mix_seed(seed_, label, index));
}

RngStream RngStream::split(std::string_view label) { return child(label, splits_++); }

std::uint64_t RngStream::uniform(std::uint64_t n) {
  return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(eng_);
}

std::size_t default_slots(std::size_t gens) { return std::max<std::size_t>(10, gens + 2); }

PrsState::PrsState(const Subgroup& h, std::size_t slots, std::size_t burn_in, std::uint64_t seed)
    : bb_(h.parent), rng_(seed) {
  if (!bb_) throw Error(Errc::EmptyGeneratingSet, "subgroup without parent");
  if (h.gens.empty()) throw Error(Errc::EmptyGeneratingSet, "product replacement needs generators");
  if (slots < std::max<std::size_t>(h.gens.size(), 2))
    throw Error(Errc::BadSpec, "too few product replacement slots");
  slots_.reserve(slots);
  for (std::size_t i = 0; i < slots; ++i) slots_.push_back(h.gens[i % h.gens.size()]);
  for (std::size_t i = 0; i < burn_in; ++i) move();
  steps_ = 0;
}

void PrsState::move() {
  const std::size_t s = slots_.size();
  std::size_t i = std::uniform_int_distribution<std::size_t>(0, s - 1)(rng_);
  std::size_t j = std::uniform_int_distribution<std::size_t>(0, s - 2)(rng_);
  if (j >= i) ++j;
  const std::uint64_t bits = rng_();
  const Element sj = (bits & 1) ? bb_->inv(slots_[j]) : slots_[j];
  slots_[i] = (bits & 2) ? bb_->mult(slots_[i], sj) : bb_->mult(sj, slots_[i]);
  last_ = i;
  ++steps_;
}

Element PrsState::next() {
  move();
  return slots_[last_];
}

PrsState prs_init(const Subgroup& h, std::size_t slots, std::size_t burn_in, std::uint64_t seed) {
  return PrsState(h, slots, burn_in, seed);
}

Element prs_next(PrsState& s) { return s.next(); }

PrsState make_sampler(const Subgroup& h, const SamplingConfig& cfg, RngStream& rng) {
  if (h.gens.empty()) return make_sampler(Subgroup{h.parent, {h.bb().identity()}}, cfg, rng);
  std::size_t slots = cfg.slots ? std::max(cfg.slots, std::max<std::size_t>(h.gens.size(), 2))
                                : default_slots(h.gens.size());
  return PrsState(h, slots, cfg.burn_in, rng.split("prs").seed());
}

}  // namespace bbroot
