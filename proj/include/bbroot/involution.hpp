#pragma once

#include <optional>

#include "bbroot/blackbox.hpp"
#include "bbroot/random.hpp"

namespace bbroot {

// Last two nonidentity terms of x^m, x^{2m}, x^{4m}, ...
struct TwoPowerChain {
  std::optional<Element> involution;
  std::optional<Element> order_four;  // the term before the involution, if any
};

TwoPowerChain two_power_chain(const BlackBox& bb, const Element& x, const Exponent& e);

std::optional<Element> make_involution(const BlackBox& bb, const Element& x, const Exponent& e);

// j of order 4 with j^2 central in X, searched among `trials` random elements.
std::optional<Element> make_pseudo_involution(const Subgroup& x, const Exponent& e, std::size_t trials,
                                              const SamplingConfig& sc, RngStream& rng);

enum class ZetaKind { Zeta0, Zeta1, Trivial };

struct ZetaResult {
  ZetaKind kind;
  Element value;
};

// z = i i^g. Odd order: Zeta1 with z^{(m+1)/2} g^-1. Even order: Zeta0 with i(z).
ZetaResult zeta(const BlackBox& bb, const Element& i, const Element& g, const Exponent& e);

// Subgroup generated by the nontrivial zeta outputs of `count` random elements.
Subgroup centralizer_gens(const Subgroup& x, const Element& i, std::size_t count, const SamplingConfig& sc,
                          RngStream& rng);
// Only the Zeta0 outputs.
Subgroup heart_gens(const Subgroup& x, const Element& i, std::size_t count, const SamplingConfig& sc,
                    RngStream& rng);

}  // namespace bbroot
