#pragma once

#include <cstddef>
#include <string>

#include <nlohmann/json.hpp>

#include "bbroot/blackbox.hpp"
#include "bbroot/random.hpp"

namespace bbroot::stats {

struct Estimate {
  std::string name;
  std::size_t hits = 0;
  std::size_t trials = 0;
  double floor = 0;  // claimed lower bound on the proportion

  double rate() const { return trials ? double(hits) / double(trials) : 0.0; }
  double sigma() const;                     // binomial sd of the rate at the claimed floor
  bool meets() const;                       // rate >= floor - 3 sigma
  std::pair<double, double> wilson() const;  // 95% interval
  nlohmann::json to_json() const;
};

// Fraction of product-replacement draws of even order.
Estimate even_order(const Subgroup& g, std::size_t trials, RngStream& rng);

// Fraction of g with i i^g of odd order.
Estimate odd_products(const Subgroup& g, const Element& i, std::size_t trials, RngStream& rng);

// White-box: fraction of g with <K, K^g> acting as a rank-two group of the form family on a
// nondegenerate space [K,V] + [K^g,V] of twice the dimension.
Estimate pair_generation(const Subgroup& g, const Subgroup& k, const GroupSpec& spec, std::size_t trials,
                         RngStream& rng);

// White-box, for a direct product of two blocks of size `block`: fraction of random elements whose
// order-four power is a pseudo-involution central in one factor.
Estimate pseudo_split(const Subgroup& g, std::size_t block, std::size_t trials, RngStream& rng);

struct HeartCensus {
  std::size_t zeta0 = 0;
  std::size_t central = 0;   // zeta0 values in Z(G)
  std::size_t nontrivial = 0;  // zeta0 values different from 1
  std::size_t draws = 0;
};

// Collect `target` zeta0 values for the involution i.
HeartCensus heart_census(const Subgroup& g, const Element& i, std::size_t target, RngStream& rng);

}  // namespace bbroot::stats
