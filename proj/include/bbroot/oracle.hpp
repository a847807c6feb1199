#pragma once

// White-box verification. Deliberately breaks the black-box discipline;
// only tests and the CLI verification path may include this header.

#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "bbroot/blackbox.hpp"
#include "bbroot/matgrp.hpp"

namespace bbroot::oracle {

struct Check {
  std::string name;
  bool pass = false;
  std::string measured;
};

struct VerificationReport {
  std::vector<Check> checks;
  bool overall() const;
  void add(std::string name, bool pass, std::string measured);
  std::string to_json() const;
};

struct WordsHash {
  std::size_t operator()(const std::vector<std::uint32_t>& w) const noexcept;
};
using ElementSet = std::unordered_set<std::vector<std::uint32_t>, WordsHash>;

std::vector<Matrix> to_matrices(const Subgroup& h);  // throws BackendNotWhiteBox

// Breadth-first closure; nullopt if more than `cap` elements.
std::optional<ElementSet> closure_set(const std::vector<Matrix>& gens, std::size_t cap);
std::optional<std::size_t> brute_closure(const std::vector<Matrix>& gens, std::size_t cap);
// Exact equality of generated groups, nullopt if either exceeds cap.
std::optional<bool> same_closure(const std::vector<Matrix>& a, const std::vector<Matrix>& b, std::size_t cap);

// Dimension of the matrix algebra spanned by the generated group.
std::size_t enveloping_dimension(const std::vector<Matrix>& gens);

VerificationReport verify_sl2(const Subgroup& k, const Natural& q, std::size_t samples, std::uint64_t seed = 1);
VerificationReport verify_long_root_whitebox(const Subgroup& k, const GroupSpec& spec);

// A matrix group of characteristic p is a p-group iff it is unipotent.
bool is_unipotent(const std::vector<Matrix>& gens);
VerificationReport verify_pcore_witness(const Element& w, const Subgroup& x, std::uint32_t p, std::uint64_t seed = 1);

}  // namespace bbroot::oracle
