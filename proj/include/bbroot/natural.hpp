#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace bbroot {

// Orders and exponents overflow machine words quickly (|GL_8(5)| has ~150 bits).
using Natural = boost::multiprecision::cpp_int;

Natural nat_pow(const Natural& base, unsigned e);
Natural parse_natural(const std::string& s);
std::string to_string(const Natural& n);

// Largest a with r^a | n, for n > 0.
unsigned valuation(const Natural& n, std::uint64_t r);

// n with every prime factor of `r` removed.
Natural strip_primes_of(Natural n, std::uint64_t r);

// Part of n composed of primes dividing r.
Natural primes_part(const Natural& n, std::uint64_t r);

std::vector<std::uint64_t> prime_factors(std::uint64_t n);
bool is_prime(std::uint64_t n);

}  // namespace bbroot
