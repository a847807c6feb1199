#include "bbroot/natural.hpp"

#include "bbroot/error.hpp"

namespace bbroot {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NotPrime: return "NotPrime";
    case Errc::EvenCharacteristic: return "EvenCharacteristic";
    case Errc::ReducibleModulus: return "ReducibleModulus";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::UnsupportedFamily: return "UnsupportedFamily";
    case Errc::BadSpec: return "BadSpec";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::EmptyGeneratingSet: return "EmptyGeneratingSet";
    case Errc::NotAnInvolution: return "NotAnInvolution";
    case Errc::Stalled: return "Stalled";
    case Errc::WrongGroupPromise: return "WrongGroupPromise";
    case Errc::NoCentralInvolution: return "NoCentralInvolution";
    case Errc::BackendNotWhiteBox: return "BackendNotWhiteBox";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

Natural nat_pow(const Natural& base, unsigned e) {
  Natural r = 1, b = base;
  while (e) {
    if (e & 1u) r *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return r;
}

Natural parse_natural(const std::string& s) {
  if (s.empty()) throw Error(Errc::ParseError, "empty natural");
  for (char c : s)
    if (c < '0' || c > '9') throw Error(Errc::ParseError, "not a decimal natural: " + s);
  return Natural(s);
}

std::string to_string(const Natural& n) { return n.str(); }

unsigned valuation(const Natural& n, std::uint64_t r) {
  if (n == 0 || r < 2) return 0;
  unsigned a = 0;
  Natural m = n;
  while (m % r == 0) {
    m /= r;
    ++a;
  }
  return a;
}

Natural strip_primes_of(Natural n, std::uint64_t r) {
  for (auto f : prime_factors(r))
    while (n != 0 && n % f == 0) n /= f;
  return n;
}

Natural primes_part(const Natural& n, std::uint64_t r) {
  if (n == 0) return 0;
  return n / strip_primes_of(n, r);
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace bbroot
