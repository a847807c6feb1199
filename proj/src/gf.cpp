#include "bbroot/gf.hpp"

#include <random>
#include <sstream>

namespace bbroot {

namespace {

using Poly = std::vector<std::uint64_t>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  std::int64_t t = 0, nt = 1, r = std::int64_t(p), nr = std::int64_t(a % p);
  while (nr != 0) {
    std::int64_t qq = r / nr;
    std::int64_t tmp = t - qq * nt;
    t = nt;
    nt = tmp;
    tmp = r - qq * nr;
    r = nr;
    nr = tmp;
  }
  if (t < 0) t += std::int64_t(p);
  return std::uint64_t(t);
}

// a mod f, f monic
Poly poly_mod(Poly a, const Poly& f, std::uint64_t p) {
  trim(a);
  const std::size_t df = f.size() - 1;
  while (a.size() > df) {
    std::uint64_t c = a.back();
    std::size_t shift = a.size() - 1 - df;
    if (c != 0)
      for (std::size_t i = 0; i <= df; ++i)
        a[shift + i] = (a[shift + i] + (p - c) * f[i]) % p;
    a.pop_back();
    trim(a);
  }
  return a;
}

Poly poly_mul(const Poly& a, const Poly& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  trim(r);
  return r;
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& f, std::uint64_t p) {
  Poly r{1};
  base = poly_mod(base, f, p);
  while (e) {
    if (e & 1u) r = poly_mod(poly_mul(r, base, p), f, p);
    e >>= 1;
    if (e) base = poly_mod(poly_mul(base, base, p), f, p);
  }
  return r;
}

Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    // make b monic so poly_mod applies
    std::uint64_t li = inv_mod(b.back(), p);
    for (auto& c : b) c = c * li % p;
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// x^(p^d) mod f
Poly x_frob(unsigned d, const Poly& f, std::uint64_t p) {
  Poly h{0, 1};
  h = poly_mod(h, f, p);
  for (unsigned i = 0; i < d; ++i) h = poly_powmod(h, p, f, p);
  return h;
}

Poly sub(Poly a, const Poly& b, std::uint64_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

std::vector<std::uint32_t> digits(const FieldData& f, Packed a) {
  std::vector<std::uint32_t> c(f.k, 0);
  for (unsigned i = 0; i < f.k; ++i) {
    c[i] = a % f.p;
    a /= f.p;
  }
  return c;
}

Packed undigits(const FieldData& f, const std::vector<std::uint32_t>& c) {
  Packed v = 0;
  for (unsigned i = f.k; i-- > 0;) v = v * f.p + (i < c.size() ? c[i] : 0);
  return v;
}

Packed pow_slow(const FieldData& f, Packed a, std::uint64_t e) {
  Packed r = 1;
  while (e) {
    if (e & 1u) r = f.mul_slow(r, a);
    e >>= 1;
    if (e) a = f.mul_slow(a, a);
  }
  return r;
}

}  // namespace

bool is_irreducible(const std::vector<std::uint32_t>& poly, std::uint32_t p) {
  Poly f(poly.begin(), poly.end());
  trim(f);
  if (f.size() < 2) return false;
  const unsigned k = unsigned(f.size() - 1);
  std::uint64_t li = inv_mod(f.back(), p);
  for (auto& c : f) c = c * li % p;
  if (k == 1) return true;
  Poly x{0, 1};
  if (sub(x_frob(k, f, p), poly_mod(x, f, p), p).size() != 0) return false;
  for (auto r : prime_factors(k)) {
    Poly g = poly_gcd(f, sub(x_frob(k / unsigned(r), f, p), poly_mod(x, f, p), p), p);
    if (g.size() > 1) return false;
  }
  return true;
}

Packed FieldData::mul_slow(Packed a, Packed b) const {
  if (k == 1) return Packed((std::uint64_t(a) * b) % p);
  auto ca = digits(*this, a), cb = digits(*this, b);
  Poly pa(ca.begin(), ca.end()), pb(cb.begin(), cb.end());
  Poly f(modulus.begin(), modulus.end());
  Poly r = poly_mod(poly_mul(pa, pb, p), f, p);
  std::vector<std::uint32_t> c(k, 0);
  for (std::size_t i = 0; i < r.size(); ++i) c[i] = std::uint32_t(r[i]);
  return undigits(*this, c);
}

Packed FieldData::add_slow(Packed a, Packed b) const {
  Packed r = 0;
  for (unsigned i = 0; i < k; ++i) {
    std::uint32_t s = a % p + b % p;
    if (s >= p) s -= p;
    r += s * pow_p[i];
    a /= p;
    b /= p;
  }
  return r;
}

Packed FieldData::neg_slow(Packed a) const {
  Packed r = 0;
  for (unsigned i = 0; i < k; ++i) {
    std::uint32_t c = a % p;
    r += (c == 0 ? 0 : p - c) * pow_p[i];
    a /= p;
  }
  return r;
}

Packed Field::inv(Packed a) const {
  if (a == 0) throw Error(Errc::DivisionByZero, "inverse of zero in " + describe());
  const FieldData& f = *d_;
  if (f.k == 1) return Packed(inv_mod(a, f.p));
  if (!f.inv_tab.empty()) return f.inv_tab[a];
  return pow(a, std::uint64_t(f.q) - 2);
}

Packed Field::pow(Packed a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  e %= (d_->q - 1);
  Packed r = 1;
  while (e) {
    if (e & 1u) r = mul(r, a);
    e >>= 1;
    if (e) a = mul(a, a);
  }
  return r;
}

Packed Field::pow(Packed a, const Natural& e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  Natural r = e % (d_->q - 1);
  return pow(a, r.convert_to<std::uint64_t>());
}

Packed Field::from_int(std::int64_t v) const {
  std::int64_t m = v % std::int64_t(d_->p);
  if (m < 0) m += d_->p;
  return Packed(m);
}

Packed Field::frobenius(Packed a, unsigned times) const {
  for (unsigned i = 0; i < times; ++i) a = pow(a, std::uint64_t(d_->p));
  return a;
}

Packed Field::pack(const std::vector<std::uint32_t>& coeffs) const {
  if (coeffs.size() > d_->k) throw Error(Errc::BadSpec, "too many coefficients for " + describe());
  for (auto c : coeffs)
    if (c >= d_->p) throw Error(Errc::BadSpec, "coefficient out of range for " + describe());
  return undigits(*d_, coeffs);
}

std::vector<std::uint32_t> Field::unpack(Packed a) const { return digits(*d_, a); }

bool Field::is_square(Packed a) const {
  if (a == 0) return true;
  return pow(a, std::uint64_t(d_->q - 1) / 2) == 1;
}

std::optional<Packed> Field::sqrt(Packed a) const {
  if (a == 0) return Packed(0);
  if (!is_square(a)) return std::nullopt;
  // Tonelli-Shanks; the primitive element is a non-square.
  std::uint64_t t = d_->q - 1;
  unsigned s = 0;
  while (t % 2 == 0) {
    t /= 2;
    ++s;
  }
  Packed z = pow(d_->primitive, t);
  Packed x = pow(a, (t + 1) / 2);
  Packed b = pow(a, t);
  unsigned m = s;
  while (b != 1) {
    unsigned i = 0;
    Packed bb = b;
    while (bb != 1) {
      bb = mul(bb, bb);
      ++i;
    }
    Packed c = z;
    for (unsigned j = 0; j + 1 < m - i; ++j) c = mul(c, c);
    x = mul(x, c);
    z = mul(c, c);
    b = mul(b, z);
    m = i;
  }
  return x;
}

std::string Field::describe() const {
  std::ostringstream os;
  if (!d_) return "GF(?)";
  os << "GF(" << d_->p;
  if (d_->k > 1) os << "^" << d_->k;
  os << ")";
  return os.str();
}

Field build_field(std::uint64_t p, unsigned k, const std::optional<std::vector<std::uint32_t>>& modulus,
                  std::uint64_t seed) {
  if (!is_prime(p)) throw Error(Errc::NotPrime, std::to_string(p) + " is not prime");
  if (p == 2) throw Error(Errc::EvenCharacteristic, "characteristic 2 is not supported");
  if (k < 1) throw Error(Errc::BadSpec, "extension degree must be positive");
  if (p >= (1ull << 31)) throw Error(Errc::BadSpec, "characteristic must fit in 31 bits");
  Natural qq = nat_pow(Natural(p), k);
  if (qq >= (Natural(1) << 31)) throw Error(Errc::BadSpec, "field order must stay below 2^31");

  auto d = std::make_shared<FieldData>();
  d->p = std::uint32_t(p);
  d->k = k;
  d->q = qq.convert_to<std::uint32_t>();
  d->pow_p.resize(k + 1);
  d->pow_p[0] = 1;
  for (unsigned i = 1; i <= k; ++i) d->pow_p[i] = d->pow_p[i - 1] * d->p;

  if (k == 1) {
    d->modulus = {0, 1};
  } else if (modulus) {
    const auto& m = *modulus;
    if (m.size() != k + 1 || m.back() != 1)
      throw Error(Errc::BadSpec, "modulus must be monic of degree " + std::to_string(k));
    for (auto c : m)
      if (c >= p) throw Error(Errc::BadSpec, "modulus coefficient out of range");
    if (!is_irreducible(m, d->p)) throw Error(Errc::ReducibleModulus, "modulus is reducible");
    d->modulus = m;
  } else {
    std::mt19937_64 rng(seed ^ (p * 0x9e3779b97f4a7c15ull) ^ k);
    std::uniform_int_distribution<std::uint32_t> coef(0, d->p - 1);
    std::vector<std::uint32_t> m(k + 1);
    do {
      for (unsigned i = 0; i < k; ++i) m[i] = coef(rng);
      m[k] = 1;
    } while (!is_irreducible(m, d->p));
    d->modulus = m;
  }

  // primitive element
  const std::uint64_t qm1 = d->q - 1;
  auto rs = prime_factors(qm1);
  for (Packed g = 1; g < d->q; ++g) {
    bool ok = true;
    for (auto r : rs)
      if (pow_slow(*d, g, qm1 / r) == 1) {
        ok = false;
        break;
      }
    if (ok) {
      d->primitive = g;
      break;
    }
  }

  if (k > 1 && d->q <= (1u << 22)) {
    d->exp_tab.resize(2 * qm1);
    d->log_tab.assign(d->q, 0);
    Packed x = 1;
    for (std::uint64_t i = 0; i < qm1; ++i) {
      d->exp_tab[i] = x;
      d->exp_tab[i + qm1] = x;
      d->log_tab[x] = std::uint32_t(i);
      x = d->mul_slow(x, d->primitive);
    }
    d->inv_tab.assign(d->q, 0);
    d->neg_tab.assign(d->q, 0);
    for (Packed a = 0; a < d->q; ++a) {
      d->neg_tab[a] = d->neg_slow(a);
      if (a) d->inv_tab[a] = d->exp_tab[(qm1 - d->log_tab[a]) % qm1];
    }
  }
  if (k > 1 && d->q <= 1024) {
    d->add_tab.resize(std::size_t(d->q) * d->q);
    for (Packed a = 0; a < d->q; ++a)
      for (Packed b = 0; b < d->q; ++b) d->add_tab[std::size_t(a) * d->q + b] = std::uint16_t(d->add_slow(a, b));
  }
  return Field(std::move(d));
}

FieldElement FieldElement::from_coeffs(const Field& f, const std::vector<std::uint32_t>& coeffs) {
  return {f, f.pack(coeffs)};
}

FieldElement ff_arith(FfOp op, const FieldElement& a, const FieldElement& b) {
  const Field& f = a.field();
  bool unary = op == FfOp::Neg || op == FfOp::Inv;
  if (!unary && f != b.field()) throw Error(Errc::FieldMismatch, f.describe() + " vs " + b.field().describe());
  switch (op) {
    case FfOp::Add: return {f, f.add(a.packed(), b.packed())};
    case FfOp::Sub: return {f, f.sub(a.packed(), b.packed())};
    case FfOp::Mul: return {f, f.mul(a.packed(), b.packed())};
    case FfOp::Div: return {f, f.div(a.packed(), b.packed())};
    case FfOp::Neg: return {f, f.neg(a.packed())};
    case FfOp::Inv: return {f, f.inv(a.packed())};
  }
  return a;
}

FieldElement ff_pow(const FieldElement& a, const Natural& e) { return {a.field(), a.field().pow(a.packed(), e)}; }

FieldElement operator+(const FieldElement& a, const FieldElement& b) { return ff_arith(FfOp::Add, a, b); }
FieldElement operator-(const FieldElement& a, const FieldElement& b) { return ff_arith(FfOp::Sub, a, b); }
FieldElement operator*(const FieldElement& a, const FieldElement& b) { return ff_arith(FfOp::Mul, a, b); }
FieldElement operator/(const FieldElement& a, const FieldElement& b) { return ff_arith(FfOp::Div, a, b); }
FieldElement operator-(const FieldElement& a) { return ff_arith(FfOp::Neg, a, a); }
FieldElement inv(const FieldElement& a) { return ff_arith(FfOp::Inv, a, a); }

}  // namespace bbroot
