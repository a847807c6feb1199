#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bbroot/error.hpp"
#include "bbroot/natural.hpp"

namespace bbroot {

// Elements of GF(p^k) are packed as sum c_i p^i, c_i the power-basis
// coefficients. Matrices store this packed form.
using Packed = std::uint32_t;

struct FieldData {
  std::uint32_t p = 0;
  unsigned k = 0;
  std::uint32_t q = 0;
  std::vector<std::uint32_t> modulus;  // constant term first, monic, length k+1
  std::vector<std::uint32_t> pow_p;    // p^0 .. p^k
  Packed primitive = 0;

  // Lookup caches built for small extension fields. They index the packed
  // power-basis values, nothing else about the representation changes.
  std::vector<std::uint16_t> add_tab;  // q*q entries
  std::vector<std::uint32_t> exp_tab;  // 2(q-1) entries
  std::vector<std::uint32_t> log_tab;  // q entries
  std::vector<Packed> neg_tab;
  std::vector<Packed> inv_tab;

  Packed mul_slow(Packed a, Packed b) const;
  Packed add_slow(Packed a, Packed b) const;
  Packed neg_slow(Packed a) const;
};

class Field {
 public:
  Field() = default;
  explicit Field(std::shared_ptr<const FieldData> d) : d_(std::move(d)) {}

  std::uint32_t p() const { return d_->p; }
  unsigned k() const { return d_->k; }
  std::uint32_t q() const { return d_->q; }
  Natural order() const { return Natural(d_->q); }
  const std::vector<std::uint32_t>& modulus() const { return d_->modulus; }
  bool valid() const { return d_ != nullptr; }
  const FieldData& data() const { return *d_; }

  bool operator==(const Field& o) const {
    return d_ == o.d_ || (d_ && o.d_ && d_->p == o.d_->p && d_->modulus == o.d_->modulus);
  }
  bool operator!=(const Field& o) const { return !(*this == o); }

  Packed zero() const { return 0; }
  Packed one() const { return 1; }

  Packed add(Packed a, Packed b) const {
    const FieldData& f = *d_;
    if (f.k == 1) {
      Packed s = a + b;
      return s >= f.p ? s - f.p : s;
    }
    if (!f.add_tab.empty()) return f.add_tab[std::size_t(a) * f.q + b];
    return f.add_slow(a, b);
  }
  Packed neg(Packed a) const {
    const FieldData& f = *d_;
    if (f.k == 1) return a == 0 ? 0 : f.p - a;
    if (!f.neg_tab.empty()) return f.neg_tab[a];
    return f.neg_slow(a);
  }
  Packed sub(Packed a, Packed b) const { return add(a, neg(b)); }
  Packed mul(Packed a, Packed b) const {
    const FieldData& f = *d_;
    if (f.k == 1) return Packed((std::uint64_t(a) * b) % f.p);
    if (a == 0 || b == 0) return 0;
    if (!f.log_tab.empty()) return f.exp_tab[f.log_tab[a] + f.log_tab[b]];
    return f.mul_slow(a, b);
  }
  Packed inv(Packed a) const;   // throws DivisionByZero
  Packed div(Packed a, Packed b) const { return mul(a, inv(b)); }
  Packed pow(Packed a, const Natural& e) const;
  Packed pow(Packed a, std::uint64_t e) const;
  Packed from_int(std::int64_t v) const;
  Packed frobenius(Packed a, unsigned times = 1) const;  // a^(p^times)

  Packed pack(const std::vector<std::uint32_t>& coeffs) const;
  std::vector<std::uint32_t> unpack(Packed a) const;

  // Generator of the multiplicative group (smallest packed value with order q-1).
  Packed primitive() const { return d_->primitive; }
  bool is_square(Packed a) const;
  std::optional<Packed> sqrt(Packed a) const;

  std::string describe() const;

 private:
  std::shared_ptr<const FieldData> d_;
};

Field build_field(std::uint64_t p, unsigned k,
                  const std::optional<std::vector<std::uint32_t>>& modulus = std::nullopt,
                  std::uint64_t seed = 0x6766u);

bool is_irreducible(const std::vector<std::uint32_t>& poly, std::uint32_t p);

class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(Field f, Packed v) : f_(std::move(f)), v_(v) {}
  static FieldElement from_coeffs(const Field& f, const std::vector<std::uint32_t>& coeffs);
  static FieldElement from_int(const Field& f, std::int64_t v) { return {f, f.from_int(v)}; }

  const Field& field() const { return f_; }
  Packed packed() const { return v_; }
  std::vector<std::uint32_t> coeffs() const { return f_.unpack(v_); }
  bool is_zero() const { return v_ == 0; }

  bool operator==(const FieldElement& o) const { return f_ == o.f_ && v_ == o.v_; }
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

 private:
  Field f_;
  Packed v_ = 0;
};

enum class FfOp { Add, Sub, Mul, Div, Neg, Inv };

// Binary form; for Neg and Inv only `a` is used.
FieldElement ff_arith(FfOp op, const FieldElement& a, const FieldElement& b);
FieldElement ff_pow(const FieldElement& a, const Natural& e);

FieldElement operator+(const FieldElement& a, const FieldElement& b);
FieldElement operator-(const FieldElement& a, const FieldElement& b);
FieldElement operator*(const FieldElement& a, const FieldElement& b);
FieldElement operator/(const FieldElement& a, const FieldElement& b);
FieldElement operator-(const FieldElement& a);
FieldElement inv(const FieldElement& a);

}  // namespace bbroot
