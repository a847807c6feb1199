#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bbroot/matgrp.hpp"
#include "bbroot/natural.hpp"

namespace bbroot {

// Opaque element encoding. Algorithm code never inspects the words.
class Element {
 public:
  Element() = default;
  explicit Element(std::vector<std::uint32_t> w) : w_(std::move(w)) {}
  const std::vector<std::uint32_t>& words() const { return w_; }

 private:
  std::vector<std::uint32_t> w_;
};

class Backend {
 public:
  virtual ~Backend() = default;
  virtual Element multiply(const Element& a, const Element& b) const = 0;
  virtual Element invert(const Element& a) const = 0;
  virtual bool is_identity(const Element& a) const = 0;
  virtual Element identity() const = 0;
  // Encoding length proxy N in bits.
  virtual std::size_t encoding_bits() const = 0;
  virtual std::string name() const = 0;
};

class MatrixBackend final : public Backend {
 public:
  MatrixBackend(Field f, std::size_t n) : f_(std::move(f)), n_(n) {}
  Element multiply(const Element& a, const Element& b) const override;
  Element invert(const Element& a) const override;
  bool is_identity(const Element& a) const override;
  Element identity() const override;
  std::size_t encoding_bits() const override;
  std::string name() const override { return "matrix"; }

  const Field& field() const { return f_; }
  std::size_t dim() const { return n_; }
  Element encode(const Matrix& m) const;  // throws DimensionMismatch / FieldMismatch
  Matrix decode(const Element& e) const;

 private:
  Field f_;
  std::size_t n_;
};

struct Exponent {
  Natural value;
  unsigned two_adic = 0;  // a with value = 2^a * odd
  Natural odd;            // m

  static Exponent of(const Natural& e);
};

// E = 2^a * m with m odd; E >= 1.
std::pair<unsigned, Natural> exponent_split(const Natural& e);

class BlackBox {
 public:
  BlackBox(std::shared_ptr<const Backend> backend, std::vector<Element> gens, Exponent exponent,
           std::uint32_t p, std::optional<Natural> q_hint = std::nullopt,
           std::optional<GroupSpec> hint = std::nullopt);

  Element mult(const Element& a, const Element& b) const {
    ++mults_;
    return backend_->multiply(a, b);
  }
  Element inv(const Element& a) const {
    ++mults_;
    return backend_->invert(a);
  }
  bool is_identity(const Element& a) const { return backend_->is_identity(a); }
  Element identity() const { return backend_->identity(); }

  bool equal(const Element& a, const Element& b) const { return is_identity(mult(a, inv(b))); }
  bool commute(const Element& a, const Element& b) const { return equal(mult(a, b), mult(b, a)); }
  Element conj(const Element& a, const Element& g) const { return mult(inv(g), mult(a, g)); }
  Element comm(const Element& a, const Element& b) const;  // a^-1 b^-1 a b

  const std::vector<Element>& gens() const { return gens_; }
  const Exponent& exponent() const { return exponent_; }
  std::uint32_t p() const { return p_; }
  const std::optional<Natural>& q_hint() const { return q_hint_; }
  // Optional metadata channel; never required for correctness.
  const std::optional<GroupSpec>& hint() const { return hint_; }
  const Backend& backend() const { return *backend_; }
  std::shared_ptr<const Backend> backend_ptr() const { return backend_; }

  std::uint64_t mult_count() const { return mults_.load(std::memory_order_relaxed); }

 private:
  std::shared_ptr<const Backend> backend_;
  std::vector<Element> gens_;
  Exponent exponent_;
  std::uint32_t p_;
  std::optional<Natural> q_hint_;
  std::optional<GroupSpec> hint_;
  mutable std::atomic<std::uint64_t> mults_{0};
};

using BlackBoxPtr = std::shared_ptr<const BlackBox>;

// Generator list inside a parent black box; empty gens = trivial subgroup.
struct Subgroup {
  BlackBoxPtr parent;
  std::vector<Element> gens;

  static Subgroup whole(const BlackBoxPtr& bb) { return {bb, bb->gens()}; }
  const BlackBox& bb() const { return *parent; }
  bool empty() const { return gens.empty(); }
};

Element bb_pow(const BlackBox& bb, const Element& x, const Natural& e);
Element bb_pow(const BlackBox& bb, const Element& x, std::uint64_t e);
bool order_divides(const BlackBox& bb, const Element& x, const Natural& d);
// Remove identity generators.
Subgroup drop_identities(const Subgroup& h);
// True iff x commutes with every generator of h.
bool centralizes(const Subgroup& h, const Element& x);

// Default E = |GL_d(module field)|; this also covers the p-core constructions.
Natural default_exponent(const GroupSpec& spec);
BlackBoxPtr bb_from_spec(const GroupSpec& spec);
BlackBoxPtr bb_from_matrices(const std::vector<Matrix>& gens, const Natural& exponent, std::uint32_t p,
                             std::optional<Natural> q_hint = std::nullopt,
                             std::optional<GroupSpec> hint = std::nullopt);

// Matrix backend of a black box, or nullptr.
const MatrixBackend* matrix_backend(const BlackBox& bb);

}  // namespace bbroot
