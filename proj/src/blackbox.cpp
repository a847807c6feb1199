#include "bbroot/blackbox.hpp"

#include <cmath>

namespace bbroot {

Element MatrixBackend::multiply(const Element& a, const Element& b) const {
  std::vector<std::uint32_t> c(n_ * n_);
  mat_mul_raw(f_, n_, a.words().data(), b.words().data(), c.data());
  return Element(std::move(c));
}

Element MatrixBackend::invert(const Element& a) const {
  std::vector<std::uint32_t> c(n_ * n_);
  if (!mat_inv_raw(f_, n_, a.words().data(), c.data()))
    throw Error(Errc::DimensionMismatch, "singular matrix in black box");
  return Element(std::move(c));
}

bool MatrixBackend::is_identity(const Element& a) const {
  const auto& w = a.words();
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (w[i * n_ + j] != (i == j ? 1u : 0u)) return false;
  return true;
}

Element MatrixBackend::identity() const { return encode(Matrix::identity(f_, n_)); }

std::size_t MatrixBackend::encoding_bits() const {
  std::size_t bits = std::size_t(std::ceil(std::log2(double(f_.q()))));
  return n_ * n_ * std::max<std::size_t>(bits, 1);
}

Element MatrixBackend::encode(const Matrix& m) const {
  if (m.n() != n_) throw Error(Errc::DimensionMismatch, "matrix dimension does not match backend");
  if (m.field() != f_) throw Error(Errc::FieldMismatch, "matrix field does not match backend");
  return Element(m.entries());
}

Matrix MatrixBackend::decode(const Element& e) const { return Matrix(f_, n_, e.words()); }

std::pair<unsigned, Natural> exponent_split(const Natural& e) {
  if (e < 1) throw Error(Errc::BadSpec, "exponent must be positive");
  Natural m = e;
  unsigned a = 0;
  while ((m & 1) == 0) {
    m >>= 1;
    ++a;
  }
  return {a, m};
}

Exponent Exponent::of(const Natural& e) {
  auto [a, m] = exponent_split(e);
  return Exponent{e, a, m};
}

BlackBox::BlackBox(std::shared_ptr<const Backend> backend, std::vector<Element> gens, Exponent exponent,
                   std::uint32_t p, std::optional<Natural> q_hint, std::optional<GroupSpec> hint)
    : backend_(std::move(backend)),
      gens_(std::move(gens)),
      exponent_(std::move(exponent)),
      p_(p),
      q_hint_(std::move(q_hint)),
      hint_(std::move(hint)) {
  if (gens_.empty()) throw Error(Errc::EmptyGeneratingSet, "black box needs generators");
}

Element BlackBox::comm(const Element& a, const Element& b) const {
  return mult(mult(inv(a), inv(b)), mult(a, b));
}

Element bb_pow(const BlackBox& bb, const Element& x, const Natural& e) {
  if (e == 0) return bb.identity();
  const unsigned bits = unsigned(msb(e)) + 1;
  Element r = x;
  for (int i = int(bits) - 2; i >= 0; --i) {
    r = bb.mult(r, r);
    if (bit_test(e, unsigned(i))) r = bb.mult(r, x);
  }
  return r;
}

Element bb_pow(const BlackBox& bb, const Element& x, std::uint64_t e) { return bb_pow(bb, x, Natural(e)); }

bool order_divides(const BlackBox& bb, const Element& x, const Natural& d) {
  return bb.is_identity(bb_pow(bb, x, d));
}

Subgroup drop_identities(const Subgroup& h) {
  Subgroup r{h.parent, {}};
  for (const auto& g : h.gens)
    if (!h.bb().is_identity(g)) r.gens.push_back(g);
  return r;
}

bool centralizes(const Subgroup& h, const Element& x) {
  for (const auto& g : h.gens)
    if (!h.bb().commute(g, x)) return false;
  return true;
}

Natural default_exponent(const GroupSpec& spec) {
  Field f = module_field(spec);
  return order_gl(unsigned(matrix_dim(spec)), f.order());
}

BlackBoxPtr bb_from_matrices(const std::vector<Matrix>& gens, const Natural& exponent, std::uint32_t p,
                             std::optional<Natural> q_hint, std::optional<GroupSpec> hint) {
  if (gens.empty()) throw Error(Errc::EmptyGeneratingSet, "no generators");
  auto be = std::make_shared<MatrixBackend>(gens[0].field(), gens[0].n());
  std::vector<Element> els;
  for (const auto& g : gens) {
    if (g.det() == 0) throw Error(Errc::BadSpec, "generator is singular");
    els.push_back(be->encode(g));
  }
  return std::make_shared<BlackBox>(be, std::move(els), Exponent::of(exponent), p, std::move(q_hint),
                                    std::move(hint));
}

BlackBoxPtr bb_from_spec(const GroupSpec& spec) {
  auto gens = standard_generators(spec);
  Natural e = spec.exponent ? *spec.exponent : default_exponent(spec);
  return bb_from_matrices(gens, e, spec.p, spec.q(), spec);
}

const MatrixBackend* matrix_backend(const BlackBox& bb) {
  return dynamic_cast<const MatrixBackend*>(&bb.backend());
}

}  // namespace bbroot
