#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "bbroot/gf.hpp"
#include "bbroot/natural.hpp"

namespace bbroot {

using Vec = std::vector<Packed>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(Field f, std::size_t n) : f_(std::move(f)), n_(n), a_(n * n, 0) {}
  Matrix(Field f, std::size_t n, std::vector<Packed> entries);
  static Matrix identity(const Field& f, std::size_t n);
  static Matrix from_ints(const Field& f, const std::vector<std::vector<std::int64_t>>& rows);

  std::size_t n() const { return n_; }
  const Field& field() const { return f_; }
  Packed at(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  Packed& at(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  FieldElement entry(std::size_t i, std::size_t j) const { return {f_, at(i, j)}; }
  const std::vector<Packed>& entries() const { return a_; }

  Matrix operator*(const Matrix& o) const;
  Vec apply(const Vec& v) const;
  bool operator==(const Matrix& o) const { return n_ == o.n_ && f_ == o.f_ && a_ == o.a_; }
  bool operator!=(const Matrix& o) const { return !(*this == o); }
  bool is_identity() const;

  Matrix transpose() const;
  Matrix frobenius(unsigned times) const;
  std::optional<Matrix> inverse() const;
  Packed det() const;
  Matrix pow(const Natural& e) const;

 private:
  Field f_;
  std::size_t n_ = 0;
  std::vector<Packed> a_;
};

// C = A*B for n x n row-major packed arrays. C must not alias A or B.
void mat_mul_raw(const Field& f, std::size_t n, const Packed* a, const Packed* b, Packed* c);
// Gauss-Jordan inverse; false if singular.
bool mat_inv_raw(const Field& f, std::size_t n, const Packed* a, Packed* out);

Matrix block_diag(const Matrix& a, const Matrix& b);

// Linear algebra on column vectors.
std::vector<Vec> row_basis(const Field& f, std::vector<Vec> rows);
std::vector<Vec> nullspace(const Matrix& m);
std::size_t rank_of(const Field& f, const std::vector<Vec>& rows);

enum class Family { SL, SU, Sp, OmegaPlus, OmegaMinus, OmegaOdd, AffineSL, BlockSL, GL };
enum class FormKind { None, Alternating, Symmetric, Hermitian };

std::string family_name(Family f);
std::optional<Family> parse_family(const std::string& s);
FormKind form_kind(Family f);

struct GroupSpec {
  Family family = Family::SL;
  unsigned n = 2;
  std::uint32_t p = 5;
  unsigned k = 1;
  std::optional<std::vector<std::uint32_t>> modulus;  // for the module field
  std::optional<Matrix> form;
  std::optional<std::uint64_t> seed;
  std::optional<Natural> exponent;

  Natural q() const { return nat_pow(Natural(p), k); }
  std::uint64_t q_word() const { return q().convert_to<std::uint64_t>(); }
};

// GF(p^k), or GF(p^{2k}) for SU. Cached per (p, degree, modulus).
Field module_field(const GroupSpec& spec);
// Dimension of the matrices: n, n+1 for AffineSL, 2n for BlockSL.
std::size_t matrix_dim(const GroupSpec& spec);
bool is_p_core_construction(Family f);

void validate_spec(const GroupSpec& spec);  // throws BadSpec
std::optional<Matrix> default_form(const GroupSpec& spec);
std::optional<Matrix> form_of(const GroupSpec& spec);

std::vector<Matrix> standard_generators(const GroupSpec& spec);
Natural group_order(const GroupSpec& spec);

Natural order_gl(unsigned n, const Natural& q);
Natural order_sl(unsigned n, const Natural& q);
Natural order_g2(const Natural& q);
Natural order_3d4(const Natural& q);

// Sesquilinear evaluation x^T G y (with y conjugated for hermitian forms).
Packed form_eval(const Matrix& gram, FormKind kind, unsigned conj_power, const Vec& x, const Vec& y);
// Frobenius power giving the hermitian conjugation on the module field of spec.
unsigned conjugation_power(const GroupSpec& spec);

struct FormDecomposition {
  std::vector<Vec> e, f;      // hyperbolic pairs, B(e_i, f_i) = 1
  std::vector<Vec> aniso;     // anisotropic remainder
  std::vector<Vec> radical;
};

// Greedy hyperbolic-pair extraction over the span of `basis`.
FormDecomposition decompose_form(const Matrix& gram, FormKind kind, unsigned conj_power,
                                 const std::vector<Vec>& basis);

struct CommutatorSpace {
  std::size_t dimension = 0;
  std::optional<std::size_t> witt_index;
  std::optional<bool> nondegenerate;
  std::vector<Vec> basis;
};

CommutatorSpace commutator_space(const std::vector<Matrix>& gens, const GroupSpec& spec);
// Vectors fixed by every generator.
std::vector<Vec> fixed_space(const std::vector<Matrix>& gens, std::size_t dim, const Field& f);
// {v : B(v, u) = 0 for u in span(us)}
std::vector<Vec> perp_space(const Matrix& gram, FormKind kind, unsigned conj_power, const std::vector<Vec>& us);

bool preserves_form(const Matrix& m, const Matrix& gram, FormKind kind, unsigned conj_power);

}  // namespace bbroot
