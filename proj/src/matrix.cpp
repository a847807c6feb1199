#include "bbroot/matgrp.hpp"

namespace bbroot {

Matrix::Matrix(Field f, std::size_t n, std::vector<Packed> entries) : f_(std::move(f)), n_(n), a_(std::move(entries)) {
  if (a_.size() != n * n) throw Error(Errc::DimensionMismatch, "matrix entry count");
}

Matrix Matrix::identity(const Field& f, std::size_t n) {
  Matrix m(f, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Matrix Matrix::from_ints(const Field& f, const std::vector<std::vector<std::int64_t>>& rows) {
  Matrix m(f, rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) throw Error(Errc::DimensionMismatch, "matrix must be square");
    for (std::size_t j = 0; j < rows.size(); ++j) m.at(i, j) = f.from_int(rows[i][j]);
  }
  return m;
}

void mat_mul_raw(const Field& f, std::size_t n, const Packed* a, const Packed* b, Packed* c) {
  const FieldData& fd = f.data();
  if (fd.k == 1) {
    const std::uint64_t p = fd.p;
    // delayed reduction while the accumulator cannot overflow
    const bool lazy = p < (1u << 24) && n < 64;
    std::uint64_t acc[64];
    for (std::size_t i = 0; i < n; ++i) {
      if (lazy) {
        for (std::size_t j = 0; j < n; ++j) acc[j] = 0;
        for (std::size_t l = 0; l < n; ++l) {
          const std::uint64_t x = a[i * n + l];
          if (x == 0) continue;
          const Packed* brow = b + l * n;
          for (std::size_t j = 0; j < n; ++j) acc[j] += x * brow[j];
        }
        for (std::size_t j = 0; j < n; ++j) c[i * n + j] = Packed(acc[j] % p);
      } else {
        for (std::size_t j = 0; j < n; ++j) {
          std::uint64_t s = 0;
          for (std::size_t l = 0; l < n; ++l) s = (s + std::uint64_t(a[i * n + l]) * b[l * n + j]) % p;
          c[i * n + j] = Packed(s);
        }
      }
    }
    return;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) c[i * n + j] = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < n; ++l) {
      const Packed x = a[i * n + l];
      if (x == 0) continue;
      const Packed* brow = b + l * n;
      Packed* crow = c + i * n;
      for (std::size_t j = 0; j < n; ++j)
        if (brow[j]) crow[j] = f.add(crow[j], f.mul(x, brow[j]));
    }
}

bool mat_inv_raw(const Field& f, std::size_t n, const Packed* a, Packed* out) {
  std::vector<Packed> m(a, a + n * n);
  for (std::size_t i = 0; i < n * n; ++i) out[i] = 0;
  for (std::size_t i = 0; i < n; ++i) out[i * n + i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv * n + col] == 0) ++piv;
    if (piv == n) return false;
    if (piv != col)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m[piv * n + j], m[col * n + j]);
        std::swap(out[piv * n + j], out[col * n + j]);
      }
    const Packed iv = f.inv(m[col * n + col]);
    for (std::size_t j = 0; j < n; ++j) {
      m[col * n + j] = f.mul(m[col * n + j], iv);
      out[col * n + j] = f.mul(out[col * n + j], iv);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const Packed c = m[r * n + col];
      if (c == 0) continue;
      const Packed nc = f.neg(c);
      for (std::size_t j = 0; j < n; ++j) {
        if (m[col * n + j]) m[r * n + j] = f.add(m[r * n + j], f.mul(nc, m[col * n + j]));
        if (out[col * n + j]) out[r * n + j] = f.add(out[r * n + j], f.mul(nc, out[col * n + j]));
      }
    }
  }
  return true;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (n_ != o.n_) throw Error(Errc::DimensionMismatch, "matrix product");
  if (f_ != o.f_) throw Error(Errc::FieldMismatch, "matrix product");
  Matrix r(f_, n_);
  mat_mul_raw(f_, n_, a_.data(), o.a_.data(), r.a_.data());
  return r;
}

Vec Matrix::apply(const Vec& v) const {
  if (v.size() != n_) throw Error(Errc::DimensionMismatch, "matrix-vector product");
  Vec r(n_, 0);
  for (std::size_t i = 0; i < n_; ++i) {
    Packed s = 0;
    for (std::size_t j = 0; j < n_; ++j)
      if (at(i, j) && v[j]) s = f_.add(s, f_.mul(at(i, j), v[j]));
    r[i] = s;
  }
  return r;
}

bool Matrix::is_identity() const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (at(i, j) != (i == j ? 1u : 0u)) return false;
  return true;
}

Matrix Matrix::transpose() const {
  Matrix r(f_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) r.at(j, i) = at(i, j);
  return r;
}

Matrix Matrix::frobenius(unsigned times) const {
  Matrix r = *this;
  if (times % f_.k() == 0) return r;
  for (auto& x : r.a_) x = f_.frobenius(x, times % f_.k());
  return r;
}

std::optional<Matrix> Matrix::inverse() const {
  Matrix r(f_, n_);
  if (!mat_inv_raw(f_, n_, a_.data(), r.a_.data())) return std::nullopt;
  return r;
}

Packed Matrix::det() const {
  std::vector<Packed> m = a_;
  Packed d = 1;
  for (std::size_t col = 0; col < n_; ++col) {
    std::size_t piv = col;
    while (piv < n_ && m[piv * n_ + col] == 0) ++piv;
    if (piv == n_) return 0;
    if (piv != col) {
      for (std::size_t j = 0; j < n_; ++j) std::swap(m[piv * n_ + j], m[col * n_ + j]);
      d = f_.neg(d);
    }
    const Packed pv = m[col * n_ + col];
    d = f_.mul(d, pv);
    const Packed iv = f_.inv(pv);
    for (std::size_t r = col + 1; r < n_; ++r) {
      const Packed c = f_.mul(m[r * n_ + col], iv);
      if (c == 0) continue;
      const Packed nc = f_.neg(c);
      for (std::size_t j = col; j < n_; ++j) m[r * n_ + j] = f_.add(m[r * n_ + j], f_.mul(nc, m[col * n_ + j]));
    }
  }
  return d;
}

Matrix Matrix::pow(const Natural& e) const {
  Matrix r = identity(f_, n_);
  if (e == 0) return r;
  const unsigned bits = unsigned(boost::multiprecision::msb(e)) + 1;
  for (unsigned b = bits; b-- > 0;) {
    r = r * r;
    if (boost::multiprecision::bit_test(e, b)) r = r * (*this);
  }
  return r;
}

Matrix block_diag(const Matrix& a, const Matrix& b) {
  if (a.field() != b.field()) throw Error(Errc::FieldMismatch, "block_diag");
  const std::size_t n = a.n() + b.n();
  Matrix r(a.field(), n);
  for (std::size_t i = 0; i < a.n(); ++i)
    for (std::size_t j = 0; j < a.n(); ++j) r.at(i, j) = a.at(i, j);
  for (std::size_t i = 0; i < b.n(); ++i)
    for (std::size_t j = 0; j < b.n(); ++j) r.at(a.n() + i, a.n() + j) = b.at(i, j);
  return r;
}

std::vector<Vec> row_basis(const Field& f, std::vector<Vec> rows) {
  std::vector<Vec> basis;
  std::vector<std::size_t> pivots;
  for (auto& v : rows) {
    // reduce against current basis
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const Packed c = v[pivots[b]];
      if (c == 0) continue;
      const Packed nc = f.neg(c);
      for (std::size_t j = 0; j < v.size(); ++j)
        if (basis[b][j]) v[j] = f.add(v[j], f.mul(nc, basis[b][j]));
    }
    std::size_t piv = 0;
    while (piv < v.size() && v[piv] == 0) ++piv;
    if (piv == v.size()) continue;
    const Packed iv = f.inv(v[piv]);
    for (auto& x : v) x = f.mul(x, iv);
    // keep the basis fully reduced
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const Packed c = basis[b][piv];
      if (c == 0) continue;
      const Packed nc = f.neg(c);
      for (std::size_t j = 0; j < v.size(); ++j)
        if (v[j]) basis[b][j] = f.add(basis[b][j], f.mul(nc, v[j]));
    }
    basis.push_back(v);
    pivots.push_back(piv);
  }
  return basis;
}

std::size_t rank_of(const Field& f, const std::vector<Vec>& rows) { return row_basis(f, rows).size(); }

std::vector<Vec> nullspace(const Matrix& m) {
  const Field& f = m.field();
  const std::size_t n = m.n();
  std::vector<Vec> rows(n, Vec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = m.at(i, j);
  auto rb = row_basis(f, rows);
  std::vector<std::size_t> piv_of(n, n);
  std::vector<bool> is_piv(n, false);
  for (std::size_t b = 0; b < rb.size(); ++b) {
    std::size_t p = 0;
    while (rb[b][p] == 0) ++p;
    piv_of[b] = p;
    is_piv[p] = true;
  }
  std::vector<Vec> out;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_piv[free]) continue;
    Vec v(n, 0);
    v[free] = 1;
    for (std::size_t b = 0; b < rb.size(); ++b) v[piv_of[b]] = f.neg(rb[b][free]);
    out.push_back(v);
  }
  return out;
}

}  // namespace bbroot
