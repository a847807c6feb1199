#pragma once

#include <vector>

#include "bbroot/blackbox.hpp"
#include "bbroot/matgrp.hpp"

namespace fx {

using namespace bbroot;

inline GroupSpec spec(Family f, unsigned n, unsigned p, unsigned k = 1) {
  GroupSpec s;
  s.family = f;
  s.n = n;
  s.p = p;
  s.k = k;
  return s;
}

// Place m at rows/cols `at` inside an identity of size n.
inline Matrix embed(const Matrix& m, std::size_t n, const std::vector<std::size_t>& at) {
  Matrix r = Matrix::identity(m.field(), n);
  for (std::size_t i = 0; i < at.size(); ++i)
    for (std::size_t j = 0; j < at.size(); ++j) r.at(at[i], at[j]) = m.at(i, j);
  return r;
}

// Direct product of two matrix groups as block diagonal matrices.
inline std::vector<Matrix> direct_product(const std::vector<Matrix>& a, const std::vector<Matrix>& b) {
  std::vector<Matrix> r;
  Matrix ia = Matrix::identity(a[0].field(), a[0].n()), ib = Matrix::identity(b[0].field(), b[0].n());
  for (auto& g : a) r.push_back(block_diag(g, ib));
  for (auto& g : b) r.push_back(block_diag(ia, g));
  return r;
}

inline BlackBoxPtr box(const std::vector<Matrix>& gens, unsigned p, const Natural& q) {
  return bb_from_matrices(gens, order_gl(unsigned(gens[0].n()), Natural(gens[0].field().q())), p, q);
}

inline std::vector<Matrix> sl2(unsigned p, unsigned k = 1) { return standard_generators(spec(Family::SL, 2, p, k)); }
// PSL2(5) = A5 as the orthogonal group Omega3(5).
inline std::vector<Matrix> a5() { return standard_generators(spec(Family::OmegaOdd, 3, 5)); }

// GF(p^k) written over GF(p) as k x k multiplication matrices in the power basis.
inline Matrix mult_matrix(const Field& big, const Field& small, Packed a) {
  const unsigned k = big.k();
  Matrix m(small, k);
  for (unsigned j = 0; j < k; ++j) {
    std::vector<std::uint32_t> e(k, 0);
    e[j] = 1;
    auto col = big.unpack(big.mul(a, big.pack(e)));
    for (unsigned i = 0; i < k; ++i) m.at(i, j) = col[i];
  }
  return m;
}

// Restriction of scalars: an n x n matrix over GF(p^k) as nk x nk over GF(p).
inline Matrix restrict_scalars(const Matrix& m, const Field& small) {
  const unsigned k = m.field().k();
  const std::size_t n = m.n();
  Matrix r(small, n * k);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Matrix b = mult_matrix(m.field(), small, m.at(i, j));
      for (unsigned a = 0; a < k; ++a)
        for (unsigned c = 0; c < k; ++c) r.at(i * k + a, j * k + c) = b.at(a, c);
    }
  return r;
}

// One SL2 factor of Omega4+(5) on <e0, e1, e5, e6> inside Omega7(5): the 4-space is
// M2(F) with Q = det via (x0, x1, -x5, x6), and A acts by left multiplication.
inline std::vector<Matrix> omega7_long_root() {
  std::vector<Matrix> r;
  for (const auto& a : sl2(5)) {
    const Field& f = a.field();
    Matrix m = Matrix::identity(f, 7);
    m.at(0, 0) = a.at(0, 0);
    m.at(0, 5) = f.neg(a.at(0, 1));
    m.at(5, 0) = f.neg(a.at(1, 0));
    m.at(5, 5) = a.at(1, 1);
    m.at(1, 1) = a.at(0, 0);
    m.at(1, 6) = a.at(0, 1);
    m.at(6, 1) = a.at(1, 0);
    m.at(6, 6) = a.at(1, 1);
    r.push_back(m);
  }
  return r;
}

}  // namespace fx
