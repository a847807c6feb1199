#include <map>
#include <mutex>
#include <tuple>

#include "bbroot/matgrp.hpp"

namespace bbroot {

namespace {

Packed conj(const Field& f, unsigned cp, Packed x) { return cp ? f.frobenius(x, cp) : x; }

Vec unit(std::size_t d, std::size_t i) {
  Vec v(d, 0);
  v[i] = 1;
  return v;
}

Vec axpy(const Field& f, const Vec& y, Packed a, const Vec& x) {
  Vec r = y;
  for (std::size_t i = 0; i < r.size(); ++i)
    if (x[i]) r[i] = f.add(r[i], f.mul(a, x[i]));
  return r;
}

Vec scale(const Field& f, Packed a, const Vec& x) {
  Vec r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = f.mul(a, x[i]);
  return r;
}

bool is_zero(const Vec& v) {
  for (auto x : v)
    if (x) return false;
  return true;
}

// functional x -> B(x, u)
Vec functional(const Matrix& g, unsigned cp, const Vec& u) {
  const Field& f = g.field();
  Vec r(g.n(), 0);
  for (std::size_t j = 0; j < g.n(); ++j) {
    Packed s = 0;
    for (std::size_t l = 0; l < g.n(); ++l)
      if (g.at(j, l) && u[l]) s = f.add(s, f.mul(g.at(j, l), conj(f, cp, u[l])));
    r[j] = s;
  }
  return r;
}

// m += a * col * row
void add_outer(Matrix& m, Packed a, const Vec& col, const Vec& row) {
  const Field& f = m.field();
  for (std::size_t i = 0; i < m.n(); ++i) {
    if (!col[i]) continue;
    const Packed ci = f.mul(a, col[i]);
    for (std::size_t j = 0; j < m.n(); ++j)
      if (row[j]) m.at(i, j) = f.add(m.at(i, j), f.mul(ci, row[j]));
  }
}

std::vector<Vec> nullspace_rows(const Field& f, const std::vector<Vec>& rows, std::size_t ncols) {
  auto rb = row_basis(f, rows);
  std::vector<std::size_t> piv_of(rb.size());
  std::vector<bool> is_piv(ncols, false);
  for (std::size_t b = 0; b < rb.size(); ++b) {
    std::size_t p = 0;
    while (rb[b][p] == 0) ++p;
    piv_of[b] = p;
    is_piv[p] = true;
  }
  std::vector<Vec> out;
  for (std::size_t fr = 0; fr < ncols; ++fr) {
    if (is_piv[fr]) continue;
    Vec v(ncols, 0);
    v[fr] = 1;
    for (std::size_t b = 0; b < rb.size(); ++b) v[piv_of[b]] = f.neg(rb[b][fr]);
    out.push_back(v);
  }
  return out;
}

// s with s^(q0+1) = c for c in GF(q0)^*, q0 = p^cp
std::optional<Packed> norm_preimage(const Field& f, unsigned cp, Packed c) {
  const Packed w = f.primitive();
  const Packed nw = f.mul(w, f.frobenius(w, cp));
  Packed s = 1, ns = 1;
  const std::uint64_t q0 = std::uint64_t(f.data().pow_p[cp]);
  for (std::uint64_t j = 0; j + 1 < q0; ++j) {
    if (ns == c) return s;
    s = f.mul(s, w);
    ns = f.mul(ns, nw);
  }
  return std::nullopt;
}

// Finds an isotropic nonzero vector in the nondegenerate span of ws, if any.
std::optional<Vec> find_isotropic(const Matrix& g, FormKind kind, unsigned cp, const std::vector<Vec>& ws) {
  const Field& f = g.field();
  if (ws.empty()) return std::nullopt;
  if (kind == FormKind::Alternating) return ws[0];
  for (auto& w : ws)
    if (form_eval(g, kind, cp, w, w) == 0) return w;
  // orthogonal basis
  std::vector<Vec> d;
  std::vector<Packed> a;
  for (auto w : ws) {
    for (std::size_t i = 0; i < d.size(); ++i) {
      Packed c = f.div(form_eval(g, kind, cp, w, d[i]), a[i]);
      w = axpy(f, w, f.neg(c), d[i]);
    }
    if (is_zero(w)) continue;
    Packed aw = form_eval(g, kind, cp, w, w);
    if (aw == 0) return w;
    d.push_back(w);
    a.push_back(aw);
  }
  if (d.size() < 2) return std::nullopt;
  if (kind == FormKind::Hermitian) {
    auto s = norm_preimage(f, cp, f.neg(f.div(a[1], a[0])));
    if (!s) return std::nullopt;
    return axpy(f, d[1], *s, d[0]);
  }
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      auto s = f.sqrt(f.neg(f.div(a[j], a[i])));
      if (s) return axpy(f, d[j], *s, d[i]);
    }
  if (d.size() >= 3) {
    // a0 x^2 + a1 y^2 + a2 = 0
    for (Packed x = 0; x < f.q(); ++x) {
      Packed rhs = f.neg(f.div(f.add(a[2], f.mul(a[0], f.mul(x, x))), a[1]));
      auto y = f.sqrt(rhs);
      if (y) return axpy(f, axpy(f, d[2], x, d[0]), *y, d[1]);
    }
  }
  return std::nullopt;
}

std::vector<Matrix> sl_gens(const Field& f, std::size_t m, const std::vector<Packed>& coeffs) {
  std::vector<Matrix> out;
  for (auto c : coeffs) {
    Matrix x = Matrix::identity(f, m);
    x.at(0, 1) = c;
    out.push_back(x);
  }
  Matrix w(f, m);
  for (std::size_t i = 0; i + 1 < m; ++i) w.at(i + 1, i) = 1;
  w.at(0, m - 1) = (m % 2 == 1) ? 1 : f.neg(1);
  out.push_back(w);
  return out;
}

// F_p-basis of the subfield GF(p^s) inside f.
std::vector<Packed> subfield_basis(const Field& f, unsigned s) {
  const std::uint64_t q = f.q();
  const std::uint64_t qs = f.data().pow_p[s];
  Packed theta = f.pow(f.primitive(), (q - 1) / (qs - 1));
  std::vector<Packed> out;
  Packed x = 1;
  for (unsigned i = 0; i < s; ++i) {
    out.push_back(x);
    x = f.mul(x, theta);
  }
  return out;
}

struct Adapted {
  FormDecomposition dec;
  Matrix P, Pinv;  // columns e_1..e_m, aniso..., f_m..f_1
};

Adapted adapted_basis(const Matrix& gram, FormKind kind, unsigned cp) {
  const std::size_t d = gram.n();
  std::vector<Vec> all;
  for (std::size_t i = 0; i < d; ++i) all.push_back(unit(d, i));
  Adapted a{decompose_form(gram, kind, cp, all), Matrix(gram.field(), d), Matrix()};
  const std::size_t m = a.dec.e.size();
  std::vector<Vec> cols;
  for (std::size_t i = 0; i < m; ++i) cols.push_back(a.dec.e[i]);
  for (auto& w : a.dec.aniso) cols.push_back(w);
  for (std::size_t i = m; i-- > 0;) cols.push_back(a.dec.f[i]);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < d; ++i) a.P.at(i, j) = cols[j][i];
  a.Pinv = *a.P.inverse();
  return a;
}

Matrix levi(const Adapted& ad, FormKind kind, unsigned cp, const Matrix& A) {
  const Field& f = A.field();
  const std::size_t d = ad.P.n(), m = A.n();
  Matrix Ap = A.inverse()->transpose();
  if (kind == FormKind::Hermitian) Ap = Ap.frobenius(cp);
  Matrix L = Matrix::identity(f, d);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      L.at(i, j) = A.at(i, j);
      L.at(d - 1 - i, d - 1 - j) = Ap.at(i, j);
    }
  return ad.P * L * ad.Pinv;
}

Matrix transvection(const Matrix& g, unsigned cp, const Vec& v, Packed lambda) {
  Matrix t = Matrix::identity(g.field(), g.n());
  add_outer(t, lambda, v, functional(g, cp, v));
  return t;
}

Matrix eichler(const Matrix& g, FormKind kind, unsigned cp, const Vec& u, const Vec& w) {
  const Field& f = g.field();
  Matrix t = Matrix::identity(f, g.n());
  Vec ru = functional(g, cp, u), rw = functional(g, cp, w);
  add_outer(t, 1, w, ru);
  add_outer(t, f.neg(1), u, rw);
  Packed c = f.neg(f.div(form_eval(g, kind, cp, w, w), f.from_int(2)));
  add_outer(t, c, u, ru);
  return t;
}

}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::SL: return "SL";
    case Family::SU: return "SU";
    case Family::Sp: return "Sp";
    case Family::OmegaPlus: return "OmegaPlus";
    case Family::OmegaMinus: return "OmegaMinus";
    case Family::OmegaOdd: return "OmegaOdd";
    case Family::AffineSL: return "AffineSL";
    case Family::BlockSL: return "BlockSL";
    case Family::GL: return "GL";
  }
  return "?";
}

std::optional<Family> parse_family(const std::string& s) {
  for (Family f : {Family::SL, Family::SU, Family::Sp, Family::OmegaPlus, Family::OmegaMinus, Family::OmegaOdd,
                   Family::AffineSL, Family::BlockSL, Family::GL})
    if (family_name(f) == s) return f;
  return std::nullopt;
}

FormKind form_kind(Family f) {
  switch (f) {
    case Family::Sp: return FormKind::Alternating;
    case Family::SU: return FormKind::Hermitian;
    case Family::OmegaPlus:
    case Family::OmegaMinus:
    case Family::OmegaOdd: return FormKind::Symmetric;
    default: return FormKind::None;
  }
}

bool is_p_core_construction(Family f) { return f == Family::AffineSL || f == Family::BlockSL; }

Field module_field(const GroupSpec& spec) {
  static std::mutex mu;
  static std::map<std::tuple<std::uint32_t, unsigned, std::vector<std::uint32_t>>, Field> cache;
  const unsigned deg = spec.family == Family::SU ? 2 * spec.k : spec.k;
  auto key = std::make_tuple(spec.p, deg, spec.modulus.value_or(std::vector<std::uint32_t>{}));
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  Field f = build_field(spec.p, deg, spec.modulus);
  cache.emplace(key, f);
  return f;
}

std::size_t matrix_dim(const GroupSpec& spec) {
  switch (spec.family) {
    case Family::AffineSL: return spec.n + 1;
    case Family::BlockSL: return 2 * spec.n;
    default: return spec.n;
  }
}

unsigned conjugation_power(const GroupSpec& spec) { return spec.family == Family::SU ? spec.k : 0; }

Packed form_eval(const Matrix& g, FormKind kind, unsigned cp, const Vec& x, const Vec& y) {
  const Field& f = g.field();
  const unsigned c = kind == FormKind::Hermitian ? cp : 0;
  Packed s = 0;
  for (std::size_t i = 0; i < g.n(); ++i) {
    if (!x[i]) continue;
    Packed row = 0;
    for (std::size_t j = 0; j < g.n(); ++j)
      if (g.at(i, j) && y[j]) row = f.add(row, f.mul(g.at(i, j), conj(f, c, y[j])));
    s = f.add(s, f.mul(x[i], row));
  }
  return s;
}

FormDecomposition decompose_form(const Matrix& g, FormKind kind, unsigned cp, const std::vector<Vec>& basis_in) {
  const Field& f = g.field();
  if (kind != FormKind::Hermitian) cp = 0;
  FormDecomposition out;
  auto basis = row_basis(f, basis_in);
  const std::size_t r = basis.size();
  if (r == 0) return out;
  // radical: sum c_i u_i with B(sum c_i u_i, u_j) = 0
  std::vector<Vec> rows(r, Vec(r));
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t i = 0; i < r; ++i) rows[j][i] = form_eval(g, kind, cp, basis[i], basis[j]);
  for (auto& c : nullspace_rows(f, rows, r)) {
    Vec v(g.n(), 0);
    for (std::size_t i = 0; i < r; ++i)
      if (c[i]) v = axpy(f, v, c[i], basis[i]);
    out.radical.push_back(v);
  }
  std::vector<Vec> span = out.radical;
  std::vector<Vec> w;
  std::size_t rk = rank_of(f, span);
  for (auto& b : basis) {
    span.push_back(b);
    std::size_t nr = rank_of(f, span);
    if (nr > rk) {
      w.push_back(b);
      rk = nr;
    } else {
      span.pop_back();
    }
  }
  while (true) {
    auto u0 = find_isotropic(g, kind, cp, w);
    if (!u0) break;
    Vec u = *u0;
    std::optional<Vec> v;
    for (auto& x : w) {
      Packed b = form_eval(g, kind, cp, u, x);
      if (b != 0) {
        u = scale(f, f.inv(b), u);
        v = x;
        break;
      }
    }
    if (!v) break;  // cannot happen on a nondegenerate span
    Vec fv = *v;
    Packed vv = form_eval(g, kind, cp, fv, fv);
    if (kind != FormKind::Alternating && vv != 0) fv = axpy(f, fv, f.neg(f.div(vv, f.from_int(2))), u);
    const Packed eps = form_eval(g, kind, cp, fv, u);
    std::vector<Vec> rest;
    for (auto& x : w) {
      Packed beta = f.div(form_eval(g, kind, cp, x, u), eps);
      Packed alpha = form_eval(g, kind, cp, x, fv);
      Vec y = axpy(f, axpy(f, x, f.neg(alpha), u), f.neg(beta), fv);
      rest.push_back(y);
    }
    w = row_basis(f, rest);
    out.e.push_back(u);
    out.f.push_back(fv);
  }
  out.aniso = w;
  return out;
}

std::vector<Vec> perp_space(const Matrix& g, FormKind kind, unsigned cp, const std::vector<Vec>& us) {
  if (kind != FormKind::Hermitian) cp = 0;
  std::vector<Vec> rows;
  for (auto& u : us) rows.push_back(functional(g, cp, u));
  return nullspace_rows(g.field(), rows, g.n());
}

std::vector<Vec> fixed_space(const std::vector<Matrix>& gens, std::size_t dim, const Field& f) {
  std::vector<Vec> rows;
  for (auto& m : gens) {
    if (m.n() != dim) throw Error(Errc::DimensionMismatch, "generator dimension");
    for (std::size_t i = 0; i < dim; ++i) {
      Vec r(dim);
      for (std::size_t j = 0; j < dim; ++j) r[j] = f.sub(m.at(i, j), i == j ? 1 : 0);
      rows.push_back(r);
    }
  }
  return nullspace_rows(f, rows, dim);
}

bool preserves_form(const Matrix& m, const Matrix& g, FormKind kind, unsigned cp) {
  const std::size_t d = m.n();
  std::vector<Vec> cols(d, Vec(d));
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < d; ++i) cols[j][i] = m.at(i, j);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (form_eval(g, kind, cp, cols[i], cols[j]) != form_eval(g, kind, cp, unit(d, i), unit(d, j))) return false;
  return true;
}

std::optional<Matrix> default_form(const GroupSpec& spec) {
  const FormKind kind = form_kind(spec.family);
  if (kind == FormKind::None) return std::nullopt;
  const Field f = module_field(spec);
  const std::size_t n = spec.n;
  Matrix g(f, n);
  switch (spec.family) {
    case Family::Sp:
      for (std::size_t i = 0; i < n / 2; ++i) {
        g.at(i, n - 1 - i) = 1;
        g.at(n - 1 - i, i) = f.neg(1);
      }
      break;
    case Family::OmegaPlus:
    case Family::SU:
      for (std::size_t i = 0; i < n; ++i) g.at(i, n - 1 - i) = 1;
      if (spec.family == Family::SU && n % 2 == 1) g.at(n / 2, n / 2) = 1;
      break;
    case Family::OmegaOdd:
      for (std::size_t i = 0; i < n; ++i) g.at(i, n - 1 - i) = 1;
      g.at(n / 2, n / 2) = 2;
      break;
    case Family::OmegaMinus: {
      const std::size_t m = n / 2 - 1;
      for (std::size_t i = 0; i < m; ++i) {
        g.at(i, n - 1 - i) = 1;
        g.at(n - 1 - i, i) = 1;
      }
      // x^2 - nu y^2 on the middle plane, nu a non-square
      g.at(m, m) = 2;
      g.at(m + 1, m + 1) = f.neg(f.mul(2, f.primitive()));
      break;
    }
    default: break;
  }
  return g;
}

std::optional<Matrix> form_of(const GroupSpec& spec) {
  if (spec.form) return spec.form;
  return default_form(spec);
}

void validate_spec(const GroupSpec& spec) {
  auto bad = [](const std::string& s) { throw Error(Errc::BadSpec, s); };
  const unsigned n = spec.n;
  switch (spec.family) {
    case Family::SL:
    case Family::SU:
    case Family::AffineSL:
    case Family::BlockSL:
      if (n < 2) bad("dimension must be at least 2");
      break;
    case Family::GL:
      if (n < 1) bad("dimension must be positive");
      break;
    case Family::Sp:
      if (n < 2 || n % 2) bad("Sp needs even dimension");
      break;
    case Family::OmegaPlus:
    case Family::OmegaMinus:
      if (n < 4 || n % 2) bad("even orthogonal groups need even dimension >= 4");
      break;
    case Family::OmegaOdd:
      if (n < 3 || n % 2 == 0) bad("odd orthogonal groups need odd dimension >= 3");
      break;
  }
  const Field f = module_field(spec);
  if (!spec.form) return;
  const FormKind kind = form_kind(spec.family);
  if (kind == FormKind::None) bad("family " + family_name(spec.family) + " carries no form");
  const Matrix& g = *spec.form;
  if (g.n() != n || g.field() != f) bad("form has wrong shape or field");
  const unsigned cp = conjugation_power(spec);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Packed a = g.at(i, j), b = g.at(j, i);
      switch (kind) {
        case FormKind::Alternating:
          if (a != f.neg(b) || (i == j && a != 0)) bad("Sp form must be alternating");
          break;
        case FormKind::Symmetric:
          if (a != b) bad("orthogonal form must be symmetric");
          break;
        case FormKind::Hermitian:
          if (a != f.frobenius(b, cp)) bad("SU form must be hermitian");
          break;
        default: break;
      }
    }
  if (g.det() == 0) bad("form is degenerate");
  std::vector<Vec> all;
  for (std::size_t i = 0; i < n; ++i) all.push_back(unit(n, i));
  auto dec = decompose_form(g, kind, cp, all);
  const std::size_t witt = dec.e.size();
  if (spec.family == Family::OmegaPlus && witt != n / 2) bad("form is not of plus type");
  if (spec.family == Family::OmegaMinus && witt != n / 2 - 1) bad("form is not of minus type");
}

std::vector<Matrix> standard_generators(const GroupSpec& spec) {
  validate_spec(spec);
  const Field f = module_field(spec);
  const std::size_t n = spec.n;
  const std::vector<Packed> full = subfield_basis(f, f.k());
  std::vector<Matrix> out;
  switch (spec.family) {
    case Family::SL:
      return sl_gens(f, n, full);
    case Family::GL: {
      if (n >= 2) out = sl_gens(f, n, full);
      Matrix d = Matrix::identity(f, n);
      d.at(0, 0) = f.primitive();
      out.push_back(d);
      return out;
    }
    case Family::AffineSL: {
      for (auto& a : sl_gens(f, n, full)) {
        Matrix m = Matrix::identity(f, n + 1);
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) m.at(i, j) = a.at(i, j);
        out.push_back(m);
      }
      for (auto c : full) {
        Matrix t = Matrix::identity(f, n + 1);
        t.at(0, n) = c;
        out.push_back(t);
      }
      return out;
    }
    case Family::BlockSL: {
      for (auto& a : sl_gens(f, n, full)) out.push_back(block_diag(a, a.frobenius(1)));
      for (auto c : full) {
        Matrix t = Matrix::identity(f, 2 * n);
        t.at(0, n) = c;
        out.push_back(t);
      }
      return out;
    }
    default: break;
  }

  const FormKind kind = form_kind(spec.family);
  const unsigned cp = conjugation_power(spec);
  const Matrix g = *form_of(spec);
  const Adapted ad = adapted_basis(g, kind, cp);
  const auto& e = ad.dec.e;
  const auto& fv = ad.dec.f;
  const std::size_t m = e.size();
  if (m == 0) throw Error(Errc::BadSpec, "form has no hyperbolic pair");
  if (m >= 2)
    for (auto& a : sl_gens(f, m, full)) out.push_back(levi(ad, kind, cp, a));

  switch (spec.family) {
    case Family::Sp:
      for (auto c : full) {
        out.push_back(transvection(g, cp, e[0], c));
        out.push_back(transvection(g, cp, fv[0], c));
      }
      break;
    case Family::OmegaPlus:
      for (auto c : full) {
        out.push_back(eichler(g, kind, cp, e[0], scale(f, c, e[1])));
        out.push_back(eichler(g, kind, cp, fv[0], scale(f, c, fv[1])));
      }
      break;
    case Family::OmegaOdd:
    case Family::OmegaMinus:
      for (auto& w : ad.dec.aniso)
        for (auto c : full) {
          out.push_back(eichler(g, kind, cp, e[0], scale(f, c, w)));
          out.push_back(eichler(g, kind, cp, fv[0], scale(f, c, w)));
        }
      break;
    case Family::SU: {
      // trace-zero multiples of the GF(q0) basis
      const Packed zeta = f.pow(f.primitive(), (std::uint64_t(f.data().pow_p[cp]) + 1) / 2);
      for (auto b : subfield_basis(f, cp)) {
        out.push_back(transvection(g, cp, e[0], f.mul(zeta, b)));
        out.push_back(transvection(g, cp, fv[0], f.mul(zeta, b)));
      }
      for (auto& w : ad.dec.aniso)
        for (auto c : full) {
          out.push_back(eichler(g, kind, cp, e[0], scale(f, c, w)));
          out.push_back(eichler(g, kind, cp, fv[0], scale(f, c, w)));
        }
      break;
    }
    default: break;
  }
  return out;
}

Natural order_gl(unsigned n, const Natural& q) {
  Natural r = nat_pow(q, n * (n - 1) / 2);
  for (unsigned i = 1; i <= n; ++i) r *= nat_pow(q, i) - 1;
  return r;
}

Natural order_sl(unsigned n, const Natural& q) { return order_gl(n, q) / (q - 1); }

Natural order_g2(const Natural& q) { return nat_pow(q, 6) * (nat_pow(q, 6) - 1) * (q * q - 1); }

Natural order_3d4(const Natural& q) {
  return nat_pow(q, 12) * (nat_pow(q, 8) + nat_pow(q, 4) + 1) * (nat_pow(q, 6) - 1) * (q * q - 1);
}

Natural group_order(const GroupSpec& spec) {
  validate_spec(spec);
  const Natural q = spec.q();
  const unsigned n = spec.n;
  switch (spec.family) {
    case Family::SL: return order_sl(n, q);
    case Family::GL: return order_gl(n, q);
    case Family::SU: {
      Natural r = nat_pow(q, n * (n - 1) / 2);
      for (unsigned i = 2; i <= n; ++i) {
        Natural qi = nat_pow(q, i);
        r *= (i % 2 == 0) ? Natural(qi - 1) : Natural(qi + 1);
      }
      return r;
    }
    case Family::Sp: {
      const unsigned m = n / 2;
      Natural r = nat_pow(q, m * m);
      for (unsigned i = 1; i <= m; ++i) r *= nat_pow(q, 2 * i) - 1;
      return r;
    }
    case Family::OmegaOdd: {
      const unsigned m = (n - 1) / 2;
      Natural r = nat_pow(q, m * m);
      for (unsigned i = 1; i <= m; ++i) r *= nat_pow(q, 2 * i) - 1;
      return r / 2;
    }
    case Family::OmegaPlus:
    case Family::OmegaMinus: {
      const unsigned m = n / 2;
      Natural r = nat_pow(q, m * (m - 1));
      r *= spec.family == Family::OmegaPlus ? nat_pow(q, m) - 1 : nat_pow(q, m) + 1;
      for (unsigned i = 1; i < m; ++i) r *= nat_pow(q, 2 * i) - 1;
      return r / 2;
    }
    case Family::AffineSL: return order_sl(n, q) * nat_pow(q, n);
    case Family::BlockSL: return order_sl(n, q) * nat_pow(q, n * n);
  }
  throw Error(Errc::UnsupportedFamily, "no order formula");
}

CommutatorSpace commutator_space(const std::vector<Matrix>& gens, const GroupSpec& spec) {
  const Field f = module_field(spec);
  const std::size_t d = matrix_dim(spec);
  std::vector<Vec> rows;
  for (auto& m : gens) {
    if (m.n() != d) throw Error(Errc::DimensionMismatch, "generator does not act on the natural module");
    for (std::size_t j = 0; j < d; ++j) {
      Vec c(d);
      for (std::size_t i = 0; i < d; ++i) c[i] = f.sub(m.at(i, j), i == j ? 1 : 0);
      rows.push_back(c);
    }
  }
  CommutatorSpace cs;
  cs.basis = row_basis(f, rows);
  cs.dimension = cs.basis.size();
  auto g = form_of(spec);
  if (g && !is_p_core_construction(spec.family)) {
    auto dec = decompose_form(*g, form_kind(spec.family), conjugation_power(spec), cs.basis);
    cs.witt_index = dec.radical.size() + dec.e.size();
    cs.nondegenerate = dec.radical.empty();
  }
  return cs;
}

}  // namespace bbroot
