#include "bbroot/oracle.hpp"

#include <deque>
#include <map>

#include <nlohmann/json.hpp>

#include "bbroot/involution.hpp"
#include "bbroot/random.hpp"
#include "bbroot/subgrp.hpp"

namespace bbroot::oracle {

bool VerificationReport::overall() const {
  if (checks.empty()) return false;
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

void VerificationReport::add(std::string name, bool pass, std::string measured) {
  checks.push_back({std::move(name), pass, std::move(measured)});
}

std::string VerificationReport::to_json() const {
  nlohmann::json j;
  j["overall"] = overall();
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks) j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"measured", c.measured}});
  return j.dump();
}

std::size_t WordsHash::operator()(const std::vector<std::uint32_t>& w) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (auto x : w) {
    h ^= x;
    h *= 0x100000001b3ull;
  }
  return std::size_t(h);
}

std::vector<Matrix> to_matrices(const Subgroup& h) {
  const MatrixBackend* mb = matrix_backend(h.bb());
  if (!mb) throw Error(Errc::BackendNotWhiteBox, "subgroup is not backed by matrices");
  std::vector<Matrix> r;
  for (const auto& g : h.gens) r.push_back(mb->decode(g));
  return r;
}

std::optional<ElementSet> closure_set(const std::vector<Matrix>& gens, std::size_t cap) {
  ElementSet seen;
  if (gens.empty()) {
    seen.insert({});
    return seen;
  }
  const Field& f = gens[0].field();
  const std::size_t n = gens[0].n();
  std::deque<std::vector<std::uint32_t>> todo;
  auto id = Matrix::identity(f, n).entries();
  seen.insert(id);
  todo.push_back(id);
  std::vector<std::uint32_t> c(n * n);
  while (!todo.empty()) {
    auto x = std::move(todo.front());
    todo.pop_front();
    for (const auto& g : gens) {
      mat_mul_raw(f, n, x.data(), g.entries().data(), c.data());
      if (seen.insert(c).second) {
        if (seen.size() > cap) return std::nullopt;
        todo.push_back(c);
      }
    }
  }
  return seen;
}

std::optional<std::size_t> brute_closure(const std::vector<Matrix>& gens, std::size_t cap) {
  auto s = closure_set(gens, cap);
  if (!s) return std::nullopt;
  return s->size();
}

std::optional<bool> same_closure(const std::vector<Matrix>& a, const std::vector<Matrix>& b, std::size_t cap) {
  auto sa = closure_set(a, cap);
  if (!sa) return std::nullopt;
  auto sb = closure_set(b, cap);
  if (!sb) return std::nullopt;
  if (sa->size() != sb->size()) return false;
  for (const auto& g : b)
    if (!sa->count(g.entries())) return false;
  return true;
}

namespace {

// Incremental echelon basis over a field.
struct Echelon {
  Field f;
  std::vector<Vec> rows;
  std::vector<std::size_t> pivots;

  bool insert(Vec v) {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      Packed c = v[pivots[r]];
      if (c == 0) continue;
      for (std::size_t j = 0; j < v.size(); ++j) v[j] = f.sub(v[j], f.mul(c, rows[r][j]));
    }
    std::size_t p = 0;
    while (p < v.size() && v[p] == 0) ++p;
    if (p == v.size()) return false;
    Packed s = f.inv(v[p]);
    for (auto& x : v) x = f.mul(x, s);
    for (auto& row : rows) {
      Packed c = row[p];
      if (c == 0) continue;
      for (std::size_t j = 0; j < v.size(); ++j) row[j] = f.sub(row[j], f.mul(c, v[j]));
    }
    rows.push_back(std::move(v));
    pivots.push_back(p);
    return true;
  }
};

}  // namespace

std::size_t enveloping_dimension(const std::vector<Matrix>& gens) {
  if (gens.empty()) return 1;
  const Field& f = gens[0].field();
  const std::size_t n = gens[0].n();
  Echelon ech{f, {}, {}};
  std::deque<Matrix> todo;
  Matrix id = Matrix::identity(f, n);
  ech.insert(id.entries());
  todo.push_back(id);
  while (!todo.empty()) {
    Matrix x = std::move(todo.front());
    todo.pop_front();
    for (const auto& g : gens) {
      Matrix y = x * g;
      if (ech.insert(y.entries())) todo.push_back(std::move(y));
    }
  }
  return ech.rows.size();
}

VerificationReport verify_sl2(const Subgroup& k, const Natural& q, std::size_t samples, std::uint64_t seed) {
  VerificationReport rep;
  auto mats = to_matrices(k);
  Subgroup ks = drop_identities(k);
  rep.add("nontrivial", !ks.gens.empty(), std::to_string(ks.gens.size()) + " generators");
  if (ks.gens.empty()) return rep;
  const BlackBox& bb = k.bb();
  const Natural order = q * (q * q - 1);
  RngStream rng(seed);
  MonteCarlo mc;

  PrsState prs = make_sampler(ks, mc.sampling, rng);
  std::size_t bad = 0;
  for (std::size_t t = 0; t < samples; ++t)
    if (!order_divides(bb, prs.next(), order)) ++bad;
  rep.add("orders divide q(q^2-1)", bad == 0, std::to_string(bad) + " of " + std::to_string(samples) + " fail");

  const bool small = order <= 1000000;
  std::optional<ElementSet> all;
  if (small) all = closure_set(mats, 2000000);
  const MatrixBackend* mb = matrix_backend(bb);

  if (all) {
    std::size_t central = 0;
    for (const auto& w : *all) {
      Element x(w);
      if (bb.is_identity(x) || !bb.is_identity(bb.mult(x, x))) continue;
      if (centralizes(ks, x)) ++central;
    }
    rep.add("unique central involution", central == 1, std::to_string(central) + " central involutions");
    rep.add("closure order", Natural(all->size()) == order, std::to_string(all->size()));
  } else {
    std::vector<Element> found;
    std::size_t distinct = 0;
    for (std::size_t t = 0; t < 200; ++t) {
      auto i = make_involution(bb, prs.next(), bb.exponent());
      if (!i || !centralizes(ks, *i)) continue;
      bool fresh = true;
      for (const auto& f : found)
        if (bb.equal(f, *i)) fresh = false;
      if (fresh) {
        found.push_back(*i);
        ++distinct;
      }
    }
    rep.add("unique central involution", distinct == 1, std::to_string(distinct) + " central involutions sampled");
  }

  Subgroup d = derived_subgroup(ks, mc, rng);
  bool perfect = false;
  std::string how;
  if (all && !d.gens.empty()) {
    std::vector<Matrix> dm;
    for (const auto& g : d.gens) dm.push_back(mb->decode(g));
    auto eq = same_closure(dm, mats, 2000000);
    perfect = eq && *eq;
    how = "exact closure comparison";
  } else if (!d.gens.empty()) {
    std::vector<Matrix> dm;
    for (const auto& g : d.gens) dm.push_back(mb->decode(g));
    std::size_t a = enveloping_dimension(dm), b = enveloping_dimension(mats);
    perfect = a == b;
    how = "enveloping algebra dims " + std::to_string(a) + "/" + std::to_string(b);
  } else {
    how = "derived subgroup trivial";
  }
  rep.add("perfect", perfect, how);
  return rep;
}

VerificationReport verify_long_root_whitebox(const Subgroup& k, const GroupSpec& spec) {
  if (is_p_core_construction(spec.family))
    throw Error(Errc::UnsupportedFamily, "no long-root signature for p-core constructions");
  VerificationReport rep;
  auto mats = to_matrices(k);
  const std::size_t n = spec.n;
  CommutatorSpace cs = commutator_space(mats, spec);
  Field f = module_field(spec);
  const FormKind kind = form_kind(spec.family);
  const bool orth = kind == FormKind::Symmetric;
  const std::size_t want = orth ? 4 : 2;
  rep.add("dim [K,V]", cs.dimension == want, std::to_string(cs.dimension));
  if (kind != FormKind::None) {
    rep.add("[K,V] nondegenerate", cs.nondegenerate.value_or(false),
            cs.nondegenerate ? (*cs.nondegenerate ? "yes" : "no") : "n/a");
    if (orth)
      rep.add("Witt index 2", cs.witt_index == std::optional<std::size_t>(2),
              cs.witt_index ? std::to_string(*cs.witt_index) : "n/a");
  }
  // K acts trivially on a complement of [K,V].
  auto fixed = fixed_space(mats, n, f);
  std::vector<Vec> both = fixed;
  both.insert(both.end(), cs.basis.begin(), cs.basis.end());
  const bool complement = fixed.size() + cs.dimension == n && rank_of(f, both) == n;
  rep.add("K fixes a complement", complement, std::to_string(fixed.size()) + "-dim fixed space");
  if (kind != FormKind::None && cs.dimension > 0) {
    auto gram = form_of(spec);
    auto perp = perp_space(*gram, kind, conjugation_power(spec), cs.basis);
    std::vector<Vec> all = fixed;
    all.insert(all.end(), perp.begin(), perp.end());
    const bool centralizes_perp = rank_of(f, all) == fixed.size() && perp.size() == fixed.size();
    rep.add("K centralizes [K,V]^perp", centralizes_perp, std::to_string(perp.size()) + "-dim perp");
  }
  return rep;
}

bool is_unipotent(const std::vector<Matrix>& gens) {
  if (gens.empty()) return true;
  const Field& f = gens[0].field();
  const std::size_t n = gens[0].n();
  // W_{k+1} = sum_g (g - 1) W_k descends to 0 iff the generated group is unipotent.
  std::vector<Vec> w;
  for (std::size_t i = 0; i < n; ++i) {
    Vec e(n, 0);
    e[i] = 1;
    w.push_back(e);
  }
  for (std::size_t step = 0; step <= n && !w.empty(); ++step) {
    std::vector<Vec> next;
    for (const auto& g : gens)
      for (const auto& v : w) {
        Vec y = g.apply(v);
        for (std::size_t i = 0; i < n; ++i) y[i] = f.sub(y[i], v[i]);
        next.push_back(std::move(y));
      }
    w = row_basis(f, std::move(next));
  }
  return w.empty();
}

VerificationReport verify_pcore_witness(const Element& w, const Subgroup& x, std::uint32_t p, std::uint64_t seed) {
  VerificationReport rep;
  const BlackBox& bb = x.bb();
  rep.add("witness nontrivial", !bb.is_identity(w), "");
  const Natural pp = primes_part(bb.exponent().value, p);
  rep.add("witness^(p-part of E) = 1", order_divides(bb, w, pp), "p-part " + to_string(pp));
  RngStream rng(seed);
  Subgroup n = normal_closure(Subgroup{x.parent, {w}}, x, MonteCarlo{}, rng);
  auto mats = to_matrices(n);
  rep.add("normal closure unipotent", is_unipotent(mats), std::to_string(mats.size()) + " generators");
  return rep;
}

}  // namespace bbroot::oracle
