#include "bbroot/algorithms.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

namespace bbroot {

namespace {

Run sub(const Run& r, std::string_view label, std::uint64_t idx = 0) { return Run{r.cfg, r.rng.child(label, idx), r.log}; }

TranscriptRecord rec(std::string algorithm, std::string step, std::string verdict, std::string detail = {}) {
  TranscriptRecord r;
  r.algorithm = std::move(algorithm);
  r.step = std::move(step);
  r.verdict = std::move(verdict);
  r.detail = std::move(detail);
  return r;
}

std::size_t ceil_log2(double x) { return std::size_t(std::ceil(std::log2(std::max(x, 2.0)))); }

Natural sl2_order(const Natural& q) { return q * (q * q - 1); }

Subgroup derived2(const Subgroup& h, const AlgoConfig& cfg, RngStream& rng) {
  Subgroup d1 = derived_subgroup(h, cfg.mc, rng);
  return derived_subgroup(d1, cfg.mc, rng);
}

std::optional<Element> noncentral_involution(const Subgroup& g, const Exponent& e, std::size_t draws, Run run) {
  PrsState prs = make_sampler(g, run.cfg.mc.sampling, run.rng);
  for (std::size_t t = 0; t < draws; ++t) {
    auto i = make_involution(g.bb(), prs.next(), e);
    if (i && !centralizes(g, *i)) return i;
  }
  return std::nullopt;
}

// C_L(t)'' for a pseudo-involution t, generated by zeta1 images.
Subgroup residual(const Subgroup& l, const Element& t, const Exponent& e, Run run) {
  const BlackBox& bb = l.bb();
  Subgroup z{l.parent, {}};
  PrsState prs = make_sampler(l, run.cfg.mc.sampling, run.rng);
  for (std::size_t s = 0; s < run.cfg.centralizer_count; ++s) {
    ZetaResult r = zeta(bb, t, prs.next(), e);
    if (r.kind == ZetaKind::Zeta1 && !bb.is_identity(r.value)) z.gens.push_back(std::move(r.value));
  }
  return derived2(z, run.cfg, run.rng);
}

bool orders_divide(const Subgroup& h, const Natural& d, std::size_t samples, Run run) {
  const BlackBox& bb = h.bb();
  for (const auto& g : h.gens)
    if (!order_divides(bb, g, d)) return false;
  if (h.gens.empty()) return true;
  PrsState prs = make_sampler(h, run.cfg.mc.sampling, run.rng);
  for (std::size_t s = 0; s < samples; ++s)
    if (!order_divides(bb, prs.next(), d)) return false;
  return true;
}

struct PcoreFound {
  Element witness;
  std::string where;
};

}  // namespace

std::string Transcript::to_jsonl() const {
  std::string out;
  for (const auto& r : records_) {
    nlohmann::ordered_json j;
    j["algorithm"] = r.algorithm;
    j["step"] = r.step;
    j["involution"] = r.involution ? nlohmann::ordered_json(*r.involution) : nlohmann::ordered_json(nullptr);
    j["samples"] = r.samples;
    j["verdict"] = r.verdict;
    if (!r.detail.empty()) j["detail"] = r.detail;
    out += j.dump();
    out += '\n';
  }
  return out;
}

bool Transcript::contains(const std::string& step, const std::string& verdict) const {
  for (const auto& r : records_)
    if (r.step == step && (verdict.empty() || r.verdict == verdict)) return true;
  return false;
}

std::size_t extraction_trials(const AlgoConfig& cfg) {
  if (cfg.extract_m) return cfg.extract_m;
  return std::size_t(std::ceil(std::log(cfg.epsilon) / std::log(23.0 / 24.0)));
}

std::size_t max_draws(const BlackBox& bb, const AlgoConfig& cfg) {
  if (cfg.max_draws) return *cfg.max_draws;
  if (const auto& h = bb.hint()) {
    // Rank-based bound: O(n) draws suffice once the Lie rank is known.
    std::size_t n = matrix_dim(*h);
    return std::max<std::size_t>(64, 2 * cfg.draw_factor * n * h->k * ceil_log2(double(h->p)));
  }
  return cfg.draw_factor * bb.backend().encoding_bits();
}

std::size_t max_restarts(const BlackBox& bb, const AlgoConfig& cfg) {
  if (cfg.max_restarts) return *cfg.max_restarts;
  if (const auto& h = bb.hint()) {
    const double rho = 0.25 * (1.0 - 1.0 / (2.0 * double(h->n)));
    return std::size_t(std::ceil(std::log(1.0 / cfg.epsilon) / std::log(1.0 / (1.0 - rho))));
  }
  return 32;
}

Natural field_size(const BlackBox& bb) {
  if (!bb.q_hint()) throw Error(Errc::BadSpec, "field size q must be supplied with the black box");
  return *bb.q_hint();
}

CommutingProduct commuting_product(const Subgroup& x, const Exponent& e, std::uint32_t p, Run run,
                                   const InvolutionHook& hook) {
  (void)p;
  const AlgoConfig& cfg = run.cfg;
  const BlackBox& bb = x.bb();
  Subgroup g = drop_identities(x);
  unsigned depth = 0;
  const std::size_t draws = max_draws(bb, cfg);
  for (unsigned level = 0;; ++level) {
    Run lr = sub(run, "level", level);
    PrsState prs = make_sampler(g, cfg.mc.sampling, lr.rng);
    std::optional<Element> inv;
    std::uint64_t even = 0, central = 0, t = 0;
    for (; t < draws && !inv; ++t) {
      auto i = make_involution(bb, prs.next(), e);
      if (!i) continue;
      ++even;
      if (centralizes(g, *i)) {
        ++central;
        continue;
      }
      inv = std::move(i);
    }
    TranscriptRecord r = rec("commuting_product", "involution", "", "level " + std::to_string(level));
    r.samples = {{"draws", t}, {"even", even}, {"central", central}};
    if (!inv) {
      if (even == 0) {
        r.verdict = "stalled";
        run.note(r);
        throw Error(Errc::Stalled, "no element of even order found");
      }
      r.verdict = "all central";
      run.note(r);
      return {g, depth};
    }
    const std::uint64_t id = run.involution_id();
    r.involution = id;
    r.verdict = "noncentral";
    run.note(r);
    if (hook) hook(g, *inv, id);
    Subgroup c = centralizer_gens(g, *inv, cfg.centralizer_count, cfg.mc.sampling, lr.rng);
    Subgroup c2 = derived2(c, cfg, lr.rng);
    TranscriptRecord rc = rec("commuting_product", "centralizer", "", "level " + std::to_string(level));
    rc.involution = id;
    rc.samples = {{"generators", c.gens.size()}, {"second_derived", c2.gens.size()}};
    if (is_probably_trivial(c2)) {
      Subgroup n = normal_closure(Subgroup{x.parent, {*inv}}, g, cfg.mc, lr.rng);
      Subgroup d = derived_subgroup(n, cfg.mc, lr.rng);
      rc.verdict = "second derived trivial";
      run.note(rc);
      return {d, depth};
    }
    rc.verdict = "recurse";
    run.note(rc);
    g = std::move(c2);
    ++depth;
  }
}

Extraction extract_sl2(const Subgroup& l, const Exponent& e, Run run) {
  const AlgoConfig& cfg = run.cfg;
  const BlackBox& bb = l.bb();
  const std::size_t m = extraction_trials(cfg);
  const std::size_t budget = 4 * m + 100;
  Subgroup cur = drop_identities(l);
  std::size_t accepted = 0, shrinks = 0, iter = 0;
  std::optional<Element> last;
  while (accepted < m) {
    if (iter >= budget) {
      run.note(rec("extract_sl2", "budget", "stalled"));
      throw Error(Errc::Stalled, "component extraction did not settle");
    }
    Run tr = sub(run, "trial", iter++);
    auto t = make_pseudo_involution(cur, e, cfg.pseudo_trials, cfg.mc.sampling, tr.rng);
    if (!t) {
      if (accepted == 0 && shrinks == 0) {
        run.note(rec("extract_sl2", "pseudo-involution", "all PSL2"));
        return {true, Subgroup{l.parent, {}}, std::nullopt};
      }
      continue;
    }
    Subgroup z{l.parent, {}};
    PrsState prs = make_sampler(cur, cfg.mc.sampling, tr.rng);
    for (std::size_t s = 0; s < cfg.zeta_samples; ++s) {
      ZetaResult r = zeta(bb, *t, prs.next(), e);
      if (r.kind == ZetaKind::Zeta1 && !bb.is_identity(r.value)) z.gens.push_back(std::move(r.value));
    }
    Subgroup d2 = derived2(z, cfg, tr.rng);
    if (!is_probably_trivial(d2)) {
      Subgroup n = normal_closure(Subgroup{l.parent, {*t}}, cur, cfg.mc, tr.rng);
      cur = derived_subgroup(n, cfg.mc, tr.rng);
      accepted = 0;
      if (++shrinks > cfg.max_shrinks) {
        run.note(rec("extract_sl2", "shrink", "stalled", "shrink limit"));
        throw Error(Errc::Stalled, "component extraction keeps shrinking");
      }
      TranscriptRecord r = rec("extract_sl2", "shrink", "fewer components");
      r.samples = {{"trial", iter - 1}, {"zeta1", z.gens.size()}};
      run.note(r);
      continue;
    }
    ++accepted;
    last = std::move(t);
  }
  TranscriptRecord r = rec("extract_sl2", "accept", "single component");
  r.samples = {{"trials", iter}, {"accepted", accepted}, {"shrinks", shrinks}};
  run.note(r);
  return {false, cur, last};
}

Components extract_all_components(const Subgroup& l, const Exponent& e, Run run) {
  Components out;
  Subgroup cur = drop_identities(l);
  for (std::uint64_t idx = 0; idx < 64 && !is_probably_trivial(cur); ++idx) {
    Run cr = sub(run, "component", idx);
    Extraction ex = extract_sl2(cur, e, cr);
    if (ex.all_psl2) {
      out.all_psl2 = true;
      break;
    }
    out.list.push_back(ex.component);
    cur = residual(cur, *ex.pseudo, e, sub(cr, "residual"));
  }
  TranscriptRecord r = rec("extract_all_components", "done", out.all_psl2 ? "PSL2 remainder" : "complete");
  r.samples = {{"components", out.list.size()}};
  run.note(r);
  return out;
}

LongRootVerdict is_long_root(const Subgroup& k, const Subgroup& g, const Natural& q, const Exponent& e, Run run) {
  const AlgoConfig& cfg = run.cfg;
  const BlackBox& bb = k.bb();
  LongRootVerdict v;
  v.K = drop_identities(k);
  if (v.K.gens.empty()) {
    v.reason = "trivial candidate";
    run.note(rec("is_long_root", "candidate", "not long root", v.reason));
    return v;
  }
  Run zr = sub(run, "central");
  PrsState prs = make_sampler(v.K, cfg.mc.sampling, zr.rng);
  std::optional<Element> z;
  std::uint64_t draws = 0;
  for (; draws < cfg.central_draws && !z; ++draws) {
    auto i = make_involution(bb, prs.next(), e);
    if (i && centralizes(v.K, *i)) z = std::move(i);
  }
  if (!z) {
    v.reason = errc_name(Errc::NoCentralInvolution);
    TranscriptRecord r = rec("is_long_root", "central involution", "not long root", v.reason);
    r.samples = {{"draws", draws}};
    run.note(r);
    return v;
  }
  v.central_involution = z;
  const std::uint64_t id = run.involution_id();
  Run cr = sub(run, "centralizer");
  Subgroup c0 = centralizer_gens(g, *z, cfg.centralizer_count, cfg.mc.sampling, cr.rng);
  Subgroup c = derived2(c0, cfg, cr.rng);
  if (is_probably_trivial(c)) c = c0;
  Element conj = c.gens.empty() ? bb.identity() : make_sampler(c, cfg.mc.sampling, cr.rng).next();
  Subgroup n{k.parent, v.K.gens};
  for (const auto& x : v.K.gens) n.gens.push_back(bb.conj(x, conj));
  const Natural bound = sl2_order(q);
  const bool ok = orders_divide(n, bound, cfg.n_tests, sub(run, "order tests"));
  v.kind = ok ? VerdictKind::LongRoot : VerdictKind::NotLongRoot;
  v.reason = ok ? "orders divide q(q^2-1)" : "element of <K, K^g> violates q(q^2-1)";
  TranscriptRecord r = rec("is_long_root", "order test", ok ? "long root" : "not long root", v.reason);
  r.involution = id;
  r.samples = {{"n_tests", cfg.n_tests}, {"centralizer_gens", c.gens.size()}};
  run.note(r);
  return v;
}

ExceptionalKind g2_or_3d4(const Subgroup& g, const Natural& q, Run run) {
  const BlackBox& bb = g.bb();
  const Natural m_g2 = order_g2(q), m_3d4 = order_3d4(q);
  PrsState prs = make_sampler(g, run.cfg.mc.sampling, run.rng);
  bool beyond_g2 = false;
  for (std::size_t s = 0; s < run.cfg.discrimination_samples; ++s) {
    Element x = prs.next();
    if (!order_divides(bb, x, m_3d4)) {
      run.note(rec("g2_3d4_long_root", "discriminate", "wrong promise"));
      throw Error(Errc::WrongGroupPromise, "element order incompatible with G2 and 3D4");
    }
    if (!order_divides(bb, x, m_g2)) beyond_g2 = true;
  }
  run.note(rec("g2_3d4_long_root", "discriminate", beyond_g2 ? "3D4" : "G2"));
  return beyond_g2 ? ExceptionalKind::ThreeD4 : ExceptionalKind::G2;
}

std::size_t centralizer_component_count(const Subgroup& g, const Exponent& e, Run run) {
  std::size_t best = 0;
  for (std::size_t t = 0; t < run.cfg.component_count_trials; ++t) {
    Run tr = sub(run, "count", t);
    auto i = noncentral_involution(g, e, max_draws(g.bb(), run.cfg), tr);
    if (!i) continue;
    Subgroup c = centralizer_gens(g, *i, run.cfg.centralizer_count, run.cfg.mc.sampling, tr.rng);
    Subgroup c2 = derived2(c, run.cfg, tr.rng);
    Components comps = extract_all_components(c2, e, sub(tr, "extract"));
    best = std::max(best, comps.list.size());
  }
  TranscriptRecord r = rec("centralizer_component_count", "count", std::to_string(best));
  r.samples = {{"trials", run.cfg.component_count_trials}};
  run.note(r);
  return best;
}

Subgroup g2_3d4_long_root(const Subgroup& g, const Natural& q, const Exponent& e, Run run) {
  const AlgoConfig& cfg = run.cfg;
  const BlackBox& bb = g.bb();
  const ExceptionalKind kind = g2_or_3d4(g, q, sub(run, "discriminate"));
  const std::size_t draws = max_draws(bb, cfg);
  if (kind == ExceptionalKind::ThreeD4) {
    Run r = sub(run, "3D4");
    auto i = noncentral_involution(g, e, draws, r);
    if (!i) throw Error(Errc::Stalled, "no involution found");
    Subgroup c = centralizer_gens(g, *i, cfg.centralizer_count, cfg.mc.sampling, r.rng);
    // Powers by q(q^2-1) kill the SL2(q) factor and leave the SL2(q^3) factor.
    Subgroup l{g.parent, {}};
    for (const auto& x : c.gens) {
      Element y = bb_pow(bb, x, sl2_order(q));
      if (!bb.is_identity(y)) l.gens.push_back(std::move(y));
    }
    const Natural q3 = q * q * q;
    PrsState prs = make_sampler(c, cfg.mc.sampling, r.rng);
    for (std::size_t t = 0; t < 4 * draws; ++t) {
      Element x = prs.next();
      std::optional<Element> h;
      if (order_divides(bb, x, (q - 1) * (q3 + 1)))
        h = bb_pow(bb, x, Natural(q3 + 1));
      else if (order_divides(bb, x, (q + 1) * (q3 - 1)))
        h = bb_pow(bb, x, Natural(q3 - 1));
      if (!h || bb.is_identity(bb.mult(*h, *h))) continue;
      Subgroup n = normal_closure(Subgroup{g.parent, {*h}}, c, cfg.mc, r.rng);
      TranscriptRecord tr = rec("g2_3d4_long_root", "3D4 component", "found");
      tr.samples = {{"draws", t + 1}, {"sl2_q3_gens", l.gens.size()}};
      run.note(tr);
      return derived_subgroup(n, cfg.mc, r.rng);
    }
    throw Error(Errc::Stalled, "no element isolating the SL2(q) factor");
  }

  for (std::uint64_t attempt = 0; attempt < 4; ++attempt) {
    Run r = sub(run, "G2", attempt);
    auto i = noncentral_involution(g, e, draws, sub(r, "i"));
    if (!i) continue;
    Subgroup ci = centralizer_gens(g, *i, cfg.centralizer_count, cfg.mc.sampling, r.rng);
    Components li = extract_all_components(derived2(ci, cfg, r.rng), e, sub(r, "Li"));
    if (li.list.size() != 2) continue;
    // j: an involution of C(i) centralizing neither component.
    std::optional<Element> j;
    PrsState prs = make_sampler(ci, cfg.mc.sampling, r.rng);
    for (std::size_t t = 0; t < draws && !j; ++t) {
      auto cand = make_involution(bb, prs.next(), e);
      if (!cand || bb.equal(*cand, *i)) continue;
      if (!centralizes(li.list[0], *cand) && !centralizes(li.list[1], *cand)) j = cand;
    }
    if (!j) continue;
    Subgroup cj = centralizer_gens(g, *j, cfg.centralizer_count, cfg.mc.sampling, r.rng);
    Components kj = extract_all_components(derived2(cj, cfg, r.rng), e, sub(r, "Kj"));
    if (kj.list.size() != 2) continue;
    for (std::size_t a = 0; a < 2; ++a)
      for (std::size_t b = 0; b < 2; ++b) {
        Subgroup h{g.parent, li.list[a].gens};
        h.gens.insert(h.gens.end(), kj.list[b].gens.begin(), kj.list[b].gens.end());
        if (centralizer_component_count(h, e, sub(r, "pair", 2 * a + b)) == 1) {
          run.note(rec("g2_3d4_long_root", "G2 pair", "SL3 type", "pair " + std::to_string(a) + "," + std::to_string(b)));
          return li.list[a];
        }
      }
  }
  run.note(rec("g2_3d4_long_root", "G2 pair", "stalled"));
  throw Error(Errc::Stalled, "no SL3-type pair of components");
}

Discrimination discriminate_depth_one(const Subgroup& g, const Natural& q, const Exponent& e, Run run) {
  const BlackBox& bb = g.bb();
  const std::size_t s = run.cfg.discrimination_samples;
  auto any = [&](const char* label, const auto& pred) {
    Run r = sub(run, label);
    PrsState prs = make_sampler(g, run.cfg.mc.sampling, r.rng);
    for (std::size_t t = 0; t < s; ++t)
      if (pred(prs.next())) return true;
    return false;
  };
  const Natural q2 = q * q, q4 = q2 * q2, q6 = q4 * q2, q8 = q4 * q4;
  if (any("q4", [&](const Element& x) { return order_divides(bb, x, q4 - 1) && !order_divides(bb, x, q6 - 1); })) {
    run.note(rec("main_long_root", "ladder", "classical", "order divides q^4-1 but not q^6-1"));
    return {DepthOneClass::Classical, q};
  }
  if (any("3d4", [&](const Element& x) {
        return order_divides(bb, x, q6 * (q8 + q4 + 1)) && !order_divides(bb, x, q6 * (q6 - 1));
      })) {
    run.note(rec("main_long_root", "ladder", "3D4"));
    return {DepthOneClass::ThreeD4, q};
  }
  const std::uint32_t p = bb.p();
  unsigned k = 0;
  for (Natural t = q; t > 1 && t % p == 0; t /= p) ++k;
  if (k % 3 == 0 && k > 0) {
    const Natural q1 = nat_pow(Natural(p), k / 3);
    const Natural m = order_3d4(q1);
    if (!any("3d4-sub", [&](const Element& x) { return !order_divides(bb, x, m); })) {
      run.note(rec("main_long_root", "ladder", "3D4 over subfield"));
      return {DepthOneClass::ThreeD4, q1};
    }
  }
  const std::size_t comps = centralizer_component_count(g, e, sub(run, "components"));
  const DepthOneClass kind = comps == 2 ? DepthOneClass::G2 : DepthOneClass::Classical;
  run.note(rec("main_long_root", "ladder", kind == DepthOneClass::G2 ? "G2" : "classical",
               std::to_string(comps) + " centralizer components"));
  return {kind, q};
}

LongRootVerdict main_long_root(const Subgroup& g, std::uint32_t p, const Exponent& e, Run run, const Hooks& hooks) {
  const AlgoConfig& cfg = run.cfg;
  const BlackBox& bb = g.bb();
  const Natural q = field_size(bb);
  const std::size_t restarts = max_restarts(bb, cfg);
  bool ladder = true;
  for (std::uint64_t r = 0; r <= restarts; ++r) {
    Run rr = sub(run, "restart", r);
    TranscriptRecord start = rec("main_long_root", "restart", std::to_string(r));
    run.note(start);
    std::optional<CommutingProduct> cp;
    for (std::size_t aug = 0; aug <= cfg.augmentation_rounds && !cp; ++aug) {
      AlgoConfig more = cfg;
      more.centralizer_count = cfg.centralizer_count << aug;
      Run ar{more, rr.rng.child("augment", aug), run.log};
      try {
        CommutingProduct c = commuting_product(g, e, p, ar, hooks.on_involution);
        if (!is_probably_trivial(c.L)) cp = std::move(c);
      } catch (const Error& err) {
        if (err.code() != Errc::Stalled) throw;
      }
      if (!cp) run.note(rec("main_long_root", "augment", "retry", "centralizer count " + std::to_string(more.centralizer_count * 2)));
    }
    if (!cp) continue;
    const bool depth_one = cp->depth == 1;
    if (hooks.on_product) hooks.on_product(cp->L);

    auto test = [&](const Subgroup& k, std::uint64_t idx) -> std::optional<LongRootVerdict> {
      if (hooks.on_component) hooks.on_component(k);
      LongRootVerdict v = is_long_root(k, g, q, e, sub(rr, "long root", idx));
      if (v.kind != VerdictKind::LongRoot) return std::nullopt;
      if (depth_one && ladder) {
        Discrimination d = discriminate_depth_one(g, q, e, sub(rr, "ladder"));
        if (d.kind != DepthOneClass::Classical) {
          LongRootVerdict x;
          x.kind = VerdictKind::LongRoot;
          x.K = g2_3d4_long_root(g, d.q, e, sub(rr, "exceptional"));
          x.reason = "exceptional routine";
          return x;
        }
      }
      return v;
    };

    try {
      Subgroup cur = cp->L;
      for (std::uint64_t idx = 0; idx < 64 && !is_probably_trivial(cur); ++idx) {
        Run cr = sub(rr, "component", idx);
        Extraction ex = extract_sl2(cur, e, cr);
        if (ex.all_psl2) break;
        if (auto v = test(ex.component, idx)) {
          run.note(rec("main_long_root", "result", "long root", "depth " + std::to_string(cp->depth)));
          return *v;
        }
        cur = residual(cur, *ex.pseudo, e, sub(cr, "residual"));
      }
    } catch (const Error& err) {
      if (err.code() != Errc::Stalled) throw;
      run.note(rec("main_long_root", "extraction", "stalled"));
    }
    ladder = false;  // later restarts skip the depth-one discrimination
  }
  run.note(rec("main_long_root", "result", "stalled"));
  throw Error(Errc::Stalled, "no long root subgroup after all restarts");
}

Split split_two_components(const Subgroup& c, const Natural& q, const std::optional<GroupSpec>& family_hint,
                           const Exponent& e, Run run) {
  const AlgoConfig& cfg = run.cfg;
  const BlackBox& bb = c.bb();
  Subgroup cc = drop_identities(c);
  if (cc.gens.empty()) throw Error(Errc::Stalled, "empty centralizer");
  const Natural order = sl2_order(q);
  // A scheme keeps the part of a random element whose order involves the
  // primes of q-1 (or q+1); the other component must show only central parts there.
  const std::uint64_t qm = (q - 1).convert_to<std::uint64_t>(), qp = (q + 1).convert_to<std::uint64_t>();
  std::vector<std::pair<std::string, std::uint64_t>> schemes;
  bool plus_first = false;
  if (family_hint && (family_hint->family == Family::SL || family_hint->family == Family::GL ||
                      is_p_core_construction(family_hint->family)))
    plus_first = family_hint->n % 2 == 0;
  if (plus_first)
    schemes = {{"q+1", qp}, {"q-1", qm}};
  else
    schemes = {{"q-1", qm}, {"q+1", qp}};
  if (!family_hint) schemes = {{"q-1", qm}, {"q+1", qp}};

  Run lr = sub(run, "L1");
  Subgroup l1{c.parent, {}};
  {
    PrsState prs = make_sampler(cc, cfg.mc.sampling, lr.rng);
    for (std::size_t t = 0; t < cfg.centralizer_count / 2 + 2; ++t) {
      Element y = bb_pow(bb, prs.next(), order);
      if (!bb.is_identity(y)) l1.gens.push_back(std::move(y));
    }
  }
  const std::size_t attempts = 4 * cfg.centralizer_count;
  for (std::size_t si = 0; si < schemes.size(); ++si) {
    const auto& [name, modulus] = schemes[si];
    const Natural power = strip_primes_of(e.value, modulus);
    Run sr = sub(run, "scheme", si);
    PrsState prs = make_sampler(cc, cfg.mc.sampling, sr.rng);
    for (std::size_t t = 0; t < attempts; ++t) {
      Element h = bb_pow(bb, prs.next(), power);
      if (bb.is_identity(h) || centralizes(cc, h)) continue;
      Subgroup n = normal_closure(Subgroup{c.parent, {h}}, cc, cfg.mc, sr.rng);
      Subgroup k1 = derived_subgroup(n, cfg.mc, sr.rng);
      if (is_probably_trivial(k1)) continue;
      if (!orders_divide(k1, order, 16, sub(sr, "orders", t))) continue;
      bool commute = true;
      for (const auto& a : k1.gens)
        for (const auto& b : l1.gens)
          if (commute && !bb.commute(a, b)) commute = false;
      if (!commute) continue;
      TranscriptRecord r = rec("split_two_components", "split", "found", "scheme " + name);
      r.samples = {{"draws", t + 1}, {"K1_gens", k1.gens.size()}, {"L1_gens", l1.gens.size()}};
      run.note(r);
      return {k1, l1};
    }
  }
  run.note(rec("split_two_components", "split", "stalled"));
  throw Error(Errc::Stalled, "could not split the centralizer");
}

bool is_unisingular(const GroupSpec& spec) {
  if (spec.k != 1) return false;
  const std::uint32_t p = spec.p;
  const unsigned n = spec.n;
  switch (spec.family) {
    case Family::SL:
    case Family::AffineSL:
    case Family::BlockSL: return (p - 1) % n == 0;
    case Family::SU: return (p + 1) % n == 0;
    case Family::Sp:
    case Family::OmegaOdd: return true;
    case Family::OmegaPlus:
    case Family::OmegaMinus: {
      const unsigned half = n / 2;
      const bool plus = (std::uint64_t(half) * ((p - 1) / 2)) % 2 == 0;
      return plus == (spec.family == Family::OmegaPlus);
    }
    case Family::GL: return false;
  }
  return false;
}

namespace {

// Hint for the L1 factor of a classical involution centralizer.
std::optional<GroupSpec> shrink_hint(const std::optional<GroupSpec>& h) {
  if (!h) return h;
  GroupSpec s = *h;
  const unsigned drop = form_kind(s.family) == FormKind::Symmetric ? 4 : 2;
  if (s.family == Family::AffineSL || s.family == Family::BlockSL) s.family = Family::SL;
  if (s.n <= drop) return std::nullopt;
  s.n -= drop;
  s.form.reset();
  return s;
}

}  // namespace

PcoreVerdict pcore(const Subgroup& x, std::uint32_t p, const Exponent& e, Run run) {
  const AlgoConfig& cfg = run.cfg;
  const BlackBox& bb = x.bb();
  const Natural q = field_size(bb);
  const Natural pp = primes_part(e.value, p);
  const Natural coprime = strip_primes_of(e.value, p);
  const Subgroup top = drop_identities(x);

  // Sound acceptance: g is a p-element whose normal closure in X is a p-group.
  std::uint64_t checks = 0;
  auto accept = [&](const Element& g, Run r) -> bool {
    if (bb.is_identity(g) || !order_divides(bb, g, pp)) return false;
    ++checks;
    Element h = make_sampler(top, cfg.mc.sampling, r.rng).next();
    if (!is_p_group(Subgroup{x.parent, {g, bb.conj(g, h)}}, p, e, cfg.mc, r.rng)) return false;
    Subgroup n = normal_closure(Subgroup{x.parent, {g}}, top, cfg.mc, r.rng);
    return is_p_group(n, p, e, cfg.mc, r.rng);
  };
  auto search = [&](const Subgroup& h, const std::string& where, Run r) {
    if (is_probably_trivial(h)) return;
    PrsState prs = make_sampler(h, cfg.mc.sampling, r.rng);
    std::uint64_t singular = 0;
    for (std::size_t s = 0; s < cfg.pcore_search; ++s) {
      Element g = bb_pow(bb, prs.next(), coprime);
      if (bb.is_identity(g)) continue;
      ++singular;
      if (accept(g, sub(r, "accept", s))) throw PcoreFound{g, where};
    }
    TranscriptRecord t = rec("pcore", "random search", "none", where);
    t.samples = {{"draws", cfg.pcore_search}, {"p_singular", singular}};
    run.note(t);
  };

  const std::optional<GroupSpec> hint = bb.hint();
  const bool unisingular = hint && is_unisingular(*hint);
  if (hint) run.note(rec("pcore", "unisingular table", unisingular ? "unisingular" : "not unisingular"));
  const std::size_t rounds =
      cfg.pcore_rounds ? *cfg.pcore_rounds : std::size_t(std::ceil(std::log(1.0 / cfg.epsilon) / std::log(2.0)));

  try {
    for (std::uint64_t round = 0; round < rounds; ++round) {
      Run rr = sub(run, "round", round);
      if (cfg.pcore_random_search) search(top, "X", sub(rr, "step1"));
      if (unisingular && cfg.unisingular_fast_path) {
        run.note(rec("pcore", "fast path", "skip centralizers"));
        continue;
      }
      Subgroup cur = top;
      std::optional<GroupSpec> level_hint = hint;
      for (std::uint64_t level = 0; level < 16 && !is_probably_trivial(cur); ++level) {
        Run lr = sub(rr, "level", level);
        std::uint64_t probes = 0;
        Hooks hooks;
        hooks.on_involution = [&](const Subgroup& g, const Element& i, std::uint64_t id) {
          Run hr = sub(lr, "inversion", id);
          PrsState prs = make_sampler(g, cfg.mc.sampling, hr.rng);
          for (std::size_t c = 0; c < cfg.pcore_commutators; ++c) {
            ++probes;
            Element k = bb.comm(i, prs.next());
            if (accept(k, sub(hr, "accept", c))) throw PcoreFound{k, "commutator [i,x]"};
          }
        };
        std::uint64_t comp = 0;
        hooks.on_component = [&](const Subgroup& k) { search(k, "component K", sub(lr, "K", comp++)); };
        hooks.on_product = [&](const Subgroup& l) { search(l, "commuting product", sub(lr, "L", comp++)); };
        LongRootVerdict v;
        try {
          v = main_long_root(cur, p, e, sub(lr, "long root"), hooks);
        } catch (const Error& err) {
          if (err.code() != Errc::Stalled) throw;
          run.note(rec("pcore", "long root", "stalled", "level " + std::to_string(level)));
          break;
        }
        if (!v.central_involution) break;
        Run cr = sub(lr, "C");
        Subgroup c0 = centralizer_gens(cur, *v.central_involution, cfg.centralizer_count, cfg.mc.sampling, cr.rng);
        search(c0, "C", sub(cr, "s0"));
        Subgroup c1 = derived_subgroup(c0, cfg.mc, cr.rng);
        search(c1, "C'", sub(cr, "s1"));
        Subgroup c2 = derived_subgroup(c1, cfg.mc, cr.rng);
        search(c2, "C''", sub(cr, "s2"));
        Split s;
        try {
          s = split_two_components(c2, q, level_hint, e, sub(lr, "split"));
        } catch (const Error& err) {
          if (err.code() != Errc::Stalled) throw;
          run.note(rec("pcore", "split", "stalled", "level " + std::to_string(level)));
          break;
        }
        search(s.K1, "K1", sub(lr, "K1"));
        TranscriptRecord t = rec("pcore", "level", "recurse on L1", "level " + std::to_string(level));
        t.samples = {{"inversion_probes", probes}, {"L1_gens", s.L1.gens.size()}};
        run.note(t);
        cur = drop_identities(s.L1);
        level_hint = shrink_hint(level_hint);
      }
    }
  } catch (const PcoreFound& f) {
    TranscriptRecord t = rec("pcore", "witness", "nontrivial p-core", f.where);
    t.samples = {{"candidate_checks", checks}};
    run.note(t);
    return {PcoreKind::NontrivialPcore, f.witness, f.where};
  }
  TranscriptRecord t = rec("pcore", "result", "possibly trivial");
  t.samples = {{"rounds", rounds}, {"candidate_checks", checks}};
  run.note(t);
  return {PcoreKind::PossiblyTrivial, std::nullopt, {}};
}

}  // namespace bbroot
