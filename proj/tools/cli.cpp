#include "cli.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>

#include "bbroot/oracle.hpp"
#include "stats.hpp"

namespace bbroot::cli {

namespace {

using json = nlohmann::json;

[[noreturn]] void parse_fail(const std::string& what) { throw Error(Errc::ParseError, what); }

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return char(std::tolower(c)); });
  return s;
}

template <class T>
T uint_field(const json& j, const char* key) {
  if (!j.at(key).is_number_unsigned()) parse_fail(std::string("field '") + key + "' must be a non-negative integer");
  return j.at(key).get<T>();
}

Matrix matrix_from_json(const json& rows, const Field& f) {
  if (!rows.is_array() || rows.empty()) parse_fail("matrix must be a non-empty array of rows");
  const std::size_t n = rows.size();
  Matrix m(f, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!rows[i].is_array() || rows[i].size() != n) parse_fail("matrix must be square");
    for (std::size_t j = 0; j < n; ++j) {
      if (!rows[i][j].is_number_integer()) parse_fail("matrix entries must be integers");
      const std::int64_t v = rows[i][j].get<std::int64_t>();
      if (v < 0 || std::uint64_t(v) >= f.q()) parse_fail("matrix entry out of range for the field");
      m.at(i, j) = Packed(v);
    }
  }
  return m;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.n(); ++i) {
    json r = json::array();
    for (std::size_t j = 0; j < m.n(); ++j) r.push_back(m.at(i, j));
    rows.push_back(r);
  }
  return rows;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string describe(const Descriptor& d) {
  std::ostringstream o;
  o << family_name(d.spec.family) << "(" << d.spec.n << ", " << to_string(d.spec.q()) << ")";
  if (d.copies > 1) o << "^" << d.copies;
  return o.str();
}

json verification_json(const oracle::VerificationReport& r) { return json::parse(r.to_json()); }

}  // namespace

Descriptor parse_descriptor(const json& j) {
  if (!j.is_object()) parse_fail("descriptor must be a JSON object");
  Descriptor d;
  d.source = j;
  for (const char* key : {"family", "n", "p"})
    if (!j.contains(key)) parse_fail(std::string("descriptor lacks '") + key + "'");
  if (!j["family"].is_string()) parse_fail("family must be a string");
  std::optional<Family> fam;
  for (Family f : {Family::SL, Family::SU, Family::Sp, Family::OmegaPlus, Family::OmegaMinus, Family::OmegaOdd,
                   Family::AffineSL, Family::BlockSL, Family::GL})
    if (lower(family_name(f)) == lower(j["family"].get<std::string>())) fam = f;
  if (!fam) throw Error(Errc::UnsupportedFamily, "unknown family '" + j["family"].get<std::string>() + "'");
  d.spec.family = *fam;
  d.spec.n = uint_field<unsigned>(j, "n");
  d.spec.p = uint_field<std::uint32_t>(j, "p");
  d.spec.k = j.contains("k") ? uint_field<unsigned>(j, "k") : 1;
  if (j.contains("copies")) d.copies = uint_field<unsigned>(j, "copies");
  if (d.copies < 1) parse_fail("copies must be at least 1");
  if (j.contains("seed")) d.spec.seed = uint_field<std::uint64_t>(j, "seed");
  if (j.contains("modulus")) {
    if (!j["modulus"].is_array()) parse_fail("modulus must be an array of coefficients");
    std::vector<std::uint32_t> m;
    for (const auto& c : j["modulus"]) {
      if (!c.is_number_unsigned()) parse_fail("modulus coefficients must be non-negative integers");
      m.push_back(c.get<std::uint32_t>());
    }
    d.spec.modulus = m;
  }
  if (j.contains("exponent")) {
    const auto& e = j["exponent"];
    if (e.is_string())
      d.spec.exponent = parse_natural(e.get<std::string>());
    else if (e.is_number_unsigned())
      d.spec.exponent = Natural(e.get<std::uint64_t>());
    else
      parse_fail("exponent must be a decimal string or integer");
  }
  validate_spec(d.spec);
  if (j.contains("form")) {
    d.spec.form = matrix_from_json(j["form"], module_field(d.spec));
    validate_spec(d.spec);
  }
  return d;
}

Descriptor load_descriptor(const std::string& arg) {
  std::string text = arg;
  if (arg.empty() || arg.front() != '{') {
    std::ifstream in(arg);
    if (!in) parse_fail("cannot read descriptor file '" + arg + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) parse_fail("descriptor is not valid JSON");
  return parse_descriptor(j);
}

BlackBoxPtr build(const Descriptor& d) {
  if (d.copies == 1) return bb_from_spec(d.spec);
  const auto base = standard_generators(d.spec);
  const std::size_t b = matrix_dim(d.spec);
  std::vector<Matrix> gens;
  for (unsigned c = 0; c < d.copies; ++c)
    for (const auto& g : base) {
      Matrix m = Matrix::identity(base[0].field(), b * d.copies);
      for (std::size_t i = 0; i < b; ++i)
        for (std::size_t j = 0; j < b; ++j) m.at(c * b + i, c * b + j) = g.at(i, j);
      gens.push_back(m);
    }
  const Natural e = d.spec.exponent ? *d.spec.exponent
                                    : order_gl(unsigned(b * d.copies), Natural(base[0].field().q()));
  return bb_from_matrices(gens, e, d.spec.p, d.spec.q());
}

void validate(const RunConfig& rc) {
  const AlgoConfig& a = rc.algo;
  if (!(a.epsilon > 0 && a.epsilon < 1)) throw Error(Errc::BadSpec, "epsilon must lie in (0, 1)");
  if (a.centralizer_count < 1 || a.zeta_samples < 1 || a.n_tests < 1 || a.pseudo_trials < 1 || rc.samples < 1 ||
      rc.runs < 1 || a.mc.sampling.workers < 1 || a.mc.sampling.burn_in < 1)
    throw Error(Errc::BadSpec, "all counts must be at least 1");
  if (a.max_restarts && *a.max_restarts < 1) throw Error(Errc::BadSpec, "max restarts must be at least 1");
}

json matrices_json(const Subgroup& h) {
  json out = json::array();
  for (const auto& m : oracle::to_matrices(h)) out.push_back(matrix_to_json(m));
  return out;
}

json transcript_json(const Transcript& t) {
  json out = json::array();
  std::istringstream in(t.to_jsonl());
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) out.push_back(json::parse(line));
  return out;
}

Outcome find_long_root(const Descriptor& d, const RunConfig& rc) {
  Outcome o;
  auto bb = build(d);
  Transcript t;
  const AlgoConfig& cfg = rc.algo;
  const auto t0 = std::chrono::steady_clock::now();
  o.report = {{"command", "find-long-root"}, {"descriptor", d.source}, {"seed", rc.seed}};
  try {
    LongRootVerdict v = main_long_root(Subgroup::whole(bb), d.spec.p, bb->exponent(), Run{cfg, RngStream(rc.seed), &t});
    o.report["verdict"] = v.kind == VerdictKind::LongRoot ? "LongRoot" : "NotLongRoot";
    o.report["reason"] = v.reason;
    o.report["K"] = matrices_json(v.K);
    o.exit = v.kind == VerdictKind::LongRoot ? Positive : Negative;
    o.summary = describe(d) + ": " + o.report["verdict"].get<std::string>();
    if (rc.verify && v.kind == VerdictKind::LongRoot) {
      oracle::VerificationReport sl2 = oracle::verify_sl2(v.K, field_size(*bb), 64, rc.seed);
      json ver = {{"sl2", verification_json(sl2)}};
      bool pass = sl2.overall();
      if (!is_p_core_construction(d.spec.family) && d.copies == 1) {
        oracle::VerificationReport wb = oracle::verify_long_root_whitebox(v.K, d.spec);
        ver["long_root"] = verification_json(wb);
        pass = pass && wb.overall();
      }
      ver["pass"] = pass;
      o.report["verification"] = ver;
      o.summary += std::string("; white-box ") + (pass ? "pass" : "FAIL");
      if (!pass) o.exit = VerificationFailed;
    }
  } catch (const Error& e) {
    if (e.code() != Errc::Stalled) throw;
    o.report["verdict"] = "Stalled";
    o.report["reason"] = e.what();
    o.exit = StalledRun;
    o.summary = describe(d) + ": Stalled";
  }
  const double secs = seconds_since(t0);
  o.report["seconds"] = secs;
  o.report["multiplications"] = bb->mult_count();
  o.report["transcript"] = transcript_json(t);
  std::ostringstream s;
  s << std::fixed << std::setprecision(2) << " (" << secs << " s, " << bb->mult_count() << " multiplications)";
  o.summary += s.str();
  return o;
}

Outcome check_pcore(const Descriptor& d, const RunConfig& rc) {
  Outcome o;
  auto bb = build(d);
  Transcript t;
  const auto t0 = std::chrono::steady_clock::now();
  o.report = {{"command", "check-pcore"}, {"descriptor", d.source}, {"seed", rc.seed}};
  try {
    PcoreVerdict v = pcore(Subgroup::whole(bb), d.spec.p, bb->exponent(), Run{rc.algo, RngStream(rc.seed), &t});
    const bool found = v.kind == PcoreKind::NontrivialPcore;
    o.report["verdict"] = found ? "NontrivialPcore" : "PossiblyTrivial";
    o.exit = found ? Positive : Negative;
    o.summary = describe(d) + ": " + o.report["verdict"].get<std::string>();
    if (found) {
      o.report["found_at"] = v.found_at;
      o.report["witness"] = matrices_json(Subgroup{bb, {*v.witness}})[0];
      o.summary += " (witness from " + v.found_at + ")";
      if (rc.verify) {
        auto rep = oracle::verify_pcore_witness(*v.witness, Subgroup::whole(bb), d.spec.p, rc.seed);
        o.report["verification"] = verification_json(rep);
        o.summary += std::string("; white-box ") + (rep.overall() ? "pass" : "FAIL");
        if (!rep.overall()) o.exit = VerificationFailed;
      }
    }
  } catch (const Error& e) {
    if (e.code() != Errc::Stalled) throw;
    o.report["verdict"] = "Stalled";
    o.exit = StalledRun;
    o.summary = describe(d) + ": Stalled";
  }
  o.report["seconds"] = seconds_since(t0);
  o.report["multiplications"] = bb->mult_count();
  o.report["transcript"] = transcript_json(t);
  return o;
}

Outcome verify(const Descriptor& d, const RunConfig& rc) {
  if (rc.subgroup.empty()) throw Error(Errc::ParseError, "verify needs --subgroup");
  std::ifstream in(rc.subgroup);
  if (!in) throw Error(Errc::ParseError, "cannot read subgroup file '" + rc.subgroup + "'");
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) throw Error(Errc::ParseError, "subgroup file is not valid JSON");
  const json gens = j.is_object() && j.contains("K") ? j["K"] : j;
  if (!gens.is_array()) throw Error(Errc::ParseError, "subgroup must be an array of matrices");
  auto bb = build(d);
  const MatrixBackend* mb = matrix_backend(*bb);
  Subgroup k{bb, {}};
  for (const auto& m : gens) {
    Matrix x = matrix_from_json(m, mb->field());
    if (x.n() != mb->dim()) throw Error(Errc::ParseError, "subgroup matrix has the wrong size");
    k.gens.push_back(mb->encode(x));
  }
  Outcome o;
  o.report = {{"command", "verify"}, {"descriptor", d.source}};
  auto sl2 = oracle::verify_sl2(k, d.spec.q(), rc.samples, rc.seed);
  o.report["sl2"] = verification_json(sl2);
  bool pass = sl2.overall();
  if (!is_p_core_construction(d.spec.family) && d.copies == 1) {
    auto wb = oracle::verify_long_root_whitebox(k, d.spec);
    o.report["long_root"] = verification_json(wb);
    pass = pass && wb.overall();
  }
  o.report["pass"] = pass;
  o.exit = pass ? Positive : Negative;
  o.summary = describe(d) + ": white-box " + (pass ? "pass" : "FAIL");
  return o;
}

Outcome stats(const Descriptor& d, const RunConfig& rc) {
  auto bb = build(d);
  Subgroup g = Subgroup::whole(bb);
  RngStream rng = RngStream(rc.seed).child("stats");
  stats::Estimate est;
  Outcome o;
  o.report = {{"command", "stats"}, {"descriptor", d.source}, {"seed", rc.seed}, {"experiment", rc.experiment}};
  auto long_root = [&]() {
    LongRootVerdict v = main_long_root(g, d.spec.p, bb->exponent(), Run{rc.algo, RngStream(rc.seed), nullptr});
    if (!v.central_involution) throw Error(Errc::Stalled, "no classical involution");
    return v;
  };
  if (rc.experiment == "even-order") {
    est = stats::even_order(g, rc.samples, rng);
  } else if (rc.experiment == "odd-product") {
    est = stats::odd_products(g, *long_root().central_involution, rc.samples, rng);
  } else if (rc.experiment == "pair-generation") {
    if (d.copies != 1) throw Error(Errc::BadSpec, "pair-generation needs a single group");
    est = stats::pair_generation(g, long_root().K, d.spec, rc.samples, rng);
  } else if (rc.experiment == "pseudo-split") {
    if (d.copies != 2) throw Error(Errc::BadSpec, "pseudo-split needs a descriptor with copies = 2");
    est = stats::pseudo_split(g, matrix_dim(d.spec), rc.samples, rng);
  } else if (rc.experiment == "heart") {
    auto h = stats::heart_census(g, *long_root().central_involution, rc.samples, rng);
    o.report["heart"] = {{"zeta0", h.zeta0}, {"central", h.central}, {"nontrivial", h.nontrivial}, {"draws", h.draws}};
    o.summary = describe(d) + ": " + std::to_string(h.central) + " of " + std::to_string(h.zeta0) +
                " zeta0 values central, " + std::to_string(h.nontrivial) + " nontrivial";
    return o;
  } else {
    throw Error(Errc::ParseError, "unknown experiment '" + rc.experiment + "'");
  }
  o.report["estimate"] = est.to_json();
  auto [lo, hi] = est.wilson();
  std::ostringstream s;
  s << std::fixed << std::setprecision(4) << describe(d) << ": " << est.name << " " << est.hits << "/" << est.trials
    << " = " << est.rate() << " (95% CI " << lo << ".." << hi << "; floor " << est.floor << " - 3 sigma "
    << (est.meets() ? "met" : "NOT met") << ")";
  o.summary = s.str();
  o.exit = est.meets() ? Positive : Negative;
  return o;
}

Outcome bench(const std::vector<Descriptor>& ds, const RunConfig& rc) {
  Outcome o;
  o.report = {{"command", "bench"}, {"rows", json::array()}};
  std::ostringstream s;
  s << std::left << std::setw(22) << "group" << std::right << std::setw(6) << "runs" << std::setw(6) << "ok"
    << std::setw(12) << "mean s" << std::setw(16) << "mean mults" << "\n";
  for (const auto& d : ds) {
    double secs = 0, mults = 0;
    std::size_t ok = 0;
    for (std::size_t r = 0; r < rc.runs; ++r) {
      RunConfig one = rc;
      one.seed = rc.seed + r;
      one.verify = false;
      Outcome x = find_long_root(d, one);
      secs += x.report["seconds"].get<double>();
      mults += x.report["multiplications"].get<double>();
      if (x.exit == Positive) ++ok;
    }
    const double n = double(rc.runs);
    o.report["rows"].push_back({{"group", describe(d)}, {"descriptor", d.source}, {"runs", rc.runs}, {"ok", ok},
                                {"mean_seconds", secs / n}, {"mean_multiplications", mults / n}});
    s << std::left << std::setw(22) << describe(d) << std::right << std::setw(6) << rc.runs << std::setw(6) << ok
      << std::setw(12) << std::fixed << std::setprecision(3) << secs / n << std::setw(16) << std::setprecision(0)
      << mults / n << "\n";
  }
  o.summary = s.str();
  return o;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Long root SL2 construction and p-core recognition in black-box matrix groups"};
  app.require_subcommand(1);
  RunConfig rc;
  std::vector<std::string> descriptors;
  std::optional<std::uint64_t> seed;
  std::size_t workers = 1, slots = 0, burn_in = 100;
  std::optional<std::size_t> restarts, pseudo_m;

  auto common = [&](CLI::App* c) {
    c->add_option("--seed", seed, "random seed (default: descriptor seed or 1)");
    c->add_option("--epsilon", rc.algo.epsilon, "target error probability");
    c->add_option("--workers", workers, "parallel sampling workers");
    c->add_option("--slots", slots, "product replacement slots (0: automatic)");
    c->add_option("--burn-in", burn_in, "product replacement burn-in steps");
    c->add_flag("--verify", rc.verify, "white-box verification of the result");
    c->add_option("--samples-centralizer", rc.algo.centralizer_count, "zeta outputs per centralizer");
    c->add_option("--samples-zeta", rc.algo.zeta_samples, "zeta1 samples per extraction trial");
    c->add_option("--samples-pseudo", pseudo_m, "accepted pseudo-involution trials m");
    c->add_option("--samples-tests", rc.algo.n_tests, "order tests in the long root check");
    c->add_option("--samples", rc.samples, "trials for stats / verify");
    c->add_option("--max-restarts", restarts, "restart budget");
    c->add_option("--out", rc.out, "write the JSON report here");
  };
  auto* flr = app.add_subcommand("find-long-root", "construct a long root SL2(q)");
  auto* pc = app.add_subcommand("check-pcore", "recognize a nontrivial p-core");
  auto* ver = app.add_subcommand("verify", "white-box check of a candidate SL2");
  auto* st = app.add_subcommand("stats", "empirical proportion estimates");
  auto* be = app.add_subcommand("bench", "timing table over descriptors");
  for (auto* c : {flr, pc, ver, st}) {
    common(c);
    c->add_option("descriptor", descriptors, "group descriptor JSON or file")->required()->expected(1);
  }
  common(be);
  be->add_option("descriptors", descriptors, "group descriptors")->required();
  be->add_option("--runs", rc.runs, "runs per descriptor");
  ver->add_option("--subgroup", rc.subgroup, "JSON matrices, or a find-long-root report")->required();
  st->add_option("--experiment", rc.experiment, "even-order | odd-product | pair-generation | pseudo-split | heart");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return Positive;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return Positive;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return BadInput;
  }

  try {
    rc.algo.mc.sampling.workers = unsigned(workers);
    rc.algo.mc.sampling.slots = slots;
    rc.algo.mc.sampling.burn_in = burn_in;
    rc.algo.max_restarts = restarts;
    if (pseudo_m) rc.algo.extract_m = *pseudo_m;
    std::vector<Descriptor> ds;
    for (const auto& a : descriptors) ds.push_back(load_descriptor(a));
    rc.seed = seed ? *seed : ds.front().spec.seed.value_or(1);
    validate(rc);
    if (pseudo_m && *pseudo_m < 1) throw Error(Errc::BadSpec, "pseudo-involution trials must be at least 1");

    Outcome o;
    if (flr->parsed())
      o = find_long_root(ds.front(), rc);
    else if (pc->parsed())
      o = check_pcore(ds.front(), rc);
    else if (ver->parsed())
      o = verify(ds.front(), rc);
    else if (st->parsed())
      o = stats(ds.front(), rc);
    else
      o = bench(ds, rc);
    out << o.summary << (o.summary.empty() || o.summary.back() == '\n' ? "" : "\n");
    if (!rc.out.empty()) {
      std::ofstream f(rc.out);
      if (!f) throw Error(Errc::ParseError, "cannot write '" + rc.out + "'");
      f << o.report.dump(2) << "\n";
    }
    return o.exit;
  } catch (const Error& e) {
    switch (e.code()) {
      case Errc::Stalled:
        err << "stalled: " << e.what() << "\n";
        return StalledRun;
      case Errc::WrongGroupPromise:
        err << e.what() << "\n";
        return Negative;
      default:
        err << "bad input: " << e.what() << "\n";
        return BadInput;
    }
  } catch (const nlohmann::json::exception& e) {
    err << "bad input: " << e.what() << "\n";
    return BadInput;
  }
}

}  // namespace bbroot::cli
