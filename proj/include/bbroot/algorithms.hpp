#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bbroot/blackbox.hpp"
#include "bbroot/involution.hpp"
#include "bbroot/random.hpp"
#include "bbroot/subgrp.hpp"

namespace bbroot {

struct TranscriptRecord {
  std::string algorithm;
  std::string step;
  std::optional<std::uint64_t> involution;
  std::map<std::string, std::uint64_t> samples;
  std::string verdict;
  std::string detail;
};

class Transcript {
 public:
  void add(TranscriptRecord r) { records_.push_back(std::move(r)); }
  std::uint64_t new_involution_id() { return next_id_++; }
  const std::vector<TranscriptRecord>& records() const { return records_; }
  std::string to_jsonl() const;
  bool contains(const std::string& step, const std::string& verdict = "") const;

 private:
  std::vector<TranscriptRecord> records_;
  std::uint64_t next_id_ = 1;
};

struct AlgoConfig {
  MonteCarlo mc;
  double epsilon = 0.05;
  std::size_t centralizer_count = 50;
  std::size_t draw_factor = 4;            // c in max_draws
  std::optional<std::size_t> max_draws;   // overrides the derived bound
  std::size_t pseudo_trials = 200;
  std::size_t max_shrinks = 16;           // extraction stalls after this many shrink steps
  std::size_t extract_m = 0;              // 0: smallest m with (23/24)^m <= epsilon
  std::size_t zeta_samples = 24;
  std::size_t n_tests = 64;
  std::size_t central_draws = 200;
  std::size_t discrimination_samples = 300;
  std::size_t component_count_trials = 3;
  std::size_t augmentation_rounds = 3;
  std::optional<std::size_t> max_restarts;
  std::size_t pcore_search = 64;          // random elements per p-element search
  std::size_t pcore_commutators = 8;      // [i, x] probes per involution
  std::optional<std::size_t> pcore_rounds;
  bool unisingular_fast_path = false;
  bool pcore_random_search = true;        // random p-element search on X itself
};

std::size_t extraction_trials(const AlgoConfig& cfg);
std::size_t max_draws(const BlackBox& bb, const AlgoConfig& cfg);
std::size_t max_restarts(const BlackBox& bb, const AlgoConfig& cfg);

// Optional transcript sink threaded through the algorithms.
struct Run {
  const AlgoConfig& cfg;
  RngStream rng;
  Transcript* log = nullptr;

  void note(TranscriptRecord r) const {
    if (log) log->add(std::move(r));
  }
  std::uint64_t involution_id() const { return log ? log->new_involution_id() : 0; }
};

struct CommutingProduct {
  Subgroup L;
  unsigned depth = 0;
};

// Observers used by the p-core search; they may throw to abort a run.
using InvolutionHook = std::function<void(const Subgroup& g, const Element& i, std::uint64_t id)>;
using ComponentHook = std::function<void(const Subgroup& k)>;
struct Hooks {
  InvolutionHook on_involution;  // before each centralizer construction
  ComponentHook on_component;    // each extracted SL2-type candidate
  ComponentHook on_product;      // each terminal commuting product, before extraction
};

CommutingProduct commuting_product(const Subgroup& x, const Exponent& e, std::uint32_t p, Run run,
                                   const InvolutionHook& hook = {});

struct Extraction {
  bool all_psl2 = false;
  Subgroup component;
  std::optional<Element> pseudo;  // pseudo-involution inside the component
};

Extraction extract_sl2(const Subgroup& l, const Exponent& e, Run run);

struct Components {
  std::vector<Subgroup> list;
  bool all_psl2 = false;  // stopped on a product of PSL2-type groups
};

Components extract_all_components(const Subgroup& l, const Exponent& e, Run run);

enum class VerdictKind { LongRoot, NotLongRoot };

struct LongRootVerdict {
  VerdictKind kind = VerdictKind::NotLongRoot;
  Subgroup K;
  std::string reason;
  std::optional<Element> central_involution;
};

LongRootVerdict is_long_root(const Subgroup& k, const Subgroup& g, const Natural& q, const Exponent& e, Run run);

// Discrimination of depth-one inputs.
enum class DepthOneClass { Classical, G2, ThreeD4 };
struct Discrimination {
  DepthOneClass kind = DepthOneClass::Classical;
  Natural q;  // field of the exceptional group
};
Discrimination discriminate_depth_one(const Subgroup& g, const Natural& q, const Exponent& e, Run run);

enum class ExceptionalKind { G2, ThreeD4 };
ExceptionalKind g2_or_3d4(const Subgroup& g, const Natural& q, Run run);
Subgroup g2_3d4_long_root(const Subgroup& g, const Natural& q, const Exponent& e, Run run);

// Number of components of C_G(i)'' for random noncentral involutions i (max over trials).
std::size_t centralizer_component_count(const Subgroup& g, const Exponent& e, Run run);

LongRootVerdict main_long_root(const Subgroup& g, std::uint32_t p, const Exponent& e, Run run,
                               const Hooks& hooks = {});

struct Split {
  Subgroup K1;
  Subgroup L1;
};

Split split_two_components(const Subgroup& c, const Natural& q, const std::optional<GroupSpec>& family_hint,
                           const Exponent& e, Run run);

enum class PcoreKind { NontrivialPcore, PossiblyTrivial };

struct PcoreVerdict {
  PcoreKind kind = PcoreKind::PossiblyTrivial;
  std::optional<Element> witness;
  std::string found_at;
};

PcoreVerdict pcore(const Subgroup& x, std::uint32_t p, const Exponent& e, Run run);

// Unisingular simple groups of characteristic p, for the quotient described by spec.
bool is_unisingular(const GroupSpec& spec);

// Field size used by the algorithms: the black box hint.
Natural field_size(const BlackBox& bb);

}  // namespace bbroot
