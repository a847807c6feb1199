#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bbroot/algorithms.hpp"

namespace bbroot::cli {

enum Exit : int { Positive = 0, VerificationFailed = 1, Negative = 2, StalledRun = 3, BadInput = 64 };

// Group descriptor: a GroupSpec, optionally as a direct product of `copies` blocks.
struct Descriptor {
  GroupSpec spec;
  unsigned copies = 1;
  nlohmann::json source;
};

Descriptor parse_descriptor(const nlohmann::json& j);  // throws ParseError / BadSpec
Descriptor load_descriptor(const std::string& arg);    // inline JSON or a file path
BlackBoxPtr build(const Descriptor& d);

struct RunConfig {
  std::uint64_t seed = 1;
  AlgoConfig algo;
  bool verify = false;
  std::size_t samples = 1000;  // stats trials
  std::size_t runs = 3;        // bench repetitions
  std::string experiment = "even-order";
  std::string subgroup;        // verify input
  std::string out;
};

void validate(const RunConfig& rc);  // throws BadSpec

struct Outcome {
  int exit = Positive;
  nlohmann::json report;
  std::string summary;
};

Outcome find_long_root(const Descriptor& d, const RunConfig& rc);
Outcome check_pcore(const Descriptor& d, const RunConfig& rc);
Outcome verify(const Descriptor& d, const RunConfig& rc);
Outcome stats(const Descriptor& d, const RunConfig& rc);
Outcome bench(const std::vector<Descriptor>& ds, const RunConfig& rc);

nlohmann::json matrices_json(const Subgroup& h);
nlohmann::json transcript_json(const Transcript& t);

// Full command line front end; returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bbroot::cli
