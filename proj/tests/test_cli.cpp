#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cli.hpp"

using namespace bbroot;

namespace {

struct Call {
  int code;
  std::string out, err;
};

nlohmann::json read_report(const std::string& path) {
  std::ifstream f(path);
  auto j = nlohmann::json::parse(f);
  std::remove(path.c_str());
  return j;
}

Call call(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

const std::string sp4 = R"({"family":"Sp","n":4,"p":5})";

}  // namespace

TEST_CASE("find-long-root with verification succeeds and reports K") {
  auto c = call({"find-long-root", R"({"family":"Sp","n":6,"p":5})", "--verify", "--seed", "2", "--out", "cli_flr.json"});
  CHECK(c.code == cli::Positive);
  auto j = read_report("cli_flr.json");
  CHECK(j["verdict"] == "LongRoot");
  CHECK(j["verification"]["pass"] == true);
  CHECK(j["K"].size() >= 1);
}

TEST_CASE("verify round trip through a report file") {
  const std::string path = "cli_roundtrip_report.json";
  auto c = call({"find-long-root", sp4, "--out", path});
  REQUIRE(c.code == cli::Positive);
  auto v = call({"verify", sp4, "--subgroup", path});
  CHECK(v.code == cli::Positive);
  std::remove(path.c_str());
}

TEST_CASE("verify rejects a subgroup that is not a long root SL2") {
  // The whole of Sp4(5) is no SL2 subgroup.
  const std::string path = "cli_bad_subgroup.json";
  std::ofstream(path) << R"([[[1,1,0,0],[0,1,0,0],[0,0,1,4],[0,0,0,1]],[[0,1,0,0],[4,0,0,0],[0,0,0,1],[0,0,4,0]]])";
  auto v = call({"verify", sp4, "--subgroup", path});
  CHECK(v.code == cli::Negative);
  std::remove(path.c_str());
}

TEST_CASE("check-pcore exit codes") {
  CHECK(call({"check-pcore", R"({"family":"AffineSL","n":3,"p":5})", "--verify"}).code == cli::Positive);
  CHECK(call({"check-pcore", sp4}).code == cli::Negative);
}

TEST_CASE("malformed input exits with 64") {
  CHECK(call({"find-long-root", "{not json"}).code == cli::BadInput);
  CHECK(call({"find-long-root", R"({"family":"Nope","n":4,"p":5})"}).code == cli::BadInput);
  CHECK(call({"find-long-root", sp4, "--epsilon", "2"}).code == cli::BadInput);
  CHECK(call({"find-long-root", "/nonexistent/descriptor.json"}).code == cli::BadInput);
  CHECK(call({"no-such-command"}).code == cli::BadInput);
}

TEST_CASE("stats and bench produce JSON") {
  auto s = call({"stats", sp4, "--experiment", "even-order", "--samples", "200", "--out", "cli_stats.json"});
  CHECK(s.code == cli::Positive);
  auto j = read_report("cli_stats.json");
  CHECK(j.dump().find("rate") != std::string::npos);
  auto b = call({"bench", sp4, R"({"family":"SL","n":3,"p":5})", "--runs", "1"});
  CHECK(b.code == cli::Positive);
}

TEST_CASE("bench cost grows with rank and field degree") {
  auto b = call({"bench", R"({"family":"Sp","n":4,"p":5})", R"({"family":"Sp","n":6,"p":5})",
                 R"({"family":"Sp","n":8,"p":5})", R"({"family":"Sp","n":4,"p":5,"k":2})",
                 R"({"family":"Sp","n":4,"p":5,"k":3})", "--runs", "3", "--out", "cli_bench.json"});
  REQUIRE(b.code == cli::Positive);
  auto rows = read_report("cli_bench.json")["rows"];
  REQUIRE(rows.size() == 5);
  auto cost = [&](int i) { return rows[i]["mean_multiplications"].get<double>(); };
  CHECK(cost(0) < cost(1));
  CHECK(cost(1) < cost(2));
  CHECK(cost(0) < cost(3));
  CHECK(cost(3) < cost(4));
}
