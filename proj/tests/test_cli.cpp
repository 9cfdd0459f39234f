#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "tricount/cli.hpp"

using namespace tricount;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

// Compares with golden/<name>.txt; TRICOUNT_UPDATE_GOLDEN=1 rewrites it.
void golden(const std::string& name, const std::string& text) {
  const auto path = "golden/" + name + ".txt";
  if (std::getenv("TRICOUNT_UPDATE_GOLDEN")) {
    std::ofstream(path) << text;
    return;
  }
  const auto want = slurp(path);
  REQUIRE_MESSAGE(!want.empty(), "missing " << path);
  CHECK(text == want);
}

// drops the last CSV field of every data row (wall-clock seconds)
std::string mask_seconds(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) {
    if (line.rfind("config,", 0) != 0) line = line.substr(0, line.rfind(',')) + ",*";
    out += line + '\n';
  }
  return out;
}

std::vector<std::string> lines_starting(const std::string& text, const std::vector<std::string>& prefixes) {
  std::istringstream in(text);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) {
    for (const auto& p : prefixes) {
      if (line.rfind(p, 0) == 0) out.push_back(line);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("help lists every subcommand") {
  const auto r = run({"--help"});
  CHECK(r.code == 0);
  for (const char* sub : {"gen", "validate", "enum", "plans", "count", "bench", "rank", "list"}) {
    CHECK(r.out.find(std::string("  ") + sub + " ") != std::string::npos);
  }
  golden("help", r.out);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"count", "--config", "pasch"}).code == 2);
  CHECK(run({"count", "--config", "pasch", "--sts", "data/sts9.txt", "--method", "guess"}).code == 2);
  CHECK(run({"enum", "--kind", "cubic", "--n", "4"}).code == 2);
  CHECK(run({"validate"}).code == 2);
  const auto r = run({"rank", "--n", "4"});
  CHECK(r.code == 2);
  CHECK(r.err.find("Usage") != std::string::npos);
}

TEST_CASE("gen") {
  const auto r = run({"gen", "--v", "13", "--seed", "1"});
  CHECK(r.code == 0);
  CHECK(r.out == slurp("data/sts13.txt"));
  golden("gen_v13_seed1", r.out);
  CHECK(run({"gen", "--v", "11"}).code == 1);
}

TEST_CASE("validate") {
  auto r = run({"validate", "--sts", "data/fano.txt"});
  CHECK(r.code == 0);
  golden("validate_fano", r.out);
  r = run({"validate", "--sts", "data/bad_sts.txt"});
  CHECK(r.code == 1);
  CHECK(r.err.find("{2,6}") != std::string::npos);
  golden("validate_bad", r.err);
  CHECK(run({"validate", "--config", "mitre"}).code == 0);
  CHECK(run({"validate", "--sts", "data/missing.txt"}).code == 1);
}

TEST_CASE("enum") {
  auto r = run({"enum", "--kind", "w3", "--n", "10", "--stats"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\n10,10,") != std::string::npos);
  golden("enum_w3_10_stats", r.out);
  r = run({"enum", "--kind", "full", "--n", "6"});
  CHECK(r.code == 0);
  golden("enum_full_6", r.out);
}

TEST_CASE("plans") {
  auto r = run({"plans", "--config", "pasch"});
  CHECK(r.code == 0);
  golden("plans_pasch", r.out);
  r = run({"plans", "--config", "fano", "--index", "0", "--pretty"});
  CHECK(r.code == 0);
  golden("plans_fano_0_pretty", r.out);
  r = run({"plans", "--config", "fano", "--index", "0"});
  golden("plans_fano_0", r.out);
  CHECK(run({"plans", "--config", "fano", "--index", "100000"}).code == 1);
}

TEST_CASE("count") {
  auto r = run({"count", "--config", "pasch", "--sts", "data/sts9.txt", "--method", "oracle"});
  CHECK(r.code == 0);
  CHECK(r.out.find("pasch,oracle,0,") != std::string::npos);
  golden("count_pasch_sts9_oracle", mask_seconds(r.out));
  r = run({"count", "--config", "mitre", "--sts", "data/sts9.txt"});
  golden("count_mitre_sts9", mask_seconds(r.out));
  for (const char* m : {"builtin", "plan", "oracle", "list"}) {
    r = run({"count", "--config", "pasch", "--sts", "data/sts13.txt", "--method", m});
    CHECK(r.code == 0);
    CHECK(mask_seconds(r.out).find(std::string("pasch,") + m + ",8,*") != std::string::npos);
  }
  r = run({"count", "--config", "pasch", "--sts", "data/sts13.txt", "--method", "plan:golden/plans_fano_0.txt"});
  CHECK(r.code == 0);
}

TEST_CASE("list") {
  const auto r = run({"list", "--config", "pasch", "--sts", "data/fano.txt"});
  CHECK(r.code == 0);
  golden("list_pasch_fano", r.out);
}

TEST_CASE("rank") {
  const auto r = run({"rank", "--n", "5", "--systems", "4", "--v", "13", "--seed", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("target=3") != std::string::npos);
  golden("rank_n5_v13", r.out);
  const auto par = run({"--jobs", "2", "rank", "--n", "5", "--systems", "4", "--v", "13", "--seed", "3"});
  CHECK(par.out == r.out);
}

TEST_CASE("bench") {
  const auto r = run({"bench", "--config", "pasch", "--seed", "2"});
  CHECK(r.code == 0);
  std::string stable;
  for (const auto& l : lines_starting(r.out, {"# config", "# times", "phase,"})) stable += l + '\n';
  golden("bench_pasch_header", stable);
  // every plan enters phase 1, ten survive it, five reach phase 3
  CHECK(lines_starting(r.out, {"1,"}).size() == 256);
  CHECK(lines_starting(r.out, {"2,"}).size() == 10);
  CHECK(lines_starting(r.out, {"3,"}).size() == 5);
  CHECK(r.out.find("verified=true") != std::string::npos);
}
