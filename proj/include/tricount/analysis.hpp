#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tricount/config.hpp"
#include "tricount/plan_exec.hpp"
#include "tricount/sts.hpp"

namespace tricount {

using BigInt = boost::multiprecision::cpp_int;

/// All full configurations with at most n lines, by line count and then
/// canonical order.
std::vector<Configuration> full_configurations_up_to(int n);

/// Counts a fixed list of configurations in many systems. Configurations
/// generated by at most four points run a compiled plan, the rest the
/// extension lister.
class VectorCounter {
 public:
  explicit VectorCounter(std::vector<Configuration> configs);
  /// [1, c_1, ..., c_r]
  std::vector<std::uint64_t> row(const SteinerTripleSystem& sts) const;
  const std::vector<Configuration>& configs() const { return configs_; }

 private:
  std::vector<Configuration> configs_;
  std::vector<std::optional<CompiledPlan>> plans_;  // empty: lister
};

std::vector<std::uint64_t> count_vector(const SteinerTripleSystem& sts, const std::vector<Configuration>& configs);

struct RankMatrix {
  std::vector<std::string> columns;  // "1", then configuration names
  std::vector<std::vector<std::uint64_t>> rows;
};

/// Rank over the rationals by fraction-free elimination.
std::size_t exact_rank(std::vector<std::vector<BigInt>> m);
std::size_t exact_rank(const std::vector<std::vector<std::uint64_t>>& m);

struct IndependenceReport {
  RankMatrix matrix;
  std::size_t rank = 0;
  std::size_t target = 0;  // r + 1
  bool full_rank = false;
  std::size_t redraws = 0;  // duplicate systems discarded
};

/// Count vectors of `systems` distinct random STS(v) against every full
/// configuration with at most n lines; rows are counted on `jobs` threads.
IndependenceReport independence_check(int n, std::size_t systems, int v, std::uint64_t seed, int jobs = 1);

void write_matrix_csv(const RankMatrix& m, std::ostream& out);

}  // namespace tricount
