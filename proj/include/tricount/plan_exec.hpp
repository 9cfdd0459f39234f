#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "tricount/config.hpp"
#include "tricount/plan.hpp"
#include "tricount/sts.hpp"

namespace tricount {

struct ExecOptions {
  /// Run every loop over 0..v-1 and test its bounds inside instead.
  bool wide_bounds = false;
};

/// A plan flattened for repeated execution.
class CompiledPlan {
 public:
  explicit CompiledPlan(const CountingPlan& plan, ExecOptions options = {});

  /// The raw accumulator r (each occurrence seen q times).
  std::uint64_t raw_count(const SteinerTripleSystem& sts) const;
  /// r / q; throws PlanError when q does not divide r.
  std::uint64_t count(const SteinerTripleSystem& sts) const;
  std::uint64_t q() const { return q_; }

  struct Op {
    StepKind kind;
    int var;
    int a, b, c;       // Assign/Line operands
    int lo, hi_off;    // Loop constants
    int first, size;   // slice of the pool: Neq operands or Loop/Bound relations
  };

 private:
  std::vector<Op> ops_;
  std::vector<int> pool_;
  std::vector<int> parent_;
  int vars_ = 0;
  std::uint64_t q_ = 1;
  std::string config_;
};

std::uint64_t execute_plan(const CountingPlan& plan, const SteinerTripleSystem& sts, ExecOptions options = {});

/// The nine hand-written counters, by built-in configuration name.
/// Throws std::invalid_argument for other names.
std::uint64_t count_builtin(std::string_view name, const SteinerTripleSystem& sts);

/// Subset oracle: block subsets of size b isomorphic to cfg, tested by
/// canonical form. Guard: b <= 8 and at most 40 blocks, or b <= 5 and at
/// most 100 blocks. Throws LimitError beyond.
std::uint64_t count_oracle(const Configuration& cfg, const SteinerTripleSystem& sts);
bool oracle_admits(const Configuration& cfg, const SteinerTripleSystem& sts);

/// Every occurrence once, as sorted block indices into sts.blocks(), found
/// by extending m-subsets of points. Throws LimitError on huge searches.
std::vector<std::vector<int>> list_occurrences(const Configuration& cfg, const SteinerTripleSystem& sts);

}  // namespace tricount
