#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace tricount {

enum class StepKind { Loop, Bound, Assign, Neq, Line, Count };

/// Relational bound of a variable against an earlier one. For less == false
/// it reads var >= other + 1 + gap, otherwise var <= other - 1 - gap. The
/// gap counts points forced strictly between the two.
struct Relation {
  int other = -1;
  bool less = false;
  int gap = 0;
  friend bool operator==(const Relation&, const Relation&) = default;
};

struct Step {
  StepKind kind = StepKind::Count;
  int var = -1;
  // Loop: constant range lo..v-1-hi_offset, plus relational bounds
  int lo = 0;
  int hi_offset = 0;
  std::vector<Relation> bounds;
  // Bound: one relation in bounds[0]
  // Assign: var = third(args[0], args[1]); Neq: var not in args;
  // Line: args[0..2]
  std::vector<int> args;
  friend bool operator==(const Step&, const Step&) = default;
};

/// A compiled counting program over variables 0..vars-1 (one per point of
/// the configuration). Executing it counts r; the result is r / q.
struct CountingPlan {
  std::string config;
  std::uint64_t q = 1;
  std::vector<std::string> names;  // variable names, index = variable
  std::vector<Step> steps;
  bool truncated = false;
  std::string origin;  // free-form provenance comment (M, Z, E, variant)

  int vars() const { return static_cast<int>(names.size()); }
  friend bool operator==(const CountingPlan& a, const CountingPlan& b) {
    return a.config == b.config && a.q == b.q && a.names == b.names && a.steps == b.steps;
  }
};

// Text form, one step per line:
//   PLAN cfg=<name> Q=<q>
//   LOOP x lo=<k> hi=v-<k>
//   BOUND x <|> y [gap=g]      (directly after a LOOP: folded into its range)
//   ASSIGN x = third(y,z)
//   NEQ x {a,b}
//   LINE x y z
//   COUNT
// '#' starts a comment line.
std::string write_plan(const CountingPlan& plan);
CountingPlan read_plan(std::string_view text);
CountingPlan read_plan(std::istream& in);
CountingPlan read_plan_file(const std::string& path);

/// Pseudocode: B2(x,y) is the third point of a block, B3 tests a block.
std::string pretty_print(const CountingPlan& plan);

/// Normalized serialization: variables renamed in order of assignment,
/// argument lists of ASSIGN/NEQ/LINE sorted. Equal keys = same algorithm.
std::string plan_key(const CountingPlan& plan);

/// Throws PlanError if a variable is used before assignment, assigned twice,
/// or the step list is malformed.
void validate_plan(const CountingPlan& plan);

}  // namespace tricount
