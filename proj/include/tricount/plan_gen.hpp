#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tricount/config.hpp"
#include "tricount/plan.hpp"

namespace tricount {

/// Largest m for which generate_plans runs the exhaustive product.
inline constexpr int kMaxPlanGenerators = 4;

using Tuple = std::vector<Point>;

struct TransversalInfo {
  std::size_t ordered = 0;    // ordered minimum generating tuples, |M_s| * m!
  std::vector<Tuple> reps;    // lexicographically least tuple of each orbit
};

/// Orbits of Aut(cfg) acting on ordered minimum generating tuples.
TransversalInfo ordered_genset_transversal(const Configuration& cfg);
TransversalInfo ordered_genset_transversal(const Configuration& cfg, const PermGroup& group);

struct OrbitChain {
  Tuple z;
  std::vector<bool> is_max;          // e_i; is_max[0] is false
  std::vector<PointMask> orbits;     // O_i for the determined positions
  std::vector<std::size_t> orders;   // |Gamma_0|, |Gamma_1|, ...
  std::uint64_t q = 1;
  bool truncated = false;            // fewer positions than m determined
};

/// Orbit/stabilizer chain for the first `determined` positions of z
/// (all of them when determined < 0). Q is the order of the last group.
OrbitChain orbit_chain(const PermGroup& group, const Tuple& z, const std::vector<bool>& is_max,
                       int determined = -1);

/// Strict order forced by the chain: above[x] is the set of points that
/// must be larger than x (transitively closed). Throws PlanError on a cycle.
std::vector<PointMask> chain_order(int w, const OrbitChain& chain);

/// Transitive reduction of the order as pairs (smaller, larger), sorted.
std::vector<std::pair<Point, Point>> reduced_constraints(const std::vector<PointMask>& above);

/// One way of building the closure: for each loop position k, the derived
/// points set right after the k-th loop, each with the index of its
/// defining line.
using Build = std::vector<std::vector<std::pair<Point, int>>>;

/// Every build for loop order m_tuple; stops after `limit` builds if limit > 0.
std::vector<Build> enumerate_builds(const Configuration& cfg, const Tuple& m_tuple, std::size_t limit = 0);

/// Compiles one plan. `above` is the constraint order, q the divisor.
CountingPlan compile_plan(const Configuration& cfg, const Tuple& m_tuple, const std::vector<PointMask>& above,
                          std::uint64_t q, const Build& build);

struct PlanGenOptions {
  bool truncated_variants = true;
};

struct PlanSet {
  std::vector<CountingPlan> plans;  // deduplicated, in generation order
  std::size_t compiled = 0;         // plans compiled before deduplication
  std::size_t truncated = 0;        // plans flagged truncated among `plans`
  std::size_t transversal = 0;      // |M / Gamma|
};

/// Every plan for the configuration; throws LimitError if m > kMaxPlanGenerators.
PlanSet generate_plans(const Configuration& cfg, const PlanGenOptions& options = {});

/// A single valid plan (first transversal tuple, Z = M, all minima, first
/// build), for any m.
CountingPlan first_plan(const Configuration& cfg);

}  // namespace tricount
