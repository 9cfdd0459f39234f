#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "tricount/config.hpp"
#include "tricount/plan.hpp"
#include "tricount/sts.hpp"

namespace tricount {

struct PhaseSpec {
  int v = 31;
  double budget_s = 1.0;     // per plan; at least one system is always run
  std::size_t keep = 1;      // survivors: max{keep, ceil(keep_fraction * entrants)}
  double keep_fraction = 0;
  std::size_t max_systems = 0;  // cap on systems per plan, 0 = none
  bool warmup = true;           // one discarded run per plan
};

struct TournamentSpec {
  std::vector<PhaseSpec> phases;
  std::uint64_t seed = 1;

  /// (93, 0.5 s) keeping max{100, 1%}, (121, 60 s) keeping 5, (151, 600 s).
  static TournamentSpec paper();
  /// (31, 0.2 s), (63, 2 s), (93, 10 s) with system caps, so all nine
  /// configurations finish in minutes on one core.
  static TournamentSpec desk();
  /// Throws ValidationError.
  void validate() const;
};

struct PlanTiming {
  std::size_t plan_id = 0;  // index into the input plan list
  std::size_t systems = 0;
  double total_s = 0;
  double avg_s = 0;
  std::size_t rank = 0;  // 1-based within the phase
};

struct PhaseReport {
  PhaseSpec spec;
  std::vector<PlanTiming> rows;  // by rank
  std::vector<std::uint64_t> counts;  // reference count per system of the phase
};

struct TournamentReport {
  std::string config;
  std::uint64_t seed = 0;
  std::vector<PhaseReport> phases;
  std::size_t winner = 0;
  bool winner_top5_phase1 = false;
  /// The winner's count equals the reference count on every system.
  bool winner_verified = false;
  /// Plan/system pairs whose count differs from the reference.
  std::vector<std::string> mismatches;
};

using ReferenceCounter = std::function<std::uint64_t(const SteinerTripleSystem&)>;

/// Three-phase tournament. Systems of each phase are generated once from
/// the seed and shared by all plans. When `reference` is empty, built-in
/// configurations use count_builtin and others the extension lister.
TournamentReport run_tournament(const Configuration& cfg, const std::vector<CountingPlan>& plans,
                                const TournamentSpec& spec, ReferenceCounter reference = {});

/// CSV with columns phase,plan_id,systems,total_s,avg_s,rank, preceded by
/// '#' lines describing the run.
void write_report_csv(const TournamentReport& report, std::ostream& out);

}  // namespace tricount
