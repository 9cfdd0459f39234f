#include "tricount/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <ostream>

#include "tricount/errors.hpp"
#include "tricount/plan_exec.hpp"
#include "tricount/sts_random.hpp"

namespace tricount {

TournamentSpec TournamentSpec::paper() {
  TournamentSpec s;
  s.phases = {{93, 0.5, 100, 0.01, 0, true}, {121, 60, 5, 0, 0, true}, {151, 600, 1, 0, 0, true}};
  return s;
}

TournamentSpec TournamentSpec::desk() {
  TournamentSpec s;
  s.phases = {{31, 0.2, 10, 0.001, 1, false}, {63, 2, 5, 0, 3, true}, {93, 10, 1, 0, 5, true}};
  return s;
}

void TournamentSpec::validate() const {
  if (phases.empty()) throw ValidationError("tournament has no phases");
  for (std::size_t i = 0; i < phases.size(); ++i) {
    const auto& p = phases[i];
    const auto where = "phase " + std::to_string(i + 1) + ": ";
    if (!admissible_order(p.v) || p.v < 7) throw ValidationError(where + "no STS of order " + std::to_string(p.v));
    if (!(p.budget_s > 0)) throw ValidationError(where + "budget must be positive");
    if (p.keep == 0) throw ValidationError(where + "must keep at least one plan");
    if (p.keep_fraction < 0 || p.keep_fraction > 1) throw ValidationError(where + "keep fraction outside [0,1]");
  }
}

namespace {

using Clock = std::chrono::steady_clock;

class SystemPool {
 public:
  SystemPool(int v, std::uint64_t seed) : v_(v), seed_(seed) {}

  const SteinerTripleSystem& at(std::size_t j) {
    while (systems_.size() <= j) {
      HillClimbConfig c;
      c.v = v_;
      c.seed = mix_seed(seed_, systems_.size());
      systems_.push_back(hill_climb(c));
    }
    return systems_[j];
  }
  std::size_t size() const { return systems_.size(); }

 private:
  int v_;
  std::uint64_t seed_;
  std::vector<SteinerTripleSystem> systems_;
};

}  // namespace

TournamentReport run_tournament(const Configuration& cfg, const std::vector<CountingPlan>& plans,
                                const TournamentSpec& spec, ReferenceCounter reference) {
  spec.validate();
  if (plans.empty()) throw ValidationError("tournament needs at least one plan");
  if (!reference) {
    if (is_builtin(cfg.name())) {
      reference = [name = cfg.name()](const SteinerTripleSystem& s) { return count_builtin(name, s); };
    } else {
      reference = [cfg](const SteinerTripleSystem& s) { return list_occurrences(cfg, s).size(); };
    }
  }
  TournamentReport report;
  report.config = cfg.name();
  report.seed = spec.seed;

  std::vector<CompiledPlan> compiled;
  compiled.reserve(plans.size());
  for (const auto& p : plans) compiled.emplace_back(p);

  std::vector<std::size_t> entrants(plans.size());
  for (std::size_t i = 0; i < plans.size(); ++i) entrants[i] = i;
  // counts seen per plan, checked against the reference afterwards
  std::map<std::pair<std::size_t, std::size_t>, std::map<std::size_t, std::uint64_t>> seen;

  for (std::size_t k = 0; k < spec.phases.size(); ++k) {
    const auto& ph = spec.phases[k];
    SystemPool pool(ph.v, mix_seed(spec.seed, k + 1));
    PhaseReport pr;
    pr.spec = ph;
    for (std::size_t id : entrants) {
      const auto& plan = compiled[id];
      if (ph.warmup) plan.count(pool.at(0));
      PlanTiming t;
      t.plan_id = id;
      for (std::size_t j = 0; j == 0 || t.total_s < ph.budget_s; ++j) {
        if (ph.max_systems && j >= ph.max_systems) break;
        const auto& s = pool.at(j);
        const auto start = Clock::now();
        const auto c = plan.count(s);
        t.total_s += std::chrono::duration<double>(Clock::now() - start).count();
        ++t.systems;
        seen[{k, j}][id] = c;
      }
      t.avg_s = t.total_s / static_cast<double>(t.systems);
      pr.rows.push_back(t);
    }
    std::sort(pr.rows.begin(), pr.rows.end(), [](const PlanTiming& a, const PlanTiming& b) {
      return a.avg_s != b.avg_s ? a.avg_s < b.avg_s : a.plan_id < b.plan_id;
    });
    for (std::size_t i = 0; i < pr.rows.size(); ++i) pr.rows[i].rank = i + 1;
    for (std::size_t j = 0; j < pool.size(); ++j) pr.counts.push_back(reference(pool.at(j)));
    for (std::size_t j = 0; j < pool.size(); ++j) {
      for (const auto& [id, c] : seen[{k, j}]) {
        if (c != pr.counts[j]) {
          report.mismatches.push_back("phase " + std::to_string(k + 1) + " system " + std::to_string(j) + " plan " +
                                      std::to_string(id) + ": " + std::to_string(c) + " != " +
                                      std::to_string(pr.counts[j]));
        }
      }
    }
    const bool last = k + 1 == spec.phases.size();
    const auto quota = last ? 1
                            : std::max<std::size_t>(ph.keep, static_cast<std::size_t>(std::ceil(
                                                                 ph.keep_fraction * static_cast<double>(entrants.size()))));
    entrants.clear();
    for (std::size_t i = 0; i < pr.rows.size() && i < quota; ++i) entrants.push_back(pr.rows[i].plan_id);
    report.phases.push_back(std::move(pr));
  }

  report.winner = entrants.front();
  const auto& first = report.phases.front().rows;
  for (std::size_t i = 0; i < first.size() && i < 5; ++i) {
    if (first[i].plan_id == report.winner) report.winner_top5_phase1 = true;
  }
  // the winner recounts every system of every phase
  report.winner_verified = true;
  for (std::size_t k = 0; k < report.phases.size(); ++k) {
    const auto& counts = report.phases[k].counts;
    SystemPool pool(report.phases[k].spec.v, mix_seed(spec.seed, k + 1));
    for (std::size_t j = 0; j < counts.size(); ++j) {
      const auto c = compiled[report.winner].count(pool.at(j));
      if (c != counts[j]) {
        report.winner_verified = false;
        report.mismatches.push_back("winner on phase " + std::to_string(k + 1) + " system " + std::to_string(j) +
                                    ": " + std::to_string(c) + " != " + std::to_string(counts[j]));
      }
    }
  }
  return report;
}

void write_report_csv(const TournamentReport& report, std::ostream& out) {
  out << "# config=" << report.config << " seed=" << report.seed << '\n';
  out << "# times are wall-clock seconds of plan execution only; random system construction is excluded\n";
  for (std::size_t k = 0; k < report.phases.size(); ++k) {
    const auto& s = report.phases[k].spec;
    out << "# phase " << k + 1 << ": v=" << s.v << " budget=" << s.budget_s << "s systems=" << report.phases[k].counts.size()
        << " entrants=" << report.phases[k].rows.size() << '\n';
  }
  out << "# winner=" << report.winner << " top5_phase1=" << (report.winner_top5_phase1 ? "true" : "false")
      << " verified=" << (report.winner_verified ? "true" : "false") << '\n';
  out << "phase,plan_id,systems,total_s,avg_s,rank\n";
  for (std::size_t k = 0; k < report.phases.size(); ++k) {
    for (const auto& r : report.phases[k].rows) {
      out << k + 1 << ',' << r.plan_id << ',' << r.systems << ',' << r.total_s << ',' << r.avg_s << ',' << r.rank << '\n';
    }
  }
}

}  // namespace tricount
