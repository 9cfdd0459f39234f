#include "tricount/cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "tricount/analysis.hpp"
#include "tricount/bench.hpp"
#include "tricount/config_enum.hpp"
#include "tricount/errors.hpp"
#include "tricount/plan_exec.hpp"
#include "tricount/plan_gen.hpp"
#include "tricount/sts_random.hpp"

namespace tricount {

namespace {

// Writes to --out when given, else to the command's stdout.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ValidationError("cannot write " + path);
      os_ = &file_;
    }
  }
  std::ostream& operator*() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

struct Options {
  int jobs = 1;
  // gen
  int v = 0;
  std::uint64_t seed = 1;
  std::string out;
  // validate / count / list
  std::string sts, config, plan;
  std::string method;
  // enum
  std::string kind = "full";
  int n = 0;
  bool stats = false;
  // plans
  long index = -1;
  bool pretty = false;
  bool no_truncated = false;
  std::string out_dir;
  // bench
  std::string preset = "desk";
  // rank
  std::size_t systems = 0;
  bool full_scale = false;
};

int cmd_gen(const Options& o, std::ostream& out) {
  HillClimbConfig c;
  c.v = o.v;
  c.seed = o.seed;
  Sink sink(o.out, out);
  *sink << "# hill climbing, seed " << o.seed << '\n' << write_sts(hill_climb(c));
  return 0;
}

int cmd_validate(const Options& o, std::ostream& out) {
  if (!o.sts.empty()) {
    const auto s = read_sts_file(o.sts);
    out << "ok: STS(" << s.order() << ") with " << s.block_count() << " blocks\n";
  }
  if (!o.config.empty()) {
    const auto c = load_configuration(o.config);
    const auto k = classify(c);
    out << "ok: configuration with " << c.points() << " points and " << c.line_count() << " lines"
        << (k.is_full ? ", full" : "") << (k.is_w3 ? ", w3" : "") << '\n';
  }
  if (!o.plan.empty()) {
    const auto p = read_plan_file(o.plan);
    out << "ok: plan for " << p.config << " with " << p.vars() << " variables, Q=" << p.q << '\n';
  }
  return 0;
}

int cmd_enum(const Options& o, std::ostream& out) {
  const bool w3 = o.kind == "w3";
  const auto configs = w3 ? enumerate_w3(o.n) : enumerate_full(o.n);
  Sink sink(o.out, out);
  if (o.stats) {
    *sink << stats_csv_header(w3 ? "w" : "n") << '\n' << stats_csv_row(tabulate(o.n, configs)) << '\n';
    return 0;
  }
  for (const auto& c : configs) {
    *sink << "# " << c.name() << " aut=" << automorphism_group(c).order() << " m=" << minimum_generating_sets(c).m
          << '\n'
          << write_configuration(c);
  }
  return 0;
}

int cmd_plans(const Options& o, std::ostream& out) {
  const auto cfg = load_configuration(o.config);
  PlanGenOptions opts;
  opts.truncated_variants = !o.no_truncated;
  const auto set = generate_plans(cfg, opts);
  if (o.index >= 0) {
    if (static_cast<std::size_t>(o.index) >= set.plans.size()) {
      throw ValidationError("plan index " + std::to_string(o.index) + " out of range, A=" + std::to_string(set.plans.size()));
    }
    const auto& p = set.plans[o.index];
    Sink sink(o.out, out);
    *sink << (o.pretty ? pretty_print(p) : write_plan(p));
    return 0;
  }
  if (!o.out_dir.empty()) {
    std::filesystem::create_directories(o.out_dir);
    for (std::size_t i = 0; i < set.plans.size(); ++i) {
      std::ostringstream name;
      name << cfg.name() << '-' << std::setw(5) << std::setfill('0') << i << ".plan";
      std::ofstream f(std::filesystem::path(o.out_dir) / name.str());
      f << write_plan(set.plans[i]);
    }
  }
  out << "config,A,compiled,truncated,orbits\n"
      << cfg.name() << ',' << set.plans.size() << ',' << set.compiled << ',' << set.truncated << ','
      << set.transversal << '\n';
  return 0;
}

int cmd_count(const Options& o, std::ostream& out) {
  const auto cfg = load_configuration(o.config);
  const auto sts = read_sts_file(o.sts);
  std::string method = o.method;
  if (method.empty()) method = is_builtin(cfg.name()) ? "builtin" : "list";
  const auto start = std::chrono::steady_clock::now();
  std::uint64_t count = 0;
  std::string label = method;
  if (method == "builtin") {
    count = count_builtin(cfg.name(), sts);
  } else if (method == "oracle") {
    count = count_oracle(cfg, sts);
  } else if (method == "list") {
    count = list_occurrences(cfg, sts).size();
  } else if (method.rfind("plan:", 0) == 0) {
    count = execute_plan(read_plan_file(method.substr(5)), sts);
    label = "plan";
  } else if (method == "plan") {
    count = execute_plan(first_plan(cfg), sts);
  }
  const auto secs = seconds_since(start);
  out << "config,method,count,seconds\n"
      << cfg.name() << ',' << label << ',' << count << ',' << std::fixed << std::setprecision(6) << secs << '\n';
  return 0;
}

int cmd_list(const Options& o, std::ostream& out) {
  const auto cfg = load_configuration(o.config);
  const auto sts = read_sts_file(o.sts);
  Sink sink(o.out, out);
  *sink << "occurrence,blocks,points\n";
  const auto found = list_occurrences(cfg, sts);
  for (std::size_t i = 0; i < found.size(); ++i) {
    std::vector<Point> pts;
    *sink << i << ',';
    for (std::size_t j = 0; j < found[i].size(); ++j) {
      *sink << (j ? " " : "") << found[i][j];
      for (Point p : sts.blocks()[found[i][j]]) pts.push_back(p);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    *sink << ',';
    for (std::size_t j = 0; j < pts.size(); ++j) *sink << (j ? " " : "") << pts[j];
    *sink << '\n';
  }
  return 0;
}

int cmd_bench(const Options& o, std::ostream& out) {
  const auto cfg = load_configuration(o.config);
  auto spec = o.preset == "paper" ? TournamentSpec::paper() : TournamentSpec::desk();
  spec.seed = o.seed;
  const auto set = generate_plans(cfg);
  const auto report = run_tournament(cfg, set.plans, spec);
  Sink sink(o.out, out);
  write_report_csv(report, *sink);
  if (!o.out.empty()) {
    out << "winner=" << report.winner << " top5_phase1=" << (report.winner_top5_phase1 ? "true" : "false")
        << " verified=" << (report.winner_verified ? "true" : "false") << '\n';
  }
  for (const auto& m : report.mismatches) out << "mismatch: " << m << '\n';
  return report.mismatches.empty() ? 0 : 1;
}

int cmd_rank(const Options& o, std::ostream& out) {
  int n = o.n, v = o.v;
  std::size_t systems = o.systems;
  if (o.full_scale) {
    n = 8;
    v = 25;
    systems = std::max<std::size_t>(systems, 623);
  }
  const auto rep = independence_check(n, systems, v, o.seed, o.jobs);
  Sink sink(o.out, out);
  write_matrix_csv(rep.matrix, *sink);
  out << "rank=" << rep.rank << " target=" << rep.target << " full_rank=" << (rep.full_rank ? "true" : "false") << '\n';
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Count configurations in Steiner triple systems", "tricount"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--jobs", o.jobs, "Worker threads for counting across systems")->check(CLI::PositiveNumber);

  auto* gen = app.add_subcommand("gen", "Random STS(v) by hill climbing");
  gen->add_option("--v", o.v, "Order (1 or 3 mod 6)")->required();
  gen->add_option("--seed", o.seed);
  gen->add_option("--out", o.out, "Output file (default stdout)");

  auto* validate = app.add_subcommand("validate", "Check an STS, configuration or plan file");
  validate->add_option("--sts", o.sts);
  validate->add_option("--config", o.config, "Built-in name or file");
  validate->add_option("--plan", o.plan);

  auto* en = app.add_subcommand("enum", "Isomorph-free enumeration");
  en->add_option("--kind", o.kind)->check(CLI::IsMember({"full", "w3"}));
  en->add_option("--n", o.n, "Lines (full) or points (w3)")->required();
  en->add_flag("--stats", o.stats, "Print the statistics row only");
  en->add_option("--out", o.out);

  auto* plans = app.add_subcommand("plans", "Synthesize counting plans");
  plans->add_option("--config", o.config)->required();
  plans->add_option("--index", o.index, "Print one plan");
  plans->add_flag("--pretty", o.pretty, "Pseudocode instead of plan text");
  plans->add_flag("--no-truncated", o.no_truncated, "Skip variants with undetermined chain positions");
  plans->add_option("--out-dir", o.out_dir, "Write every plan to this directory");
  plans->add_option("--out", o.out);

  auto* count = app.add_subcommand("count", "Count occurrences");
  count->add_option("--config", o.config)->required();
  count->add_option("--sts", o.sts)->required();
  count->add_option("--method", o.method, "builtin | plan | plan:<file> | oracle | list")
      ->check([](const std::string& m) {
        return m == "builtin" || m == "plan" || m == "oracle" || m == "list" || m.rfind("plan:", 0) == 0
                   ? std::string{}
                   : "unknown method " + m;
      });

  auto* list = app.add_subcommand("list", "List occurrences as block indices");
  list->add_option("--config", o.config)->required();
  list->add_option("--sts", o.sts)->required();
  list->add_option("--out", o.out);

  auto* bench = app.add_subcommand("bench", "Three-phase plan tournament");
  bench->add_option("--config", o.config)->required();
  bench->add_option("--preset", o.preset)->check(CLI::IsMember({"paper", "desk"}));
  bench->add_option("--seed", o.seed);
  bench->add_option("--out", o.out, "Report CSV (default stdout)");

  auto* rank = app.add_subcommand("rank", "Exact rank of count vectors");
  rank->add_option("--n", o.n, "Largest line count");
  rank->add_option("--systems", o.systems);
  rank->add_option("--v", o.v);
  rank->add_option("--seed", o.seed);
  rank->add_flag("--full-scale", o.full_scale, "n=8, v=25, at least 623 systems (hours)");
  rank->add_option("--out", o.out, "Matrix CSV (default stdout)");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (*gen) return cmd_gen(o, out);
    if (*validate) {
      if (o.sts.empty() && o.config.empty() && o.plan.empty()) {
        err << "error: validate needs --sts, --config or --plan\n\n" << validate->help();
        return 2;
      }
      return cmd_validate(o, out);
    }
    if (*en) return cmd_enum(o, out);
    if (*plans) return cmd_plans(o, out);
    if (*count) return cmd_count(o, out);
    if (*list) return cmd_list(o, out);
    if (*bench) return cmd_bench(o, out);
    if (*rank) {
      if (!o.full_scale && (o.n < 1 || o.systems < 1 || o.v < 7)) {
        err << "error: rank needs --n, --systems and --v, or --full-scale\n\n" << rank->help();
        return 2;
      }
      return cmd_rank(o, out);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace tricount
