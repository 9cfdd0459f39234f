#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>
#include <sstream>

#include "reference.hpp"
#include "tricount/errors.hpp"
#include "tricount/plan.hpp"
#include "tricount/plan_gen.hpp"

using namespace tricount;

namespace {

const PlanSet& plans_for(const std::string& name) {
  static std::map<std::string, PlanSet> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, generate_plans(builtin_configuration(name))).first;
  return it->second;
}

// every k-th plan, so large sets stay cheap
std::vector<const CountingPlan*> sample(const PlanSet& set, std::size_t want) {
  std::vector<const CountingPlan*> out;
  const std::size_t step = std::max<std::size_t>(1, set.plans.size() / want);
  for (std::size_t i = 0; i < set.plans.size(); i += step) out.push_back(&set.plans[i]);
  return out;
}

std::string swap_b2_args(std::string s) {
  for (auto k = s.find("B2("); k != std::string::npos; k = s.find("B2(", k + 1)) {
    if (s[k + 3] < s[k + 5]) std::swap(s[k + 3], s[k + 5]);
  }
  return s;
}

Point var_point(const CountingPlan& p, int var) { return p.names[var][0] - 'a'; }

Triple sorted(Triple t) {
  std::sort(t.begin(), t.end());
  return t;
}

const char* kSmall =
    "PLAN cfg=pasch Q=1\n"
    "LOOP a lo=0 hi=v-1\n"
    "LOOP b lo=0 hi=v-1\n"
    "BOUND b > a\n"
    "ASSIGN c = third(a,b)\n"
    "COUNT\n";

}  // namespace

TEST_CASE("text form round trip") {
  for (const auto& name : builtin_names()) {
    for (const auto* p : sample(plans_for(name), 40)) {
      const auto text = write_plan(*p);
      const auto back = read_plan(text);
      CHECK(back == *p);
      CHECK(back.origin == p->origin);
      CHECK(back.truncated == p->truncated);
      CHECK(write_plan(back) == text);
    }
  }
}

TEST_CASE("parser folds a bound right after its loop") {
  const auto p = read_plan(kSmall);
  REQUIRE(p.steps.size() == 4);
  CHECK(p.steps[1].kind == StepKind::Loop);
  REQUIRE(p.steps[1].bounds.size() == 1);
  CHECK(p.steps[1].bounds[0].other == 0);
  CHECK_FALSE(p.steps[1].bounds[0].less);
  CHECK(p.names == std::vector<std::string>{"a", "b", "c"});
}

TEST_CASE("parse errors carry line numbers") {
  auto line_of = [](const std::string& text) {
    try {
      read_plan(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("PLAN cfg=x Q=1\nLOOP a lo=0 hi=v-1\nJUMP a\nCOUNT\n") == 3);
  CHECK(line_of("PLAN cfg=x Q=0\nCOUNT\n") == 1);
  CHECK(line_of("PLAN cfg=x Q=1\nLOOP a lo=0 hi=v-1\nASSIGN b = third(a,z)\nCOUNT\n") == 3);
  CHECK(line_of("PLAN cfg=x Q=1\nLOOP a lo=zero hi=v-1\nCOUNT\n") == 2);
  CHECK(line_of("LOOP a lo=0 hi=v-1\n") == 1);
  CHECK_THROWS_AS(read_plan("PLAN cfg=x Q=1\nLOOP a lo=0 hi=v-1\nLOOP a lo=0 hi=v-1\nCOUNT\n"), ParseError);
}

TEST_CASE("validate_plan rejects malformed step lists") {
  auto p = read_plan(kSmall);
  CHECK_NOTHROW(validate_plan(p));
  auto missing_count = p;
  missing_count.steps.pop_back();
  CHECK_THROWS_AS(validate_plan(missing_count), PlanError);
  auto early_use = p;
  std::swap(early_use.steps[0], early_use.steps[2]);
  CHECK_THROWS_AS(validate_plan(early_use), PlanError);
  auto twice = p;
  twice.steps.insert(twice.steps.end() - 1, twice.steps[2]);
  CHECK_THROWS_AS(validate_plan(twice), PlanError);
  auto zero_q = p;
  zero_q.q = 0;
  CHECK_THROWS_AS(validate_plan(zero_q), PlanError);
}

TEST_CASE("plan_key ignores variable names") {
  auto p = read_plan(kSmall);
  auto renamed = p;
  renamed.names = {"x", "y", "z"};
  CHECK(plan_key(p) == plan_key(renamed));
  auto swapped = p;
  std::swap(swapped.steps[2].args[0], swapped.steps[2].args[1]);
  CHECK(plan_key(p) == plan_key(swapped));
  auto other = p;
  other.steps[1].bounds[0].less = true;
  CHECK(plan_key(p) != plan_key(other));
}

TEST_CASE("generated plans are pairwise distinct") {
  for (const auto& name : builtin_names()) {
    const auto& set = plans_for(name);
    std::set<std::string> keys;
    for (const auto& p : set.plans) keys.insert(plan_key(p));
    CHECK_MESSAGE(keys.size() == set.plans.size(), name);
    CHECK(set.compiled >= set.plans.size());
  }
}

TEST_CASE("structure of the nine configurations") {
  for (const auto& row : reference::kStructure) {
    CAPTURE(row.name);
    const auto cfg = builtin_configuration(row.name);
    CHECK(static_cast<int>(cfg.line_count()) == row.b);
    CHECK(cfg.points() == row.w);
    const auto gs = minimum_generating_sets(cfg);
    CHECK(gs.m == row.m);
    CHECK(gs.sets.size() == row.min_sets);
    const auto group = automorphism_group(cfg);
    CHECK(group.order() == row.aut);
    const auto t = ordered_genset_transversal(cfg, group);
    CHECK(t.ordered == row.ordered);
    CHECK(t.reps.size() == row.orbits);
    CHECK(plans_for(row.name).transversal == row.orbits);
  }
}

TEST_CASE("orbit chain of the Fano plane for Z = (c,b,a), all minima") {
  const auto cfg = builtin_configuration("fano");
  const auto group = automorphism_group(cfg);
  const auto chain = orbit_chain(group, {2, 1, 0}, {false, false, false});
  REQUIRE(chain.orders.size() == 4);
  CHECK(chain.orders == std::vector<std::size_t>{168, 24, 4, 1});
  CHECK(chain.orbits[0] == cfg.all_points());
  CHECK(chain.orbits[1] == (cfg.all_points() & ~bit(2)));
  CHECK(chain.orbits[2] == (bit(0) | bit(3) | bit(4) | bit(6)));
  CHECK(chain.q == 1);
  CHECK_FALSE(chain.truncated);
  const auto above = chain_order(cfg.points(), chain);
  const std::vector<std::pair<Point, Point>> want = {{0, 3}, {0, 4}, {0, 6}, {1, 0}, {1, 5}, {2, 1}};
  CHECK(reduced_constraints(above) == want);
}

TEST_CASE("orbit-stabilizer identity along every chain") {
  for (const auto& name : builtin_names()) {
    const auto cfg = builtin_configuration(name);
    const auto group = automorphism_group(cfg);
    const auto t = ordered_genset_transversal(cfg, group);
    for (const auto& z : t.reps) {
      const auto chain = orbit_chain(group, z, std::vector<bool>(z.size(), false));
      REQUIRE(chain.orders.size() == z.size() + 1);
      CHECK(chain.orders[0] == group.order());
      for (std::size_t i = 0; i < z.size(); ++i) {
        CHECK(chain.orders[i] == static_cast<std::size_t>(popcount(chain.orbits[i])) * chain.orders[i + 1]);
        CHECK((chain.orbits[i] & bit(z[i])) != 0);
      }
      CHECK(chain.q == chain.orders.back());
    }
  }
}

TEST_CASE("truncated chains divide by the last determined group") {
  const auto cfg = builtin_configuration("pasch");
  const auto group = automorphism_group(cfg);
  const auto z = ordered_genset_transversal(cfg, group).reps.front();
  for (int d = 0; d < 3; ++d) {
    const auto chain = orbit_chain(group, z, {false, false, false}, d);
    CHECK(chain.truncated);
    CHECK(chain.q == chain.orders[d]);
  }
}

TEST_CASE("chain order with a cycle is rejected") {
  // a < b from the first position, b < a from the second
  OrbitChain chain;
  chain.z = {0, 1};
  chain.is_max = {false, false};
  chain.orbits = {bit(0) | bit(1), bit(0) | bit(1)};
  CHECK_THROWS_AS(chain_order(2, chain), PlanError);
}

TEST_CASE("every plan uses each line exactly once") {
  for (const auto& name : builtin_names()) {
    const auto cfg = builtin_configuration(name);
    std::multiset<Triple> want;
    for (const auto& l : cfg.lines()) want.insert(sorted(l));
    for (const auto* p : sample(plans_for(name), 60)) {
      std::multiset<Triple> got;
      int assigned = 0;
      for (const auto& s : p->steps) {
        if (s.kind == StepKind::Loop || s.kind == StepKind::Assign) ++assigned;
        if (s.kind == StepKind::Assign) {
          got.insert(sorted({var_point(*p, s.var), var_point(*p, s.args[0]), var_point(*p, s.args[1])}));
        } else if (s.kind == StepKind::Line) {
          got.insert(sorted({var_point(*p, s.args[0]), var_point(*p, s.args[1]), var_point(*p, s.args[2])}));
        }
      }
      CHECK(got == want);
      CHECK(assigned == cfg.points());
      CHECK(automorphism_group(cfg).order() % p->q == 0);
    }
  }
}

TEST_CASE("the Fano worked example is generated") {
  const auto& set = plans_for("fano");
  const auto hits = std::count_if(set.plans.begin(), set.plans.end(),
                                  [](const auto& p) { return pretty_print(p) == reference::kFanoWorkedExample; });
  CHECK(hits == 1);
}

TEST_CASE("hand-written counters are among the generated plans") {
  for (const char* name : {"pasch", "hexagon", "prism", "grid", "moebius-kantor"}) {
    CAPTURE(name);
    const auto& want = reference::kListings.at(name);
    const auto& set = plans_for(name);
    CHECK(std::any_of(set.plans.begin(), set.plans.end(), [&](const auto& p) { return pretty_print(p) == want; }));
  }
  // these two agree up to the argument order inside B2
  for (const char* name : {"crown", "fano-line"}) {
    CAPTURE(name);
    const auto want = swap_b2_args(reference::kListings.at(name));
    const auto& set = plans_for(name);
    CHECK(std::any_of(set.plans.begin(), set.plans.end(),
                      [&](const auto& p) { return swap_b2_args(pretty_print(p)) == want; }));
  }
}

TEST_CASE("first_plan works beyond four generators") {
  auto two_fanos = disjoint_union(builtin_configuration("fano"), builtin_configuration("fano"));
  CHECK_THROWS_AS(generate_plans(two_fanos), LimitError);
  const auto p = first_plan(two_fanos);
  CHECK_NOTHROW(validate_plan(p));
  int loops = 0;
  for (const auto& s : p.steps) loops += s.kind == StepKind::Loop;
  CHECK(loops == 6);
}

TEST_CASE("generation without truncated variants") {
  PlanGenOptions opts;
  opts.truncated_variants = false;
  const auto set = generate_plans(builtin_configuration("pasch"), opts);
  CHECK(set.truncated == 0);
  CHECK(set.plans.size() < plans_for("pasch").plans.size());
  for (const auto& p : set.plans) CHECK_FALSE(p.truncated);
}
