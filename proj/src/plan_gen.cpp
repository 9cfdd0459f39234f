#include "tricount/plan_gen.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "tricount/errors.hpp"

namespace tricount {

namespace {

std::uint64_t encode(const Tuple& t) {
  std::uint64_t code = 0;
  for (Point p : t) code = code << 6 | static_cast<std::uint64_t>(p);
  return code;
}

std::vector<Point> points_of(PointMask m) {
  std::vector<Point> out;
  for (; m; m &= m - 1) out.push_back(static_cast<Point>(__builtin_ctzll(m)));
  return out;
}

std::string tuple_name(const Tuple& t) {
  std::string s;
  for (Point p : t) s += point_name(p);
  return s;
}

std::vector<PointMask> invert(const std::vector<PointMask>& above) {
  std::vector<PointMask> below(above.size(), 0);
  for (std::size_t x = 0; x < above.size(); ++x) {
    for (Point y : points_of(above[x])) below[y] |= bit(static_cast<Point>(x));
  }
  return below;
}

}  // namespace

TransversalInfo ordered_genset_transversal(const Configuration& cfg) {
  return ordered_genset_transversal(cfg, automorphism_group(cfg));
}

TransversalInfo ordered_genset_transversal(const Configuration& cfg, const PermGroup& group) {
  const auto gs = minimum_generating_sets(cfg);
  std::vector<Tuple> tuples;
  for (PointMask s : gs.sets) {
    Tuple t = points_of(s);
    do {
      tuples.push_back(t);
    } while (std::next_permutation(t.begin(), t.end()));
  }
  std::sort(tuples.begin(), tuples.end());
  TransversalInfo info;
  info.ordered = tuples.size();
  std::unordered_set<std::uint64_t> seen;
  Tuple image;
  for (const auto& t : tuples) {
    if (seen.count(encode(t))) continue;
    info.reps.push_back(t);
    for (const auto& g : group.elements()) {
      image.clear();
      for (Point p : t) image.push_back(g[p]);
      seen.insert(encode(image));
    }
  }
  return info;
}

OrbitChain orbit_chain(const PermGroup& group, const Tuple& z, const std::vector<bool>& is_max, int determined) {
  OrbitChain c;
  c.z = z;
  c.is_max = is_max;
  c.is_max.resize(z.size(), false);
  const int m = static_cast<int>(z.size());
  const int d = determined < 0 ? m : std::min(determined, m);
  c.truncated = d < m;
  PermGroup cur = group;
  c.orders.push_back(cur.order());
  for (int i = 0; i < d; ++i) {
    c.orbits.push_back(cur.orbit(z[i]));
    cur = cur.stabilizer(z[i]);
    c.orders.push_back(cur.order());
  }
  c.q = c.orders.back();
  return c;
}

std::vector<PointMask> chain_order(int w, const OrbitChain& chain) {
  std::vector<PointMask> above(w, 0);
  for (std::size_t i = 0; i < chain.orbits.size(); ++i) {
    const Point z = chain.z[i];
    const PointMask others = chain.orbits[i] & ~bit(z);
    if (!chain.is_max[i]) {
      above[z] |= others;
    } else {
      for (Point p : points_of(others)) above[p] |= bit(z);
    }
  }
  for (int k = 0; k < w; ++k) {
    for (int x = 0; x < w; ++x) {
      if (above[x] & bit(k)) above[x] |= above[k];
    }
  }
  for (int x = 0; x < w; ++x) {
    if (above[x] & bit(x)) throw PlanError("orbit constraints are cyclic at point " + point_name(x));
  }
  return above;
}

std::vector<std::pair<Point, Point>> reduced_constraints(const std::vector<PointMask>& above) {
  std::vector<std::pair<Point, Point>> out;
  for (std::size_t x = 0; x < above.size(); ++x) {
    for (Point y : points_of(above[x])) {
      bool implied = false;
      for (Point z : points_of(above[x])) {
        if (above[z] & bit(y)) implied = true;
      }
      if (!implied) out.emplace_back(static_cast<Point>(x), y);
    }
  }
  return out;
}

std::vector<Build> enumerate_builds(const Configuration& cfg, const Tuple& m_tuple, std::size_t limit) {
  const int m = static_cast<int>(m_tuple.size());
  // every ordering of each region, with every choice of defining line
  std::vector<std::vector<std::vector<std::pair<Point, int>>>> regions(m);
  PointMask prefix = 0;
  for (int k = 0; k < m; ++k) {
    prefix |= bit(m_tuple[k]);
    const PointMask start = closure(cfg, prefix & ~bit(m_tuple[k])) | bit(m_tuple[k]);
    const PointMask target = closure(cfg, prefix);
    std::vector<std::pair<Point, int>> seq;
    auto rec = [&](auto&& self, PointMask have) -> void {
      if (limit && regions[k].size() >= limit) return;
      if (have == target) {
        regions[k].push_back(seq);
        return;
      }
      for (Point p : points_of(target & ~have)) {
        for (std::size_t li = 0; li < cfg.line_count(); ++li) {
          const auto& l = cfg.lines()[li];
          if (l[0] != p && l[1] != p && l[2] != p) continue;
          bool ok = true;
          for (Point q : l) {
            if (q != p && !(have & bit(q))) ok = false;
          }
          if (!ok) continue;
          seq.emplace_back(p, static_cast<int>(li));
          self(self, have | bit(p));
          seq.pop_back();
        }
      }
    };
    rec(rec, start);
    if (regions[k].empty()) throw PlanError("tuple " + tuple_name(m_tuple) + " does not build the closure");
  }
  if (closure(cfg, prefix) != cfg.all_points()) throw PlanError("tuple " + tuple_name(m_tuple) + " does not generate");
  std::vector<Build> out;
  Build cur(m);
  auto product = [&](auto&& self, int k) -> void {
    if (limit && out.size() >= limit) return;
    if (k == m) {
      out.push_back(cur);
      return;
    }
    for (const auto& seq : regions[k]) {
      cur[k] = seq;
      self(self, k + 1);
    }
  };
  product(product, 0);
  return out;
}

namespace {

class Compiler {
 public:
  Compiler(const Configuration& cfg, const std::vector<PointMask>& above)
      : cfg_(cfg), above_(above), below_(invert(above)), realized_(cfg.line_count(), false) {}

  CountingPlan run(const Tuple& m_tuple, std::uint64_t q, const Build& build) {
    CountingPlan plan;
    plan.config = cfg_.name();
    plan.q = q;
    for (Point p = 0; p < cfg_.points(); ++p) plan.names.push_back(point_name(p));
    steps_ = &plan.steps;
    for (std::size_t k = 0; k < m_tuple.size(); ++k) {
      const Point x = m_tuple[k];
      Step loop;
      loop.kind = StepKind::Loop;
      loop.var = x;
      loop.lo = popcount(below_[x]);
      loop.hi_offset = popcount(above_[x]);
      loop.bounds = relations(x);
      // a relational bound replaces the constant one on its side
      for (const auto& r : loop.bounds) (r.less ? loop.hi_offset : loop.lo) = 0;
      steps_->push_back(std::move(loop));
      assigned_ |= bit(x);
      checks(x, true);
      for (const auto& [p, li] : build.at(k)) {
        const auto& l = cfg_.lines()[li];
        Step s;
        s.kind = StepKind::Assign;
        s.var = p;
        for (Point y : l) {
          if (y != p) s.args.push_back(y);
        }
        steps_->push_back(std::move(s));
        assigned_ |= bit(p);
        realized_[li] = true;
        checks(p, false);
      }
    }
    if (assigned_ != cfg_.all_points()) throw PlanError("build leaves points unassigned");
    steps_->push_back(Step{});
    return plan;
  }

 private:
  // Tightest relations of x against assigned points: the minimal ones above
  // (listed first) and the maximal ones below.
  std::vector<Relation> relations(Point x) const {
    std::vector<Relation> out;
    const PointMask up = above_[x] & assigned_ & ~bit(x);
    const PointMask down = below_[x] & assigned_ & ~bit(x);
    for (Point y : points_of(up)) {
      if ((below_[y] & up) == 0) out.push_back({y, true, popcount(above_[x] & below_[y])});
    }
    for (Point y : points_of(down)) {
      if ((above_[y] & down) == 0) out.push_back({y, false, popcount(above_[y] & below_[x])});
    }
    return out;
  }

  bool on_realized(Point x, std::size_t li) const {
    const auto& l = cfg_.lines()[li];
    return realized_[li] && (l[0] == x || l[1] == x || l[2] == x);
  }

  // Earlier points are pairwise distinct already; x differs from y if the
  // order separates them, a realized line holds both, or realized lines
  // through x and through y meet in a third point.
  bool known_distinct(Point x, Point y) const {
    if ((above_[x] | below_[x]) & bit(y)) return true;
    for (std::size_t i = 0; i < cfg_.line_count(); ++i) {
      if (!on_realized(x, i)) continue;
      if (on_realized(y, i)) return true;
      for (std::size_t j = 0; j < cfg_.line_count(); ++j) {
        if (j == i || !on_realized(y, j)) continue;
        const auto& a = cfg_.lines()[i];
        const auto& b = cfg_.lines()[j];
        for (Point t : a) {
          if (t != x && t != y && std::find(b.begin(), b.end(), t) != b.end()) return true;
        }
      }
    }
    return false;
  }

  void checks(Point x, bool loop) {
    if (!loop) {
      for (const auto& r : relations(x)) {
        Step s;
        s.kind = StepKind::Bound;
        s.var = x;
        s.bounds = {r};
        steps_->push_back(std::move(s));
      }
    }
    Step neq;
    neq.kind = StepKind::Neq;
    neq.var = x;
    for (Point y : points_of(assigned_ & ~bit(x))) {
      if (!known_distinct(x, y)) neq.args.push_back(y);
    }
    if (!neq.args.empty()) steps_->push_back(std::move(neq));
    for (std::size_t i = 0; i < cfg_.line_count(); ++i) {
      const auto& l = cfg_.lines()[i];
      if (realized_[i]) continue;
      if (!(assigned_ & bit(l[0])) || !(assigned_ & bit(l[1])) || !(assigned_ & bit(l[2]))) continue;
      Step s;
      s.kind = StepKind::Line;
      s.args = {l[0], l[1], l[2]};
      steps_->push_back(std::move(s));
      realized_[i] = true;
    }
  }

  const Configuration& cfg_;
  const std::vector<PointMask>& above_;
  std::vector<PointMask> below_;
  std::vector<bool> realized_;
  PointMask assigned_ = 0;
  std::vector<Step>* steps_ = nullptr;
};

std::string origin_text(const Tuple& m_tuple, const OrbitChain& chain) {
  std::string s = "M=" + tuple_name(m_tuple) + " Z=" + tuple_name(chain.z) + " E=";
  for (std::size_t i = 0; i < chain.z.size(); ++i) {
    if (i) s += ',';
    s += chain.is_max[i] ? "max" : "min";
  }
  if (chain.truncated) s += " determined=" + std::to_string(chain.orbits.size());
  return s;
}

}  // namespace

namespace {

// variables numbered in order of definition, as the text reader does
CountingPlan renumber(CountingPlan plan) {
  std::vector<int> to(plan.vars(), -1);
  std::vector<std::string> names;
  for (const auto& s : plan.steps) {
    if (s.kind == StepKind::Loop || s.kind == StepKind::Assign) {
      to[s.var] = static_cast<int>(names.size());
      names.push_back(plan.names[s.var]);
    }
  }
  for (auto& s : plan.steps) {
    if (s.var >= 0) s.var = to[s.var];
    for (auto& r : s.bounds) r.other = to[r.other];
    for (auto& a : s.args) a = to[a];
  }
  plan.names = std::move(names);
  return plan;
}

}  // namespace

CountingPlan compile_plan(const Configuration& cfg, const Tuple& m_tuple, const std::vector<PointMask>& above,
                          std::uint64_t q, const Build& build) {
  return renumber(Compiler(cfg, above).run(m_tuple, q, build));
}

PlanSet generate_plans(const Configuration& cfg, const PlanGenOptions& options) {
  const auto group = automorphism_group(cfg);
  const auto trans = ordered_genset_transversal(cfg, group);
  if (trans.reps.empty()) throw PlanError("configuration has no generating tuple");
  const int m = static_cast<int>(trans.reps.front().size());
  if (m > kMaxPlanGenerators) {
    throw LimitError("plan generation supports at most " + std::to_string(kMaxPlanGenerators) +
                     " generating points, configuration needs " + std::to_string(m));
  }
  PlanSet out;
  out.transversal = trans.reps.size();
  std::unordered_set<std::string> keys;
  const int w = cfg.points();
  for (const auto& mt : trans.reps) {
    const auto builds = enumerate_builds(cfg, mt);
    struct Variant {
      std::vector<PointMask> above;
      OrbitChain chain;
    };
    std::vector<Variant> variants;
    std::set<std::pair<std::vector<PointMask>, std::uint64_t>> seen;
    // fully determined chains first so a coinciding truncated one is not flagged
    std::vector<int> depths{m};
    if (options.truncated_variants) {
      for (int d = 0; d < m; ++d) depths.push_back(d);
    }
    for (int d : depths) {
      Tuple z = mt;
      std::sort(z.begin(), z.end());
      do {
        for (unsigned e = 0; e < (1u << (m - 1)); ++e) {
          std::vector<bool> is_max(m, false);
          for (int i = 1; i < m; ++i) is_max[i] = (e >> (i - 1)) & 1u;
          auto chain = orbit_chain(group, z, is_max, d);
          auto above = chain_order(w, chain);
          if (seen.insert({above, chain.q}).second) variants.push_back({std::move(above), std::move(chain)});
        }
      } while (std::next_permutation(z.begin(), z.end()));
    }
    for (const auto& var : variants) {
      for (const auto& b : builds) {
        auto plan = compile_plan(cfg, mt, var.above, var.chain.q, b);
        ++out.compiled;
        if (!keys.insert(plan_key(plan)).second) continue;
        plan.truncated = var.chain.truncated;
        plan.origin = origin_text(mt, var.chain);
        if (plan.truncated) ++out.truncated;
        out.plans.push_back(std::move(plan));
      }
    }
  }
  return out;
}

CountingPlan first_plan(const Configuration& cfg) {
  const auto group = automorphism_group(cfg);
  const auto trans = ordered_genset_transversal(cfg, group);
  if (trans.reps.empty()) throw PlanError("configuration has no generating tuple");
  const auto& mt = trans.reps.front();
  const auto chain = orbit_chain(group, mt, std::vector<bool>(mt.size(), false));
  const auto builds = enumerate_builds(cfg, mt, 1);
  auto plan = compile_plan(cfg, mt, chain_order(cfg.points(), chain), chain.q, builds.front());
  plan.origin = origin_text(mt, chain);
  return plan;
}

}  // namespace tricount
