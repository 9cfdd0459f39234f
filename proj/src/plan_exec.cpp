#include "tricount/plan_exec.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "tricount/errors.hpp"

namespace tricount {

CompiledPlan::CompiledPlan(const CountingPlan& plan, ExecOptions options)
    : vars_(plan.vars()), q_(plan.q), config_(plan.config) {
  validate_plan(plan);
  auto relations = [&](Op& op, const std::vector<Relation>& rs) {
    op.first = static_cast<int>(pool_.size());
    op.size = static_cast<int>(rs.size());
    // (other, signed offset): lower bound other+1+gap, upper other-1-gap
    for (const auto& r : rs) {
      pool_.push_back(r.other);
      pool_.push_back(r.less ? -(1 + r.gap) : 1 + r.gap);
    }
  };
  for (const auto& s : plan.steps) {
    Op op{s.kind, s.var, -1, -1, -1, 0, 0, 0, 0};
    switch (s.kind) {
      case StepKind::Loop:
        if (options.wide_bounds) {
          ops_.push_back(op);
          if (!s.bounds.empty()) {
            Op check = op;
            check.kind = StepKind::Bound;
            relations(check, s.bounds);
            ops_.push_back(check);
          }
          continue;
        }
        op.lo = s.lo;
        op.hi_off = s.hi_offset;
        relations(op, s.bounds);
        break;
      case StepKind::Bound:
        relations(op, s.bounds);
        break;
      case StepKind::Assign:
        op.a = s.args[0];
        op.b = s.args[1];
        break;
      case StepKind::Neq:
        op.first = static_cast<int>(pool_.size());
        op.size = static_cast<int>(s.args.size());
        pool_.insert(pool_.end(), s.args.begin(), s.args.end());
        break;
      case StepKind::Line:
        op.a = s.args[0];
        op.b = s.args[1];
        op.c = s.args[2];
        break;
      case StepKind::Count:
        break;
    }
    ops_.push_back(op);
  }
  int last = -1;
  for (std::size_t i = 0; i < ops_.size(); ++i) {
    parent_.push_back(last);
    if (ops_[i].kind == StepKind::Loop) last = static_cast<int>(i);
  }
}

namespace {

struct Machine {
  const CompiledPlan::Op* ops;
  const int* pool;
  const int* parent;  // innermost loop strictly before each op, or -1
  const Point* table;
  int v;
  int* val;
  int* hi;  // current upper end per loop op

  bool bounds_hold(const CompiledPlan::Op& op) const {
    const int x = val[op.var];
    for (int k = 0; k < op.size; ++k) {
      const int y = val[pool[op.first + 2 * k]];
      const int off = pool[op.first + 2 * k + 1];
      if (off > 0 ? x < y + off : x > y + off) return false;
    }
    return true;
  }

  // A failed test or a count resumes the innermost loop before it.
  std::uint64_t run() {
    std::uint64_t r = 0;
    int pc = 0;
    for (;;) {
      const auto& op = ops[pc];
      bool ok = true;
      switch (op.kind) {
        case StepKind::Loop: {
          int lo = op.lo, top = v - 1 - op.hi_off;
          for (int k = 0; k < op.size; ++k) {
            const int y = val[pool[op.first + 2 * k]];
            const int off = pool[op.first + 2 * k + 1];
            if (off > 0) {
              lo = std::max(lo, y + off);
            } else {
              top = std::min(top, y + off);
            }
          }
          val[op.var] = lo;
          hi[pc] = top;
          ok = lo <= top;
          break;
        }
        case StepKind::Bound:
          ok = bounds_hold(op);
          break;
        case StepKind::Assign: {
          const Point t = table[val[op.a] * v + val[op.b]];
          val[op.var] = t;
          ok = t != v;  // equal operands, only from unchecked plans
          break;
        }
        case StepKind::Neq: {
          const int x = val[op.var];
          for (int k = 0; k < op.size && ok; ++k) ok = val[pool[op.first + k]] != x;
          break;
        }
        case StepKind::Line:
          ok = table[val[op.a] * v + val[op.b]] == val[op.c];
          break;
        case StepKind::Count:
          ++r;
          ok = false;
          break;
      }
      if (ok) {
        ++pc;
        continue;
      }
      int l = parent[pc];
      while (l >= 0 && ++val[ops[l].var] > hi[l]) l = parent[l];
      if (l < 0) return r;
      pc = l + 1;
    }
  }
};

}  // namespace

std::uint64_t CompiledPlan::raw_count(const SteinerTripleSystem& sts) const {
  std::vector<int> val(vars_, 0), hi(ops_.size(), 0);
  Machine m{ops_.data(), pool_.data(), parent_.data(), sts.pair_table(), sts.order(), val.data(), hi.data()};
  return m.run();
}

std::uint64_t CompiledPlan::count(const SteinerTripleSystem& sts) const {
  const auto r = raw_count(sts);
  if (r % q_ != 0) {
    throw PlanError("plan for " + config_ + " counted r=" + std::to_string(r) + " on STS(" +
                    std::to_string(sts.order()) + "), not divisible by Q=" + std::to_string(q_));
  }
  return r / q_;
}

std::uint64_t execute_plan(const CountingPlan& plan, const SteinerTripleSystem& sts, ExecOptions options) {
  return CompiledPlan(plan, options).count(sts);
}

namespace {

// The nine hand-written counters, letter for letter. B2 is the pair table,
// B3 a lookup in it.
struct Listing {
  const Point* t;
  int v;
  int B2(int x, int y) const { return t[x * v + y]; }
  bool B3(int x, int y, int z) const { return t[x * v + y] == z; }

  std::uint64_t fano() const {
    std::uint64_t r = 0;
    for (int a = 2; a <= v - 4; ++a) {
      for (int b = 1; b <= a - 1; ++b) {
        const int e = B2(b, a);
        if (e <= a) continue;
        for (int c = 0; c <= b - 1; ++c) {
          const int g = B2(c, a);
          if (g <= a) continue;
          const int d = B2(e, c);
          if (d <= a) continue;
          if (!B3(b, d, g)) continue;
          const int f = B2(g, e);
          if (f <= b) continue;
          if (!B3(a, d, f)) continue;
          if (!B3(b, c, f)) continue;
          ++r;
        }
      }
    }
    return r;
  }

  std::uint64_t pasch() const {
    std::uint64_t r = 0;
    for (int a = 0; a <= v - 6; ++a) {
      for (int b = a + 1; b <= v - 2; ++b) {
        const int e = B2(b, a);
        if (e <= a) continue;
        for (int f = std::max(b, e) + 1; f <= v - 1; ++f) {
          const int c = B2(f, a);
          if (f <= c || c <= a) continue;
          const int d = B2(f, e);
          if (d <= a) continue;
          if (!B3(b, c, d)) continue;
          ++r;
        }
      }
    }
    return r;
  }

  std::uint64_t mitre() const {
    std::uint64_t r = 0;
    for (int a = 0; a <= v - 3; ++a) {
      for (int c = a + 1; c <= v - 2; ++c) {
        const int f = B2(c, a);
        for (int e = std::max(c, f) + 1; e <= v - 1; ++e) {
          const int g = B2(f, e);
          const int b = B2(g, a);
          if (e <= b) continue;
          const int d = B2(g, c);
          if (e <= d) continue;
          if (!B3(b, d, e)) continue;
          ++r;
        }
      }
    }
    return r;
  }

  std::uint64_t fano_line() const {
    std::uint64_t r = 0;
    for (int c = 2; c <= v - 2; ++c) {
      for (int e = 0; e <= c - 2; ++e) {
        const int b = B2(c, e);
        for (int f = e + 1; f <= c - 1; ++f) {
          if (f == b) continue;
          const int g = B2(f, b);
          if (g <= c) continue;
          const int d = B2(e, g);
          if (!B3(c, d, f)) continue;
          const int a = B2(f, e);
          if (!B3(a, c, g)) continue;
          ++r;
        }
      }
    }
    return r;
  }

  std::uint64_t crown() const {
    std::uint64_t r = 0;
    for (int f = 0; f <= v - 2; ++f) {
      for (int e = 0; e <= v - 1; ++e) {
        if (e == f) continue;
        const int h = B2(f, e);
        for (int g = f + 1; g <= v - 1; ++g) {
          if (g == e || g == h) continue;
          const int d = B2(e, g);
          const int b = B2(f, d);
          const int c = B2(h, g);
          if (c == b) continue;
          const int a = B2(f, g);
          if (!B3(a, b, c)) continue;
          ++r;
        }
      }
    }
    return r;
  }

  std::uint64_t hexagon() const {
    std::uint64_t r = 0;
    for (int b = 0; b <= v - 6; ++b) {
      for (int c = b + 2; c <= v - 1; ++c) {
        const int a = B2(c, b);
        for (int d = b + 1; d <= c - 1; ++d) {
          if (d == a) continue;
          const int e = B2(d, a);
          if (e <= b) continue;
          const int h = B2(d, b);
          const int g = B2(h, c);
          if (g <= b || g == e) continue;
          const int f = B2(h, e);
          if (f <= b) continue;
          if (!B3(a, f, g)) continue;
          ++r;
        }
      }
    }
    return r;
  }

  std::uint64_t prism() const {
    std::uint64_t r = 0;
    for (int a = 1; a <= v - 2; ++a) {
      for (int f = 0; f <= a - 1; ++f) {
        for (int b = 0; b <= v - 1; ++b) {
          if (b == a || b == f) continue;
          const int e = B2(b, a);
          if (e == f) continue;
          const int c = B2(f, b);
          const int h = B2(e, c);
          if (h <= a) continue;
          for (int d = e + 1; d <= v - 1; ++d) {
            if (d == a || d == b || d == c || d == f || d == h) continue;
            const int g = B2(d, a);
            if (g == c || g == f || g == h) continue;
            const int i = B2(h, d);
            if (i == b || i == f) continue;
            if (!B3(f, g, i)) continue;
            ++r;
          }
        }
      }
    }
    return r;
  }

  std::uint64_t grid() const {
    std::uint64_t r = 0;
    for (int a = 0; a <= v - 9; ++a) {
      for (int b = a + 1; b <= v - 3; ++b) {
        const int d = B2(b, a);
        if (d <= b) continue;
        for (int e = d + 1; e <= v - 1; ++e) {
          const int g = B2(e, a);
          if (e <= g || g <= a) continue;
          for (int c = a + 1; c <= v - 1; ++c) {
            if (c == b || c == d || c == e || c == g) continue;
            const int f = B2(c, b);
            if (f <= a || f == e || f == g) continue;
            const int h = B2(e, c);
            if (h <= a || h == d) continue;
            const int i = B2(g, f);
            if (i <= a || i == d || i == h) continue;
            if (!B3(d, h, i)) continue;
            ++r;
          }
        }
      }
    }
    return r;
  }

  std::uint64_t moebius_kantor() const {
    std::uint64_t r = 0;
    for (int a = 1; a <= v - 6; ++a) {
      for (int b = a + 1; b <= v - 1; ++b) {
        const int g = B2(b, a);
        if (g <= a) continue;
        for (int c = 0; c <= a - 1; ++c) {
          const int d = B2(c, a);
          if (d <= a) continue;
          const int h = B2(c, b);
          if (h <= a) continue;
          const int e = B2(d, b);
          if (e <= c) continue;
          if (!B3(e, g, h)) continue;
          const int f = B2(e, a);
          if (f <= a) continue;
          if (!B3(c, f, g)) continue;
          if (!B3(d, f, h)) continue;
          ++r;
        }
      }
    }
    return r;
  }
};

std::uint64_t choose(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

std::uint64_t count_builtin(std::string_view name, const SteinerTripleSystem& sts) {
  const Listing l{sts.pair_table(), sts.order()};
  if (name == "fano") return l.fano();
  if (name == "pasch") return l.pasch();
  if (name == "mitre") return l.mitre();
  if (name == "fano-line") return l.fano_line();
  if (name == "crown") return l.crown();
  if (name == "hexagon") return l.hexagon();
  if (name == "prism") return l.prism();
  if (name == "grid") return l.grid();
  if (name == "moebius-kantor") return l.moebius_kantor();
  throw std::invalid_argument("no built-in counter for '" + std::string(name) + "'");
}

bool oracle_admits(const Configuration& cfg, const SteinerTripleSystem& sts) {
  const auto b = cfg.line_count();
  const auto n = sts.block_count();
  return (b <= 8 && n <= 40) || (b <= 5 && n <= 100);
}

std::uint64_t count_oracle(const Configuration& cfg, const SteinerTripleSystem& sts) {
  if (!oracle_admits(cfg, sts)) {
    throw LimitError("subset oracle refuses " + std::to_string(cfg.line_count()) + "-line configurations on " +
                     std::to_string(sts.block_count()) + " blocks");
  }
  const auto target = canonical_form(cfg);
  auto degrees = cfg.degrees();
  std::sort(degrees.begin(), degrees.end());
  const int w = cfg.points();
  const int b = static_cast<int>(cfg.line_count());
  const auto blocks = sts.blocks();
  const int n = static_cast<int>(blocks.size());
  std::vector<int> mult(sts.order(), 0);
  std::vector<Triple> pick;
  int support = 0;
  std::uint64_t count = 0;
  // block subsets in index order, pruned on the number of covered points
  auto rec = [&](auto&& self, int from) -> void {
    if (static_cast<int>(pick.size()) == b) {
      if (support != w) return;
      std::vector<int> d;
      for (int m : mult) {
        if (m) d.push_back(m);
      }
      std::sort(d.begin(), d.end());
      if (d != degrees) return;
      if (canonical_form(compact_configuration(pick)) == target) ++count;
      return;
    }
    for (int i = from; i <= n - (b - static_cast<int>(pick.size())); ++i) {
      const auto& t = blocks[i];
      int fresh = 0;
      for (Point p : t) fresh += mult[p] == 0;
      if (support + fresh > w) continue;
      for (Point p : t) ++mult[p];
      support += fresh;
      pick.push_back(t);
      self(self, i + 1);
      pick.pop_back();
      support -= fresh;
      for (Point p : t) --mult[p];
    }
  };
  rec(rec, 0);
  return count;
}

std::vector<std::vector<int>> list_occurrences(const Configuration& cfg, const SteinerTripleSystem& sts) {
  const int v = sts.order();
  const int w = cfg.points();
  const int b = static_cast<int>(cfg.line_count());
  const int m = minimum_generating_sets(cfg).m;
  if (choose(v, m) > 20'000'000) {
    throw LimitError("extension lister refuses C(" + std::to_string(v) + "," + std::to_string(m) + ") start sets");
  }
  const auto target = canonical_form(cfg);
  auto degrees = cfg.degrees();
  std::sort(degrees.begin(), degrees.end());
  const int max_degree = degrees.back();
  const auto blocks = sts.blocks();
  // block index by pair
  std::vector<int> block_of(static_cast<std::size_t>(v) * v, -1);
  for (int i = 0; i < static_cast<int>(blocks.size()); ++i) {
    const auto& [x, y, z] = blocks[i];
    block_of[x * v + y] = block_of[y * v + x] = i;
    block_of[x * v + z] = block_of[z * v + x] = i;
    block_of[y * v + z] = block_of[z * v + y] = i;
  }

  std::vector<std::vector<int>> out;
  std::vector<Point> start(m);
  std::vector<int> chosen;  // block indices of the current extension
  std::vector<int> in_set(v, 0);
  std::vector<Point> pts;
  std::set<std::vector<int>> branch_seen;

  // closure of `gen` under the lines of `sub`
  auto generates = [&](const std::vector<Point>& gen, const std::vector<int>& sub, const std::vector<Point>& all) {
    std::vector<char> have(v, 0);
    for (Point p : gen) have[p] = 1;
    std::size_t n = gen.size();
    bool grew = true;
    while (grew) {
      grew = false;
      for (int bi : sub) {
        const auto& t = blocks[bi];
        const int inside = have[t[0]] + have[t[1]] + have[t[2]];
        if (inside == 2) {
          for (Point p : t) have[p] = 1;
          ++n;
          grew = true;
        }
      }
    }
    return n == all.size();
  };

  auto accept = [&]() {
    std::vector<int> sub(chosen);
    std::sort(sub.begin(), sub.end());
    std::vector<int> d(v, 0);
    std::vector<Triple> lines;
    for (int bi : sub) {
      lines.push_back(blocks[bi]);
      for (Point p : blocks[bi]) ++d[p];
    }
    std::vector<int> dd;
    for (int x : d) {
      if (x) dd.push_back(x);
    }
    std::sort(dd.begin(), dd.end());
    if (dd != degrees) return;
    // the start set must be the least m-subset that generates the occurrence
    std::vector<Point> all(pts);
    std::sort(all.begin(), all.end());
    std::vector<bool> sel(all.size(), false);
    std::fill(sel.begin(), sel.begin() + m, true);
    do {
      std::vector<Point> gen;
      for (std::size_t i = 0; i < all.size(); ++i) {
        if (sel[i]) gen.push_back(all[i]);
      }
      if (generates(gen, sub, all)) {
        if (gen != start) return;
        if (canonical_form(compact_configuration(lines)) != target) return;
        if (branch_seen.insert(sub).second) out.push_back(sub);
        return;
      }
    } while (std::prev_permutation(sel.begin(), sel.end()));
  };

  // include/exclude branching on one candidate block at a time, so every
  // block set reachable from the start set is met once
  std::vector<char> excluded(blocks.size(), 0), taken(blocks.size(), 0);
  std::vector<int> deg(v, 0);
  auto extend = [&](auto&& self) -> void {
    const int left = b - static_cast<int>(chosen.size());
    if (left == 0) {
      if (static_cast<int>(pts.size()) == w) accept();
      return;
    }
    // each further block brings at most one new point
    if (w - static_cast<int>(pts.size()) > left) return;
    int cand = -1;
    Point fresh = -1;
    for (std::size_t i = 0; i < pts.size() && cand < 0; ++i) {
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        const int bi = block_of[pts[i] * v + pts[j]];
        if (taken[bi] || excluded[bi]) continue;
        const auto& t = blocks[bi];
        if (deg[t[0]] == max_degree || deg[t[1]] == max_degree || deg[t[2]] == max_degree) continue;
        fresh = -1;
        for (Point p : blocks[bi]) {
          if (!in_set[p]) fresh = p;
        }
        if (fresh >= 0 && static_cast<int>(pts.size()) == w) continue;
        cand = bi;
        break;
      }
    }
    if (cand < 0) return;
    chosen.push_back(cand);
    taken[cand] = 1;
    for (Point p : blocks[cand]) ++deg[p];
    if (fresh >= 0) {
      in_set[fresh] = 1;
      pts.push_back(fresh);
    }
    self(self);
    if (fresh >= 0) {
      in_set[fresh] = 0;
      pts.pop_back();
    }
    for (Point p : blocks[cand]) --deg[p];
    taken[cand] = 0;
    chosen.pop_back();
    excluded[cand] = 1;
    self(self);
    excluded[cand] = 0;
  };

  auto subsets = [&](auto&& self, int k, Point from) -> void {
    if (k == m) {
      branch_seen.clear();
      pts.assign(start.begin(), start.end());
      for (Point p : start) in_set[p] = 1;
      extend(extend);
      for (Point p : start) in_set[p] = 0;
      return;
    }
    for (Point p = from; p < v; ++p) {
      start[k] = p;
      self(self, k + 1, p + 1);
    }
  };
  subsets(subsets, 0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace tricount
