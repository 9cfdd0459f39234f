#include "tricount/plan.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "tricount/errors.hpp"

namespace tricount {

namespace {

std::string relation_text(const std::vector<std::string>& names, int var, const Relation& r) {
  std::string s = "BOUND " + names[var] + (r.less ? " < " : " > ") + names[r.other];
  if (r.gap > 0) s += " gap=" + std::to_string(r.gap);
  return s;
}

std::string join_names(const std::vector<std::string>& names, const std::vector<int>& vars) {
  std::string s;
  for (int v : vars) {
    if (!s.empty()) s += ',';
    s += names[v];
  }
  return s;
}

}  // namespace

std::string write_plan(const CountingPlan& plan) {
  std::ostringstream out;
  out << "PLAN cfg=" << plan.config << " Q=" << plan.q << '\n';
  if (!plan.origin.empty()) out << "# " << plan.origin << '\n';
  if (plan.truncated) out << "# truncated\n";
  const auto& n = plan.names;
  for (const auto& s : plan.steps) {
    switch (s.kind) {
      case StepKind::Loop:
        out << "LOOP " << n[s.var] << " lo=" << s.lo << " hi=v-" << s.hi_offset + 1 << '\n';
        for (const auto& r : s.bounds) out << relation_text(n, s.var, r) << '\n';
        break;
      case StepKind::Bound:
        out << relation_text(n, s.var, s.bounds.at(0)) << '\n';
        break;
      case StepKind::Assign:
        out << "ASSIGN " << n[s.var] << " = third(" << n[s.args.at(0)] << ',' << n[s.args.at(1)] << ")\n";
        break;
      case StepKind::Neq:
        out << "NEQ " << n[s.var] << " {" << join_names(n, s.args) << "}\n";
        break;
      case StepKind::Line:
        out << "LINE " << n[s.args.at(0)] << ' ' << n[s.args.at(1)] << ' ' << n[s.args.at(2)] << '\n';
        break;
      case StepKind::Count:
        out << "COUNT\n";
        break;
    }
  }
  return out.str();
}

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return {};
  return s.substr(a, s.find_last_not_of(" \t") - a + 1);
}

class PlanReader {
 public:
  CountingPlan read(std::istream& in) {
    std::string line;
    bool header = false;
    while (std::getline(in, line)) {
      ++lineno_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      const auto first = line.find_first_not_of(" \t");
      if (first == std::string::npos) continue;
      if (line[first] == '#') {
        const auto note = trim(line.substr(first + 1));
        if (note == "truncated") {
          plan_.truncated = true;
        } else if (header && plan_.origin.empty() && plan_.steps.empty()) {
          plan_.origin = note;
        }
        continue;
      }
      std::istringstream ls(line.substr(first));
      std::string op;
      ls >> op;
      if (!header) {
        if (op != "PLAN") fail("expected PLAN header");
        header_fields(ls);
        header = true;
        continue;
      }
      if (counted_) fail("step after COUNT");
      if (op == "LOOP") {
        loop(ls);
      } else if (op == "BOUND") {
        bound(ls);
      } else if (op == "ASSIGN") {
        assign(line.substr(first + 6));
      } else if (op == "NEQ") {
        neq(line.substr(first + 3));
      } else if (op == "LINE") {
        Step s;
        s.kind = StepKind::Line;
        std::string x, y, z, extra;
        if (!(ls >> x >> y >> z) || (ls >> extra)) fail("LINE takes three variables");
        s.args = {use(x), use(y), use(z)};
        plan_.steps.push_back(std::move(s));
      } else if (op == "COUNT") {
        plan_.steps.push_back(Step{});
        counted_ = true;
      } else {
        fail("unknown step '" + op + "'");
      }
    }
    if (!header) fail("empty plan");
    if (!counted_) fail("missing COUNT");
    try {
      validate_plan(plan_);
    } catch (const PlanError& e) {
      throw ParseError(lineno_, e.what());
    }
    return std::move(plan_);
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(lineno_, msg); }

  void header_fields(std::istringstream& ls) {
    std::string field;
    bool have_q = false;
    while (ls >> field) {
      if (field.rfind("cfg=", 0) == 0) {
        plan_.config = field.substr(4);
      } else if (field.rfind("Q=", 0) == 0) {
        plan_.q = number(field.substr(2));
        if (plan_.q == 0) fail("Q must be positive");
        have_q = true;
      } else {
        fail("unknown header field '" + field + "'");
      }
    }
    if (!have_q) fail("header lacks Q=");
  }

  std::uint64_t number(const std::string& s) const {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      fail("bad number '" + s + "'");
    }
    return std::stoull(s);
  }

  static bool valid_name(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
      return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
    });
  }

  int define(const std::string& name) {
    if (!valid_name(name)) fail("bad variable name '" + name + "'");
    if (index_.count(name)) fail("variable '" + name + "' assigned twice");
    const int id = static_cast<int>(plan_.names.size());
    index_[name] = id;
    plan_.names.push_back(name);
    return id;
  }

  int use(const std::string& name) const {
    const auto it = index_.find(name);
    if (it == index_.end()) fail("variable '" + name + "' used before assignment");
    return it->second;
  }

  void loop(std::istringstream& ls) {
    std::string name, lo, hi, extra;
    if (!(ls >> name >> lo >> hi) || (ls >> extra)) fail("LOOP takes a variable, lo= and hi=");
    if (lo.rfind("lo=", 0) != 0 || hi.rfind("hi=v-", 0) != 0) fail("LOOP bounds read lo=<k> hi=v-<k>");
    Step s;
    s.kind = StepKind::Loop;
    s.lo = static_cast<int>(number(lo.substr(3)));
    const auto off = number(hi.substr(5));
    if (off == 0) fail("upper bound must be at most v-1");
    s.hi_offset = static_cast<int>(off - 1);
    s.var = define(name);
    plan_.steps.push_back(std::move(s));
  }

  void bound(std::istringstream& ls) {
    std::string x, rel, y, gap;
    if (!(ls >> x >> rel >> y)) fail("BOUND takes x <|> y");
    if (rel != "<" && rel != ">") fail("BOUND relation must be < or >");
    Relation r;
    r.less = rel == "<";
    r.other = use(y);
    if (ls >> gap) {
      if (gap.rfind("gap=", 0) != 0) fail("expected gap=<g>");
      r.gap = static_cast<int>(number(gap.substr(4)));
      std::string extra;
      if (ls >> extra) fail("trailing text after BOUND");
    }
    const int var = use(x);
    if (var == r.other) fail("BOUND relates a variable to itself");
    // bounds directly after the loop of the same variable widen its range
    if (!plan_.steps.empty()) {
      auto& last = plan_.steps.back();
      if (last.kind == StepKind::Loop && last.var == var) {
        last.bounds.push_back(r);
        return;
      }
    }
    Step s;
    s.kind = StepKind::Bound;
    s.var = var;
    s.bounds = {r};
    plan_.steps.push_back(std::move(s));
  }

  void assign(const std::string& rest) {
    // "x = third(y,z)"
    std::string t;
    for (char c : rest) {
      if (c != ' ' && c != '\t') t += c;
    }
    const auto eq = t.find("=third(");
    if (eq == std::string::npos || t.back() != ')') fail("ASSIGN reads x = third(y,z)");
    const auto comma = t.find(',', eq);
    if (comma == std::string::npos) fail("ASSIGN reads x = third(y,z)");
    const std::string y = t.substr(eq + 7, comma - eq - 7);
    const std::string z = t.substr(comma + 1, t.size() - comma - 2);
    Step s;
    s.kind = StepKind::Assign;
    s.args = {use(y), use(z)};
    if (s.args[0] == s.args[1]) fail("ASSIGN needs two different variables");
    s.var = define(t.substr(0, eq));
    plan_.steps.push_back(std::move(s));
  }

  void neq(const std::string& rest) {
    const auto open = rest.find('{'), close = rest.find('}');
    if (open == std::string::npos || close == std::string::npos || close < open) fail("NEQ reads x {a,b}");
    std::string x;
    std::istringstream(rest.substr(0, open)) >> x;
    Step s;
    s.kind = StepKind::Neq;
    s.var = use(x);
    std::string item;
    std::istringstream items(rest.substr(open + 1, close - open - 1));
    while (std::getline(items, item, ',')) {
      item.erase(std::remove_if(item.begin(), item.end(), [](char c) { return c == ' ' || c == '\t'; }),
                 item.end());
      if (!item.empty()) s.args.push_back(use(item));
    }
    if (s.args.empty()) fail("NEQ with empty set");
    plan_.steps.push_back(std::move(s));
  }

  CountingPlan plan_;
  std::map<std::string, int> index_;
  std::size_t lineno_ = 0;
  bool counted_ = false;
};

}  // namespace

CountingPlan read_plan(std::istream& in) { return PlanReader().read(in); }

CountingPlan read_plan(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_plan(in);
}

CountingPlan read_plan_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_plan(in);
}

void validate_plan(const CountingPlan& plan) {
  const int n = plan.vars();
  if (plan.q == 0) throw PlanError("Q must be positive");
  if (plan.steps.empty() || plan.steps.front().kind != StepKind::Loop) throw PlanError("plan must start with a LOOP");
  if (plan.steps.back().kind != StepKind::Count) throw PlanError("plan must end with COUNT");
  std::vector<bool> set(n, false);
  auto need = [&](int v) {
    if (v < 0 || v >= n || !set[v]) throw PlanError("variable used before assignment");
  };
  for (std::size_t i = 0; i < plan.steps.size(); ++i) {
    const auto& s = plan.steps[i];
    if (s.kind == StepKind::Count && i + 1 != plan.steps.size()) throw PlanError("COUNT must be last");
    if (s.kind == StepKind::Loop || s.kind == StepKind::Assign) {
      if (s.kind == StepKind::Assign) {
        if (s.args.size() != 2 || s.args[0] == s.args[1]) throw PlanError("ASSIGN needs two variables");
        need(s.args[0]);
        need(s.args[1]);
      } else {
        if (s.lo < 0 || s.hi_offset < 0) throw PlanError("negative loop offset");
        for (const auto& r : s.bounds) need(r.other);
      }
      if (s.var < 0 || s.var >= n || set[s.var]) throw PlanError("variable assigned twice");
      set[s.var] = true;
    } else if (s.kind == StepKind::Bound) {
      need(s.var);
      if (s.bounds.size() != 1) throw PlanError("BOUND carries one relation");
      need(s.bounds[0].other);
    } else if (s.kind == StepKind::Neq) {
      need(s.var);
      for (int a : s.args) need(a);
    } else if (s.kind == StepKind::Line) {
      if (s.args.size() != 3) throw PlanError("LINE needs three variables");
      for (int a : s.args) need(a);
    }
  }
  for (int v = 0; v < n; ++v) {
    if (!set[v]) throw PlanError("variable never assigned");
  }
}

std::string plan_key(const CountingPlan& plan) {
  std::vector<int> rename(plan.vars(), -1);
  int next = 0;
  for (const auto& s : plan.steps) {
    if (s.kind == StepKind::Loop || s.kind == StepKind::Assign) rename[s.var] = next++;
  }
  std::string key = std::to_string(plan.q);
  auto put = [&](int x) {
    key += ' ';
    key += std::to_string(rename[x]);
  };
  auto put_sorted = [&](std::vector<int> vars) {
    for (auto& x : vars) x = rename[x];
    std::sort(vars.begin(), vars.end());
    for (int x : vars) {
      key += ' ';
      key += std::to_string(x);
    }
  };
  auto put_relations = [&](std::vector<Relation> rs) {
    for (auto& r : rs) r.other = rename[r.other];
    std::sort(rs.begin(), rs.end(), [](const Relation& a, const Relation& b) {
      return std::tie(a.other, a.less, a.gap) < std::tie(b.other, b.less, b.gap);
    });
    for (const auto& r : rs) key += (r.less ? " <" : " >") + std::to_string(r.other) + ":" + std::to_string(r.gap);
  };
  for (const auto& s : plan.steps) {
    switch (s.kind) {
      case StepKind::Loop:
        key += "|L";
        put(s.var);
        key += " " + std::to_string(s.lo) + " " + std::to_string(s.hi_offset);
        put_relations(s.bounds);
        break;
      case StepKind::Bound:
        key += "|B";
        put(s.var);
        put_relations(s.bounds);
        break;
      case StepKind::Assign:
        key += "|A";
        put(s.var);
        put_sorted(s.args);
        break;
      case StepKind::Neq:
        key += "|N";
        put(s.var);
        put_sorted(s.args);
        break;
      case StepKind::Line:
        key += "|D";
        put_sorted(s.args);
        break;
      case StepKind::Count:
        key += "|C";
        break;
    }
  }
  return key;
}

namespace {

struct Printer {
  const CountingPlan& plan;
  std::ostringstream out;
  int depth = 0;

  const std::string& name(int v) const { return plan.names[v]; }

  void line(const std::string& s) { out << std::string(2 * depth, ' ') << s << '\n'; }

  static std::string offset(const std::string& base, int k) {
    if (k == 0) return base;
    return base + (k > 0 ? "+" : "-") + std::to_string(k > 0 ? k : -k);
  }

  // Relational part of a loop bound; `sign` is +1 for lower, -1 for upper.
  std::string relational(const std::vector<Relation>& rs, int sign) const {
    std::vector<std::pair<std::string, int>> terms;
    for (const auto& r : rs) terms.emplace_back(name(r.other), sign * (1 + r.gap));
    std::sort(terms.begin(), terms.end());
    if (terms.size() == 1) return offset(terms[0].first, terms[0].second);
    const bool same = std::all_of(terms.begin(), terms.end(), [&](const auto& t) { return t.second == terms[0].second; });
    std::string s = sign > 0 ? "max{" : "min{";
    for (std::size_t i = 0; i < terms.size(); ++i) {
      if (i) s += ',';
      s += same ? terms[i].first : offset(terms[i].first, terms[i].second);
    }
    s += '}';
    return same ? offset(s, terms[0].second) : s;
  }

  // least value / least distance from v-1 each variable can take, as far as
  // loop ranges and checks show; decides whether a constant bound is implied
  std::vector<int> floor_, ceil_off_;

  std::string loop_header(const Step& s) {
    std::vector<Relation> lower, upper;
    int implied_lo = 0, implied_hi = 0;
    for (const auto& r : s.bounds) {
      (r.less ? upper : lower).push_back(r);
      if (r.less) {
        implied_hi = std::max(implied_hi, ceil_off_[r.other] + 1 + r.gap);
      } else {
        implied_lo = std::max(implied_lo, floor_[r.other] + 1 + r.gap);
      }
    }
    std::string lo = std::to_string(s.lo);
    if (!lower.empty()) {
      lo = relational(lower, +1);
      if (s.lo > implied_lo) lo = "max{" + std::to_string(s.lo) + "," + lo + "}";
    }
    std::string hi = offset("v", -(s.hi_offset + 1));
    if (!upper.empty()) {
      const auto rel = relational(upper, -1);
      hi = s.hi_offset > implied_hi ? "min{" + hi + "," + rel + "}" : rel;
    }
    floor_[s.var] = std::max(s.lo, implied_lo);
    ceil_off_[s.var] = std::max(s.hi_offset, implied_hi);
    return "for " + name(s.var) + " ← " + lo + " to " + hi;
  }

  std::string violation(int var, const Relation& r) const {
    // var < other fails when other-gap <= var; var > other fails when var <= other+gap
    if (r.less) return offset(name(r.other), -r.gap) + " ≤ " + name(var);
    return name(var) + " ≤ " + offset(name(r.other), r.gap);
  }

  void run() {
    floor_.assign(plan.vars(), 0);
    ceil_off_.assign(plan.vars(), 0);
    line("r ← 0");
    const auto& steps = plan.steps;
    for (std::size_t i = 0; i < steps.size(); ++i) {
      const auto& s = steps[i];
      if (s.kind == StepKind::Loop) {
        line(loop_header(s));
        ++depth;
      } else if (s.kind == StepKind::Assign) {
        auto a = s.args;
        std::sort(a.begin(), a.end(), [&](int x, int y) { return name(x) > name(y); });
        line(name(s.var) + " ← B2(" + name(a[0]) + "," + name(a[1]) + ")");
      } else if (s.kind == StepKind::Bound || s.kind == StepKind::Neq) {
        // one condition line per variable
        std::vector<std::string> parts;
        const int var = s.var;
        std::size_t j = i;
        for (; j < steps.size() && steps[j].var == var &&
               (steps[j].kind == StepKind::Bound || steps[j].kind == StepKind::Neq);
             ++j) {
          const auto& t = steps[j];
          if (t.kind == StepKind::Bound) {
            const auto& r = t.bounds[0];
            parts.push_back(violation(var, r));
            if (r.less) {
              ceil_off_[var] = std::max(ceil_off_[var], ceil_off_[r.other] + 1 + r.gap);
            } else {
              floor_[var] = std::max(floor_[var], floor_[r.other] + 1 + r.gap);
            }
          } else {
            std::vector<std::string> others;
            for (int a : t.args) others.push_back(name(a));
            std::sort(others.begin(), others.end());
            if (others.size() == 1) {
              parts.push_back(name(var) + " = " + others[0]);
            } else {
              std::string set;
              for (const auto& o : others) set += (set.empty() ? "" : ",") + o;
              parts.push_back(name(var) + " ∈ {" + set + "}");
            }
          }
        }
        std::string cond;
        for (const auto& p : parts) cond += (cond.empty() ? "" : " ∨ ") + p;
        line("if " + cond + " continue");
        i = j - 1;
      } else if (s.kind == StepKind::Line) {
        auto a = s.args;
        std::sort(a.begin(), a.end(), [&](int x, int y) { return name(x) < name(y); });
        line("if B3(" + name(a[0]) + "," + name(a[1]) + "," + name(a[2]) + ") = 0 continue");
      } else {
        line("r ← r + 1");
      }
    }
    depth = 0;
    line(plan.q == 1 ? "return r" : "return r/" + std::to_string(plan.q));
  }
};

}  // namespace

std::string pretty_print(const CountingPlan& plan) {
  Printer p{plan, {}, 0, {}, {}};
  p.run();
  return p.out.str();
}

}  // namespace tricount
