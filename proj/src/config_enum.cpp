#include "tricount/config_enum.hpp"

#include <algorithm>
#include <set>

#include "tricount/errors.hpp"

namespace tricount {

namespace {

struct Limits {
  int lines = 0;       // target line count
  int max_points = 0;  // point budget
  int max_degree = 0;  // 0 = unbounded
  bool full = false;   // prune on deficiency towards min degree 2
};

std::array<int, 3> degree_key(const Configuration& c, const Triple& l) {
  std::array<int, 3> k{c.degree(l[0]), c.degree(l[1]), c.degree(l[2])};
  std::sort(k.begin(), k.end());
  return k;
}

Configuration without_line(const Configuration& c, int idx) {
  std::vector<Triple> rest;
  rest.reserve(c.line_count() - 1);
  for (std::size_t i = 0; i < c.line_count(); ++i) {
    if (static_cast<int>(i) != idx) rest.push_back(c.lines()[i]);
  }
  return compact_configuration(rest);
}

// Canonical augmentation: a child C = P + L is kept only if L lies in the
// same class as the line C's canonical labeling puts last, i.e. if deleting
// L gives the same parent class as deleting that line.
bool is_canonical_parent(const Configuration& child, const CanonicalLabeling& lab, int added) {
  const int last = lab.last_line;
  if (added == last) return true;
  const auto& lines = child.lines();
  if (degree_key(child, lines[added]) != degree_key(child, lines[last])) return false;
  return canonical_form(without_line(child, added)) == canonical_form(without_line(child, last));
}

bool admissible(const Configuration& c, int level, const Limits& lim) {
  if (c.points() > lim.max_points) return false;
  if (lim.max_degree > 0) {
    for (int d : c.degrees()) {
      if (d > lim.max_degree) return false;
    }
  }
  if (lim.full) {
    int deficiency = 0;
    for (int d : c.degrees()) deficiency += std::max(0, 2 - d);
    if (deficiency > 3 * (lim.lines - level)) return false;
  }
  return true;
}

std::vector<Configuration> children(const Configuration& parent, int level, const Limits& lim) {
  const int w = parent.points();
  std::set<std::vector<Triple>> seen;
  std::vector<Configuration> out;
  const int top = w + 3;
  for (Point a = 0; a < top; ++a) {
    if (a > w) break;
    for (Point b = a + 1; b < top; ++b) {
      if (b > std::max(a + 1, w)) break;
      if (b < w && parent.collinear(a, b)) continue;
      for (Point c = b + 1; c < top; ++c) {
        // new points are appended densely
        if (c > std::max(b + 1, w)) break;
        if (c < w && (parent.collinear(a, c) || parent.collinear(b, c))) continue;
        const int new_w = std::max(w, c + 1);
        if (new_w > lim.max_points) continue;
        if (lim.max_degree > 0) {
          if ((a < w && parent.degree(a) >= lim.max_degree) || (b < w && parent.degree(b) >= lim.max_degree) ||
              (c < w && parent.degree(c) >= lim.max_degree)) {
            continue;
          }
        }
        std::vector<Triple> lines(parent.lines());
        const Triple added{a, b, c};
        lines.push_back(added);
        Configuration child(new_w, std::move(lines));
        if (!admissible(child, level + 1, lim)) continue;
        const auto idx = static_cast<int>(
            std::lower_bound(child.lines().begin(), child.lines().end(), added) - child.lines().begin());
        auto lab = canonical_labeling(child);
        if (!is_canonical_parent(child, lab, idx)) continue;
        if (seen.insert(lab.form.lines()).second) out.push_back(std::move(lab.form));
      }
    }
  }
  return out;
}

std::vector<Configuration> grow(const Limits& lim) {
  std::vector<Configuration> level{canonical_form(Configuration(3, {{0, 1, 2}}))};
  for (int k = 1; k < lim.lines; ++k) {
    std::vector<Configuration> next;
    for (const auto& p : level) {
      auto kids = children(p, k, lim);
      for (auto& c : kids) next.push_back(std::move(c));
    }
    level = std::move(next);
  }
  return level;
}

void sort_forms(std::vector<Configuration>& v) {
  std::sort(v.begin(), v.end(), [](const Configuration& a, const Configuration& b) {
    if (a.points() != b.points()) return a.points() < b.points();
    return a.lines() < b.lines();
  });
}

}  // namespace

std::vector<Configuration> enumerate_full(int n) {
  if (n < 1 || n > kMaxFullLines) {
    throw LimitError("full configurations are enumerated for 1 <= n <= " + std::to_string(kMaxFullLines));
  }
  Limits lim;
  lim.lines = n;
  lim.max_points = 3 * n / 2;
  lim.full = true;
  if (n < 4) return {};
  auto all = grow(lim);
  std::vector<Configuration> out;
  for (auto& c : all) {
    if (classify(c).is_full) out.push_back(std::move(c));
  }
  sort_forms(out);
  for (std::size_t i = 0; i < out.size(); ++i) out[i].set_name("full" + std::to_string(n) + "-" + std::to_string(i + 1));
  return out;
}

std::vector<Configuration> enumerate_w3(int w) {
  if (w < 1 || w > kMaxW3Points) {
    throw LimitError("w_3 configurations are enumerated for w <= " + std::to_string(kMaxW3Points));
  }
  if (w < 7) return {};
  Limits lim;
  lim.lines = w;
  lim.max_points = w;
  lim.max_degree = 3;
  auto all = grow(lim);
  std::vector<Configuration> out;
  for (auto& c : all) {
    if (classify(c).is_w3 && c.points() == w) out.push_back(std::move(c));
  }
  sort_forms(out);
  for (std::size_t i = 0; i < out.size(); ++i) out[i].set_name("w3-" + std::to_string(w) + "-" + std::to_string(i + 1));
  return out;
}

EnumStats tabulate(int parameter, const std::vector<Configuration>& configs) {
  EnumStats s;
  s.parameter = parameter;
  s.classes = configs.size();
  for (const auto& c : configs) {
    ++s.aut_distribution[automorphism_group(c).order()];
    ++s.gen_size_distribution[minimum_generating_sets(c).m];
  }
  return s;
}

std::string format_aut_distribution(const EnumStats& stats) {
  std::string out;
  for (const auto& [order, freq] : stats.aut_distribution) {
    if (!out.empty()) out += ' ';
    out += std::to_string(order) + "^" + std::to_string(freq);
  }
  return out;
}

std::string stats_csv_header(const std::string& parameter_name) {
  return parameter_name + ",N,aut,N3,N4,N5,N6,N7,N8,N9";
}

std::string stats_csv_row(const EnumStats& stats) {
  std::string out = std::to_string(stats.parameter) + "," + std::to_string(stats.classes) + "," +
                    format_aut_distribution(stats);
  for (int m = 3; m <= 9; ++m) {
    const auto it = stats.gen_size_distribution.find(m);
    out += "," + std::to_string(it == stats.gen_size_distribution.end() ? 0 : it->second);
  }
  return out;
}

}  // namespace tricount
