#include "tricount/config.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "tricount/errors.hpp"

namespace tricount {

namespace {

std::string triple_name(const Triple& t) {
  return "{" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," + std::to_string(t[2]) + "}";
}

}  // namespace

Configuration::Configuration(int w, std::vector<Triple> lines, std::string name)
    : w_(w), lines_(std::move(lines)), name_(std::move(name)) {
  if (w < 0 || w > kMaxConfigPoints) throw ValidationError("configuration has too many points: " + std::to_string(w));
  const auto n = static_cast<std::size_t>(w);
  degree_.assign(n, 0);
  third_.assign(n * n, -1);
  line_of_.assign(n * n, -1);
  for (auto& l : lines_) {
    for (Point p : l) {
      if (p < 0 || p >= w) throw ValidationError("line " + triple_name(l) + " has point outside 0.." + std::to_string(w - 1));
    }
    std::sort(l.begin(), l.end());
    if (l[0] == l[1] || l[1] == l[2]) throw ValidationError("line " + triple_name(l) + " repeats a point");
  }
  std::sort(lines_.begin(), lines_.end());
  for (std::size_t i = 0; i < lines_.size(); ++i) {
    const auto& l = lines_[i];
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        if (a == b) continue;
        const Point x = l[a], y = l[b], z = l[3 - a - b];
        auto& slot = third_[x * n + y];
        if (slot >= 0) {
          throw ValidationError("pair {" + std::to_string(std::min(x, y)) + "," + std::to_string(std::max(x, y)) +
                                "} lies on two lines");
        }
        slot = static_cast<std::int8_t>(z);
        line_of_[x * n + y] = static_cast<std::int8_t>(i);
      }
    }
    for (Point p : l) ++degree_[p];
  }
  for (Point p = 0; p < w; ++p) {
    if (degree_[p] == 0) throw ValidationError("point " + std::to_string(p) + " lies on no line");
  }
}

Configuration compact_configuration(const std::vector<Triple>& lines, std::string name) {
  std::vector<Point> support;
  for (const auto& l : lines) support.insert(support.end(), l.begin(), l.end());
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());
  std::vector<Triple> out;
  out.reserve(lines.size());
  for (const auto& l : lines) {
    Triple t{};
    for (int i = 0; i < 3; ++i) {
      t[i] = static_cast<Point>(std::lower_bound(support.begin(), support.end(), l[i]) - support.begin());
    }
    out.push_back(t);
  }
  return Configuration(static_cast<int>(support.size()), std::move(out), std::move(name));
}

PointMask closure(const Configuration& cfg, PointMask v0) {
  PointMask cur = v0;
  for (bool grew = true; grew;) {
    grew = false;
    for (const auto& l : cfg.lines()) {
      const PointMask lm = bit(l[0]) | bit(l[1]) | bit(l[2]);
      if ((cur & lm) != lm && popcount(cur & lm) >= 2) {
        cur |= lm;
        grew = true;
      }
    }
  }
  return cur;
}

Classification classify(const Configuration& cfg) {
  Classification c;
  const auto& d = cfg.degrees();
  c.is_full = !d.empty() && *std::min_element(d.begin(), d.end()) >= 2;
  c.is_w3 = !d.empty() && std::all_of(d.begin(), d.end(), [](int x) { return x == 3; }) &&
            cfg.line_count() == static_cast<std::size_t>(cfg.points());
  return c;
}

Configuration relabel(const Configuration& cfg, const Perm& perm) {
  std::vector<Triple> lines;
  lines.reserve(cfg.line_count());
  for (const auto& l : cfg.lines()) lines.push_back({perm[l[0]], perm[l[1]], perm[l[2]]});
  return Configuration(cfg.points(), std::move(lines), cfg.name());
}

// ---------------------------------------------------------------------------
// Canonical labeling.
//
// Labels 0,1,2,... are handed out one at a time. The code of a labeling is
// its line list in colex order (by max label, then middle, then min), so the
// lines completed when label k is assigned form a contiguous block that can
// be compared as soon as k is placed. Labels are restricted to respect an
// ordering of invariant cells; among candidates only those with the least
// block survive, ties branch.

namespace {

using Block = std::vector<std::uint16_t>;

// <0 if a precedes b. A block that is a proper prefix of another is larger,
// because the code continues with a line of larger maximum.
int compare_blocks(const Block& a, const Block& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  if (a.size() == b.size()) return 0;
  return a.size() > b.size() ? -1 : 1;
}

struct Incidence {
  Point q, r;
};

class CanonSearch {
 public:
  explicit CanonSearch(const Configuration& cfg) : w_(cfg.points()), through_(w_), label_(w_, -1) {
    for (const auto& l : cfg.lines()) {
      through_[l[0]].push_back({l[1], l[2]});
      through_[l[1]].push_back({l[0], l[2]});
      through_[l[2]].push_back({l[0], l[1]});
    }
    // invariant: degree, then the multiset of (degree, degree) of the other
    // two points on each line through p
    std::vector<std::vector<int>> inv(w_);
    for (Point p = 0; p < w_; ++p) {
      std::vector<int> keys;
      for (const auto& [q, r] : through_[p]) {
        const int dq = cfg.degree(q), dr = cfg.degree(r);
        keys.push_back(std::max(dq, dr) * 64 + std::min(dq, dr));
      }
      std::sort(keys.rbegin(), keys.rend());
      inv[p].push_back(cfg.degree(p));
      inv[p].insert(inv[p].end(), keys.begin(), keys.end());
    }
    std::vector<std::vector<int>> distinct(inv);
    std::sort(distinct.begin(), distinct.end(), std::greater<>());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    cell_.resize(w_);
    for (Point p = 0; p < w_; ++p) {
      cell_[p] = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), inv[p], std::greater<>()) -
                                  distinct.begin());
    }
    cell_at_.resize(w_);
    std::vector<int> sorted(cell_);
    std::sort(sorted.begin(), sorted.end());
    cell_at_ = sorted;
    current_.resize(w_);
    best_.resize(w_);
  }

  Perm run() {
    dfs(0, true);
    return best_label_;
  }

 private:
  void block_of(Point p, Block& out) const {
    out.clear();
    for (const auto& [q, r] : through_[p]) {
      const int lq = label_[q], lr = label_[r];
      if (lq < 0 || lr < 0) continue;
      out.push_back(static_cast<std::uint16_t>(std::max(lq, lr) * 64 + std::min(lq, lr)));
    }
    std::sort(out.begin(), out.end());
  }

  void dfs(int k, bool better) {
    if (k == w_) {
      if (better) {
        best_ = current_;
        best_label_ = label_;
        ++updates_;
      }
      return;
    }
    std::vector<Point> cands;
    std::vector<Block> blocks;
    Block tmp;
    int best_idx = -1;
    for (Point p = 0; p < w_; ++p) {
      if (label_[p] >= 0 || cell_[p] != cell_at_[k]) continue;
      block_of(p, tmp);
      cands.push_back(p);
      blocks.push_back(tmp);
      if (best_idx < 0 || compare_blocks(tmp, blocks[best_idx]) < 0) best_idx = static_cast<int>(blocks.size()) - 1;
    }
    const Block min_block = blocks[best_idx];
    if (!better) {
      const int c = compare_blocks(min_block, best_[k]);
      if (c > 0) return;
      if (c < 0) better = true;
    }
    current_[k] = min_block;
    for (std::size_t i = 0; i < cands.size(); ++i) {
      if (blocks[i] != min_block) continue;
      label_[cands[i]] = k;
      const auto before = updates_;
      dfs(k + 1, better);
      label_[cands[i]] = -1;
      // a new best shares this prefix, so siblings compare against it
      if (updates_ != before) better = false;
    }
  }

  int w_;
  std::vector<std::vector<Incidence>> through_;
  std::vector<int> cell_;
  std::vector<int> cell_at_;
  Perm label_;
  std::vector<Block> current_;
  std::vector<Block> best_;
  Perm best_label_;
  std::uint64_t updates_ = 0;
};

std::array<Point, 3> colex_key(const Triple& t) {
  std::array<Point, 3> k = t;
  std::sort(k.begin(), k.end(), std::greater<>());
  return k;
}

}  // namespace

CanonicalLabeling canonical_labeling(const Configuration& cfg) {
  CanonicalLabeling out;
  if (cfg.points() == 0) {
    out.form = cfg;
    return out;
  }
  out.perm = CanonSearch(cfg).run();
  out.form = relabel(cfg, out.perm);
  std::array<Point, 3> best{-1, -1, -1};
  for (std::size_t i = 0; i < cfg.lines().size(); ++i) {
    const auto& l = cfg.lines()[i];
    const auto key = colex_key({out.perm[l[0]], out.perm[l[1]], out.perm[l[2]]});
    if (key > best) {
      best = key;
      out.last_line = static_cast<int>(i);
    }
  }
  return out;
}

Configuration canonical_form(const Configuration& cfg) { return canonical_labeling(cfg).form; }

bool isomorphic(const Configuration& a, const Configuration& b) {
  if (a.points() != b.points() || a.line_count() != b.line_count()) return false;
  auto da = a.degrees(), db = b.degrees();
  std::sort(da.begin(), da.end());
  std::sort(db.begin(), db.end());
  if (da != db) return false;
  return canonical_form(a) == canonical_form(b);
}

// ---------------------------------------------------------------------------
// Groups.

Perm compose(const Perm& outer, const Perm& inner) {
  Perm r(inner.size());
  for (std::size_t i = 0; i < inner.size(); ++i) r[i] = outer[inner[i]];
  return r;
}

Perm inverse(const Perm& p) {
  Perm r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<Point>(i);
  return r;
}

PermGroup::PermGroup(int degree, std::vector<Perm> elements) : degree_(degree), elements_(std::move(elements)) {
  Perm id(degree);
  for (int i = 0; i < degree; ++i) id[i] = i;
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
  auto it = std::find(elements_.begin(), elements_.end(), id);
  if (it == elements_.end()) {
    elements_.insert(elements_.begin(), id);
  } else {
    std::rotate(elements_.begin(), it, it + 1);
  }
}

bool PermGroup::contains(const Perm& g) const {
  if (!elements_.empty() && g == elements_.front()) return true;
  return std::binary_search(elements_.begin() + 1, elements_.end(), g);
}

std::vector<Perm> PermGroup::generators() const {
  std::vector<Perm> gens;
  std::set<Perm> span{elements_.front()};
  for (const auto& g : elements_) {
    if (span.count(g)) continue;
    gens.push_back(g);
    std::vector<Perm> frontier(span.begin(), span.end());
    while (!frontier.empty()) {
      std::vector<Perm> next;
      for (const auto& x : frontier) {
        for (const auto& h : gens) {
          auto y = compose(h, x);
          if (span.insert(y).second) next.push_back(std::move(y));
        }
      }
      frontier = std::move(next);
    }
  }
  return gens;
}

PointMask PermGroup::orbit(Point p) const {
  PointMask m = 0;
  for (const auto& g : elements_) m |= bit(g[p]);
  return m;
}

PermGroup PermGroup::stabilizer(Point p) const {
  std::vector<Perm> out;
  for (const auto& g : elements_) {
    if (g[p] == p) out.push_back(g);
  }
  return PermGroup(degree_, std::move(out));
}

namespace {

class AutSearch {
 public:
  explicit AutSearch(const Configuration& cfg) : cfg_(cfg), w_(cfg.points()), img_(w_, -1), used_(w_, false) {
    // order points so that as many as possible are forced by two earlier ones
    std::vector<bool> placed(w_, false);
    while (static_cast<int>(order_.size()) < w_) {
      Point next = -1;
      std::pair<Point, Point> why{-1, -1};
      for (Point p = 0; p < w_ && next < 0; ++p) {
        if (placed[p]) continue;
        for (std::size_t i = 0; i < order_.size() && next < 0; ++i) {
          for (std::size_t j = 0; j < i; ++j) {
            if (cfg.third(order_[i], order_[j]) == p) {
              next = p;
              why = {order_[i], order_[j]};
              break;
            }
          }
        }
      }
      if (next < 0) {
        // prefer a point collinear with something placed, highest degree
        int best_score = -1;
        for (Point p = 0; p < w_; ++p) {
          if (placed[p]) continue;
          int score = cfg.degree(p);
          for (Point q : order_) {
            if (cfg.collinear(p, q)) score += 100;
          }
          if (score > best_score) {
            best_score = score;
            next = p;
          }
        }
      }
      placed[next] = true;
      order_.push_back(next);
      forced_.push_back(why);
    }
  }

  std::vector<Perm> run() {
    dfs(0);
    return found_;
  }

 private:
  bool consistent(std::size_t i, Point target) const {
    const Point p = order_[i];
    if (cfg_.degree(p) != cfg_.degree(target)) return false;
    for (std::size_t j = 0; j < i; ++j) {
      const Point q = order_[j];
      const Point r = cfg_.third(p, q);
      const Point ir = cfg_.third(target, img_[q]);
      if ((r < 0) != (ir < 0)) return false;
      if (r >= 0 && img_[r] >= 0 && img_[r] != ir) return false;
    }
    return true;
  }

  void dfs(std::size_t i) {
    if (i == order_.size()) {
      found_.push_back(img_);
      return;
    }
    const Point p = order_[i];
    auto try_target = [&](Point t) {
      if (used_[t] || !consistent(i, t)) return;
      img_[p] = t;
      used_[t] = true;
      dfs(i + 1);
      used_[t] = false;
      img_[p] = -1;
    };
    if (forced_[i].first >= 0) {
      const Point t = cfg_.third(img_[forced_[i].first], img_[forced_[i].second]);
      if (t >= 0) try_target(t);
      return;
    }
    for (Point t = 0; t < w_; ++t) try_target(t);
  }

  const Configuration& cfg_;
  int w_;
  std::vector<Point> order_;
  std::vector<std::pair<Point, Point>> forced_;
  Perm img_;
  std::vector<bool> used_;
  std::vector<Perm> found_;
};

}  // namespace

PermGroup automorphism_group(const Configuration& cfg) {
  return PermGroup(cfg.points(), AutSearch(cfg).run());
}

// ---------------------------------------------------------------------------
// Generating sets.

bool generates(const Configuration& cfg, PointMask v0) {
  const PointMask closed = closure(cfg, v0);
  if (closed != cfg.all_points()) return false;
  // every line must be recovered from closed points
  PointMask cur = v0;
  std::vector<bool> got(cfg.line_count(), false);
  std::size_t count = 0;
  for (bool grew = true; grew;) {
    grew = false;
    for (std::size_t i = 0; i < cfg.line_count(); ++i) {
      if (got[i]) continue;
      const auto& l = cfg.lines()[i];
      const PointMask lm = bit(l[0]) | bit(l[1]) | bit(l[2]);
      if (popcount(cur & lm) >= 2) {
        got[i] = true;
        ++count;
        cur |= lm;
        grew = true;
      }
    }
  }
  return count == cfg.line_count();
}

GeneratingSets minimum_generating_sets(const Configuration& cfg) {
  GeneratingSets out;
  const int w = cfg.points();
  if (w > 40) throw LimitError("generating set search limited to 40 points");
  for (int k = 1; k <= w; ++k) {
    // all k-subsets in increasing mask order (Gosper's hack)
    for (PointMask s = bit(k) - 1; s < bit(w);) {
      if (generates(cfg, s)) out.sets.push_back(s);
      const PointMask c = s & (~s + 1);
      const PointMask r = s + c;
      s = (((r ^ s) >> 2) / c) | r;
    }
    if (!out.sets.empty()) {
      out.m = k;
      return out;
    }
  }
  return out;
}

Configuration remove_subconfiguration(const Configuration& cfg, const std::vector<int>& sub_lines) {
  std::vector<int> sub(sub_lines);
  std::sort(sub.begin(), sub.end());
  sub.erase(std::unique(sub.begin(), sub.end()), sub.end());
  if (sub.empty()) throw ValidationError("subconfiguration is empty");
  if (sub.size() >= cfg.line_count()) throw ValidationError("subconfiguration is not proper");
  std::map<Point, int> deg;
  for (int i : sub) {
    if (i < 0 || i >= static_cast<int>(cfg.line_count())) throw ValidationError("line index out of range");
    for (Point p : cfg.lines()[i]) ++deg[p];
  }
  for (const auto& [p, d] : deg) {
    if (d != 3) throw ValidationError("subconfiguration is not an n_3 configuration (point " + std::to_string(p) +
                                      " has degree " + std::to_string(d) + ")");
  }
  if (deg.size() != sub.size()) throw ValidationError("subconfiguration is not an n_3 configuration");
  std::vector<Triple> rest;
  for (std::size_t i = 0; i < cfg.line_count(); ++i) {
    if (std::binary_search(sub.begin(), sub.end(), static_cast<int>(i))) continue;
    const auto& l = cfg.lines()[i];
    for (Point p : l) {
      if (deg.count(p)) throw ValidationError("line " + triple_name(l) + " meets the removed subconfiguration");
    }
    rest.push_back(l);
  }
  return compact_configuration(rest, cfg.name());
}

Configuration disjoint_union(const Configuration& a, const Configuration& b) {
  std::vector<Triple> lines(a.lines().begin(), a.lines().end());
  for (const auto& l : b.lines()) lines.push_back({l[0] + a.points(), l[1] + a.points(), l[2] + a.points()});
  return Configuration(a.points() + b.points(), std::move(lines));
}

// ---------------------------------------------------------------------------
// Text and built-ins.

Configuration read_configuration(std::istream& in, std::string name) {
  std::string line;
  int line_no = 0;
  int w = -1;
  long b = -1;
  std::vector<Triple> lines;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    std::vector<long> values;
    std::string token;
    while (fields >> token) {
      try {
        std::size_t used = 0;
        values.push_back(std::stol(token, &used));
        if (used != token.size()) throw std::invalid_argument(token);
      } catch (const std::exception&) {
        throw ParseError(line_no, "not an integer: '" + token + "'");
      }
    }
    if (w < 0) {
      if (values.size() != 2) throw ParseError(line_no, "expected header 'w b'");
      if (values[0] < 1 || values[0] > kMaxConfigPoints) throw ParseError(line_no, "point count out of range");
      if (values[1] < 0) throw ParseError(line_no, "negative line count");
      w = static_cast<int>(values[0]);
      b = values[1];
      continue;
    }
    if (values.size() != 3) throw ParseError(line_no, "expected 3 points per line, got " + std::to_string(values.size()));
    Triple t{};
    for (int i = 0; i < 3; ++i) {
      if (values[i] < 0 || values[i] >= w) throw ParseError(line_no, "point " + std::to_string(values[i]) + " out of range");
      t[i] = static_cast<Point>(values[i]);
    }
    lines.push_back(t);
  }
  if (w < 0) throw ParseError(line_no, "missing header");
  if (static_cast<long>(lines.size()) != b) {
    throw ValidationError("header announces " + std::to_string(b) + " lines, found " + std::to_string(lines.size()));
  }
  return Configuration(w, std::move(lines), std::move(name));
}

Configuration read_configuration(std::string_view text, std::string name) {
  std::istringstream in{std::string(text)};
  return read_configuration(in, std::move(name));
}

std::string write_configuration(const Configuration& cfg) {
  std::string out = std::to_string(cfg.points()) + " " + std::to_string(cfg.line_count()) + "\n";
  for (const auto& l : cfg.lines()) {
    out += std::to_string(l[0]) + " " + std::to_string(l[1]) + " " + std::to_string(l[2]) + "\n";
  }
  return out;
}

namespace {

struct BuiltinSpec {
  const char* name;
  const char* lines;  // letters, space separated
};

const BuiltinSpec kBuiltins[] = {
    {"pasch", "abe afc bdc edf"},
    {"mitre", "abg acf bde cdg efg"},
    {"fano-line", "cag afe cbe bfg cfd edg"},
    {"crown", "abc afg bdf chg deg feh"},
    {"hexagon", "bac eda agf bdh cgh ehf"},
    {"prism", "abe agd bcf ech dih fig"},
    {"grid", "abd aeg bcf ech dhi gfi"},
    {"fano", "abe acg adf bcf bdg cde efg"},
    {"moebius-kantor", "abg bch cgf ghe hfd fea edb dac"},
};

}  // namespace

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& b : kBuiltins) n.emplace_back(b.name);
    return n;
  }();
  return names;
}

bool is_builtin(std::string_view name) {
  for (const auto& b : kBuiltins) {
    if (name == b.name) return true;
  }
  return false;
}

Configuration builtin_configuration(std::string_view name) {
  for (const auto& b : kBuiltins) {
    if (name != b.name) continue;
    std::vector<Triple> lines;
    int w = 0;
    std::istringstream in(b.lines);
    std::string word;
    while (in >> word) {
      Triple t{word[0] - 'a', word[1] - 'a', word[2] - 'a'};
      for (Point p : t) w = std::max(w, p + 1);
      lines.push_back(t);
    }
    return Configuration(w, std::move(lines), b.name);
  }
  throw std::invalid_argument("unknown configuration '" + std::string(name) + "'");
}

Configuration load_configuration(const std::string& name_or_path) {
  if (is_builtin(name_or_path)) return builtin_configuration(name_or_path);
  std::ifstream in(name_or_path);
  if (!in) {
    throw std::invalid_argument("unknown configuration '" + name_or_path + "' (not a built-in name or readable file)");
  }
  auto name = name_or_path;
  const auto slash = name.find_last_of('/');
  if (slash != std::string::npos) name = name.substr(slash + 1);
  const auto dot = name.find_last_of('.');
  if (dot != std::string::npos && dot > 0) name = name.substr(0, dot);
  return read_configuration(in, name);
}

std::string point_name(Point p) {
  if (p >= 0 && p < 26) return std::string(1, static_cast<char>('a' + p));
  return "p" + std::to_string(p);
}

std::string format_lines(const Configuration& cfg) {
  std::string out;
  for (const auto& l : cfg.lines()) {
    if (!out.empty()) out += ' ';
    out += point_name(l[0]) + point_name(l[1]) + point_name(l[2]);
  }
  return out;
}

}  // namespace tricount
