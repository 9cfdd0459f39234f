#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "tricount/sts.hpp"

namespace tricount {

using PointMask = std::uint64_t;
using Perm = std::vector<Point>;

inline constexpr int kMaxConfigPoints = 64;

inline PointMask bit(Point p) { return PointMask{1} << p; }
inline int popcount(PointMask m) { return __builtin_popcountll(m); }

/// A partial linear space of 3-lines on points 0..w-1: every pair of points
/// lies in at most one line and every point lies in at least one line.
class Configuration {
 public:
  Configuration() = default;
  /// Throws ValidationError on repeated pairs, bad points or isolated points.
  Configuration(int w, std::vector<Triple> lines, std::string name = {});

  int points() const { return w_; }
  std::size_t line_count() const { return lines_.size(); }
  const std::vector<Triple>& lines() const { return lines_; }
  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  int degree(Point p) const { return degree_[p]; }
  const std::vector<int>& degrees() const { return degree_; }
  /// Third point of the line through x and y, or -1.
  Point third(Point x, Point y) const { return third_[x * w_ + y]; }
  bool collinear(Point x, Point y) const { return third(x, y) >= 0; }
  bool has_line(Point x, Point y, Point z) const { return x != y && third(x, y) == z; }
  /// Index into lines() of the line through x and y, or -1.
  int line_index(Point x, Point y) const { return line_of_[x * w_ + y]; }
  PointMask all_points() const { return w_ == 64 ? ~PointMask{0} : bit(w_) - 1; }

  friend bool operator==(const Configuration& a, const Configuration& b) {
    return a.w_ == b.w_ && a.lines_ == b.lines_;
  }

 private:
  int w_ = 0;
  std::vector<Triple> lines_;
  std::string name_;
  std::vector<int> degree_;
  std::vector<std::int8_t> third_;
  std::vector<std::int8_t> line_of_;
};

/// Builds a configuration from lines on arbitrary point labels, relabeling
/// the support densely in increasing order.
Configuration compact_configuration(const std::vector<Triple>& lines, std::string name = {});

/// Least superset of v0 closed under completing lines with two points inside.
PointMask closure(const Configuration& cfg, PointMask v0);

struct Classification {
  bool is_full = false;
  bool is_w3 = false;
};
Classification classify(const Configuration& cfg);

/// Canonical relabeling: perm[old] = new. The canonical form is the image
/// of the configuration under it; lines are then sorted lexicographically.
struct CanonicalLabeling {
  Perm perm;
  Configuration form;
  /// Index (into the input's lines) of the line that becomes the last line of
  /// the form in colex order (max, then middle, then min point).
  int last_line = -1;
};
CanonicalLabeling canonical_labeling(const Configuration& cfg);
Configuration canonical_form(const Configuration& cfg);
bool isomorphic(const Configuration& a, const Configuration& b);

Configuration relabel(const Configuration& cfg, const Perm& perm);

/// Permutation group stored as its full element list (identity first).
class PermGroup {
 public:
  PermGroup(int degree, std::vector<Perm> elements);

  int degree() const { return degree_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<Perm>& elements() const { return elements_; }
  /// A small generating set, computed greedily from the element list.
  std::vector<Perm> generators() const;

  PointMask orbit(Point p) const;
  PermGroup stabilizer(Point p) const;
  bool contains(const Perm& g) const;

 private:
  int degree_;
  std::vector<Perm> elements_;
};

Perm compose(const Perm& outer, const Perm& inner);
Perm inverse(const Perm& p);

PermGroup automorphism_group(const Configuration& cfg);

struct GeneratingSets {
  int m = 0;
  std::vector<PointMask> sets;  // ascending as bit masks
};
bool generates(const Configuration& cfg, PointMask v0);
GeneratingSets minimum_generating_sets(const Configuration& cfg);

/// Removes the points and lines of a proper n_3 subconfiguration given as
/// indices into cfg.lines(). The remaining points are relabeled densely.
Configuration remove_subconfiguration(const Configuration& cfg, const std::vector<int>& sub_lines);

Configuration disjoint_union(const Configuration& a, const Configuration& b);

// Text format: "w b" then b lines "x y z". Lines starting with '#' are ignored.
Configuration read_configuration(std::istream& in, std::string name = {});
Configuration read_configuration(std::string_view text, std::string name = {});
std::string write_configuration(const Configuration& cfg);

/// The nine named configurations, labeled a=0, b=1, ...
const std::vector<std::string>& builtin_names();
bool is_builtin(std::string_view name);
Configuration builtin_configuration(std::string_view name);
/// Built-in name or path to a configuration file.
Configuration load_configuration(const std::string& name_or_path);

/// "a".."z" for small points, numbers beyond.
std::string point_name(Point p);
std::string format_lines(const Configuration& cfg);

}  // namespace tricount
