#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tricount {

using Point = std::int32_t;
using Triple = std::array<Point, 3>;

/// True iff an STS(v) exists, i.e. v = 1 or 3 (mod 6).
bool admissible_order(int v);

/// A validated Steiner triple system on points 0..v-1.
///
/// Blocks are kept in canonical order (each block ascending, blocks sorted
/// lexicographically). A v*v pair table maps every ordered pair of distinct
/// points to the third point of their block; the diagonal holds the sentinel
/// v, so has_block() reduces to a single table lookup.
///
/// Immutable after construction.
class SteinerTripleSystem {
 public:
  /// Validates and indexes. Throws ValidationError naming the offending
  /// pair or block.
  static SteinerTripleSystem build(int v, std::vector<Triple> blocks);

  int order() const { return v_; }
  std::span<const Triple> blocks() const { return blocks_; }
  std::size_t block_count() const { return blocks_.size(); }

  /// Third point of the block through x and y. Requires x != y; the diagonal
  /// returns the sentinel order().
  Point third(Point x, Point y) const { return table_[static_cast<std::size_t>(x) * v_ + y]; }

  bool has_block(Point x, Point y, Point z) const { return third(x, y) == z; }

  /// Row-major v*v pair table, for hot loops.
  const Point* pair_table() const { return table_.data(); }

  friend bool operator==(const SteinerTripleSystem& a, const SteinerTripleSystem& b) {
    return a.v_ == b.v_ && a.blocks_ == b.blocks_;
  }

 private:
  SteinerTripleSystem() = default;

  int v_ = 0;
  std::vector<Triple> blocks_;
  std::vector<Point> table_;
};

inline SteinerTripleSystem build_sts(int v, std::vector<Triple> blocks) {
  return SteinerTripleSystem::build(v, std::move(blocks));
}

inline Point pair_third(const SteinerTripleSystem& sts, Point x, Point y) { return sts.third(x, y); }

inline bool has_block(const SteinerTripleSystem& sts, Point x, Point y, Point z) {
  return sts.has_block(x, y, z);
}

/// Applies a point relabeling (perm[old] = new) and rebuilds.
SteinerTripleSystem relabel(const SteinerTripleSystem& sts, std::span<const Point> perm);

// Text format: optional '#' comment lines, a line holding v, then one
// "x y z" line per block (0-based). Parse problems throw ParseError,
// structural problems ValidationError.
SteinerTripleSystem read_sts(std::istream& in);
SteinerTripleSystem read_sts(std::string_view text);
SteinerTripleSystem read_sts_file(const std::string& path);
std::string write_sts(const SteinerTripleSystem& sts);
void write_sts_file(const SteinerTripleSystem& sts, const std::string& path);

/// The projective plane of order 2 on 0..6 (the unique STS(7)).
SteinerTripleSystem fano_sts();
/// The affine plane of order 3 on 0..8 (the unique STS(9)).
SteinerTripleSystem affine_sts9();

}  // namespace tricount
