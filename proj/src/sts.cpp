#include "tricount/sts.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>

#include "tricount/errors.hpp"

namespace tricount {

bool admissible_order(int v) { return v >= 1 && (v % 6 == 1 || v % 6 == 3); }

namespace {

std::string pair_name(Point x, Point y) {
  return "{" + std::to_string(std::min(x, y)) + "," + std::to_string(std::max(x, y)) + "}";
}

std::string block_name(const Triple& t) {
  return "{" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," + std::to_string(t[2]) + "}";
}

}  // namespace

SteinerTripleSystem SteinerTripleSystem::build(int v, std::vector<Triple> blocks) {
  if (!admissible_order(v)) {
    throw ValidationError("inadmissible order " + std::to_string(v) + " (need v = 1 or 3 mod 6)");
  }
  for (auto& b : blocks) {
    for (Point p : b) {
      if (p < 0 || p >= v) {
        throw ValidationError("block " + block_name(b) + " has point outside 0.." + std::to_string(v - 1));
      }
    }
    std::sort(b.begin(), b.end());
    if (b[0] == b[1] || b[1] == b[2]) throw ValidationError("block " + block_name(b) + " repeats a point");
  }
  std::sort(blocks.begin(), blocks.end());

  SteinerTripleSystem s;
  s.v_ = v;
  const auto n = static_cast<std::size_t>(v);
  s.table_.assign(n * n, -1);
  for (Point x = 0; x < v; ++x) s.table_[x * n + x] = v;

  std::string duplicates;
  for (const auto& b : blocks) {
    const std::array<std::array<int, 3>, 3> sides{{{0, 1, 2}, {0, 2, 1}, {1, 2, 0}}};
    for (const auto& [i, j, k] : sides) {
      const Point x = b[i], y = b[j], z = b[k];
      Point& slot = s.table_[x * n + y];
      if (slot != -1) {
        if (!duplicates.empty()) duplicates += "; ";
        duplicates += "pair " + pair_name(x, y) + " covered twice";
        continue;
      }
      slot = z;
      s.table_[y * n + x] = z;
    }
  }
  if (!duplicates.empty()) throw ValidationError(duplicates);

  const std::size_t expected = n * (n - 1) / 6;
  if (blocks.size() != expected) {
    throw ValidationError("block count " + std::to_string(blocks.size()) + " ≠ " + std::to_string(expected));
  }
  s.blocks_ = std::move(blocks);
  return s;
}

SteinerTripleSystem relabel(const SteinerTripleSystem& sts, std::span<const Point> perm) {
  std::vector<Triple> blocks;
  blocks.reserve(sts.block_count());
  for (const auto& b : sts.blocks()) blocks.push_back({perm[b[0]], perm[b[1]], perm[b[2]]});
  return SteinerTripleSystem::build(sts.order(), std::move(blocks));
}

SteinerTripleSystem read_sts(std::istream& in) {
  std::string line;
  int line_no = 0;
  int v = -1;
  std::vector<Triple> blocks;
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
        long value = std::stol(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
        values.push_back(value);
      } catch (const std::exception&) {
        throw ParseError(line_no, "not an integer: '" + token + "'");
      }
    }
    if (v < 0) {
      if (values.size() != 1) throw ParseError(line_no, "expected the order v on its own line");
      if (values[0] < 1 || values[0] > 100000) throw ParseError(line_no, "order out of range");
      v = static_cast<int>(values[0]);
      if (!admissible_order(v)) throw ValidationError("inadmissible order " + std::to_string(v));
      continue;
    }
    if (values.size() != 3) {
      throw ParseError(line_no, "expected 3 points per block, got " + std::to_string(values.size()));
    }
    Triple t{};
    for (int i = 0; i < 3; ++i) {
      if (values[i] < 0 || values[i] >= v) {
        throw ParseError(line_no, "point " + std::to_string(values[i]) + " outside 0.." + std::to_string(v - 1));
      }
      t[i] = static_cast<Point>(values[i]);
    }
    blocks.push_back(t);
  }
  if (v < 0) throw ParseError(line_no, "missing order line");
  return SteinerTripleSystem::build(v, std::move(blocks));
}

SteinerTripleSystem read_sts(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_sts(in);
}

SteinerTripleSystem read_sts_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_sts(in);
}

std::string write_sts(const SteinerTripleSystem& sts) {
  std::string out = std::to_string(sts.order()) + "\n";
  for (const auto& b : sts.blocks()) {
    out += std::to_string(b[0]) + " " + std::to_string(b[1]) + " " + std::to_string(b[2]) + "\n";
  }
  return out;
}

void write_sts_file(const SteinerTripleSystem& sts, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << write_sts(sts);
}

SteinerTripleSystem fano_sts() {
  return SteinerTripleSystem::build(7, {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 4, 5}});
}

SteinerTripleSystem affine_sts9() {
  // Points (x, y) of Z_3^2 as 3x + y; the four parallel classes.
  return SteinerTripleSystem::build(9, {{0, 1, 2}, {3, 4, 5}, {6, 7, 8},
                                        {0, 3, 6}, {1, 4, 7}, {2, 5, 8},
                                        {0, 4, 8}, {1, 5, 6}, {2, 3, 7},
                                        {0, 5, 7}, {1, 3, 8}, {2, 4, 6}});
}

}  // namespace tricount
