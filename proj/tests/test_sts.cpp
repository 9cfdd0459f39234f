#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <set>

#include "tricount/errors.hpp"
#include "tricount/sts.hpp"
#include "tricount/sts_random.hpp"

using namespace tricount;

namespace {

std::string error_of(int v, std::vector<Triple> blocks) {
  try {
    build_sts(v, std::move(blocks));
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

void check_structure(const SteinerTripleSystem& s) {
  const int v = s.order();
  CHECK(s.block_count() == static_cast<std::size_t>(v * (v - 1) / 6));
  std::vector<int> degree(v, 0);
  for (const auto& b : s.blocks()) {
    for (Point p : b) ++degree[p];
  }
  for (int d : degree) CHECK(d == (v - 1) / 2);
  for (Point x = 0; x < v; ++x) {
    for (Point y = 0; y < v; ++y) {
      if (x == y) continue;
      const Point z = s.third(x, y);
      CHECK(s.third(y, x) == z);
      CHECK(s.third(x, z) == y);
      CHECK(has_block(s, x, y, z));
    }
  }
}

}  // namespace

TEST_CASE("admissible orders") {
  CHECK(admissible_order(7));
  CHECK(admissible_order(9));
  CHECK_FALSE(admissible_order(8));
  CHECK(admissible_order(1));
  CHECK(admissible_order(3));
  CHECK_FALSE(admissible_order(5));
}

TEST_CASE("fano system") {
  const auto s = fano_sts();
  CHECK(s.order() == 7);
  CHECK(s.block_count() == 7);
  CHECK(pair_third(s, 0, 1) == 2);
  CHECK(pair_third(s, 3, 5) == 1);
  CHECK(pair_third(s, 1, 2) == 0);
  CHECK(has_block(s, 0, 1, 2));
  CHECK_FALSE(has_block(s, 0, 1, 3));
  CHECK_FALSE(has_block(s, 1, 1, 2));
  CHECK_FALSE(has_block(s, 2, 2, 2));
  check_structure(s);
  check_structure(affine_sts9());
}

TEST_CASE("validation errors name the problem") {
  std::vector<Triple> fano{{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 4, 6}};
  const auto msg = error_of(7, fano);
  CHECK(msg.find("pair {4,6} covered twice") != std::string::npos);

  // STS(13) from the cyclic difference families {0,1,4}, {0,2,7} mod 13
  std::vector<Triple> b13;
  for (int i = 0; i < 13; ++i) {
    b13.push_back({i, (i + 1) % 13, (i + 4) % 13});
    b13.push_back({i, (i + 2) % 13, (i + 7) % 13});
  }
  CHECK(build_sts(13, b13).block_count() == 26);
  b13.pop_back();
  CHECK(error_of(13, b13) == "block count 25 ≠ 26");

  CHECK(error_of(8, {}).find("inadmissible order 8") != std::string::npos);
  CHECK(error_of(7, {{0, 0, 1}}).find("repeats a point") != std::string::npos);
  CHECK(error_of(7, {{0, 1, 7}}).find("outside") != std::string::npos);
}

TEST_CASE("canonical block order") {
  const auto s = build_sts(7, {{6, 5, 0}, {2, 1, 0}, {4, 0, 3}, {5, 3, 1}, {6, 4, 1}, {6, 3, 2}, {5, 4, 2}});
  CHECK(s == fano_sts());
  CHECK(std::is_sorted(s.blocks().begin(), s.blocks().end()));
}

TEST_CASE("text round trip") {
  const auto s = fano_sts();
  const auto text = write_sts(s);
  CHECK(text.rfind("7\n0 1 2\n", 0) == 0);
  CHECK(read_sts(text) == s);
  const auto s9 = affine_sts9();
  CHECK(read_sts(write_sts(s9)) == s9);
  CHECK(read_sts("# comment\n\n7\n0 1 2\n0 3 4\n0 5 6\n# mid\n1 3 5\n1 4 6\n2 3 6\n2 4 5\n") == s);
}

TEST_CASE("text errors") {
  CHECK_THROWS_WITH_AS(read_sts("8\n"), doctest::Contains("inadmissible order"), ValidationError);
  CHECK_THROWS_AS(read_sts("7\n0 1 2\n0 3\n"), ParseError);
  try {
    read_sts("7\n0 1 2\n0 3\n");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("expected 3 points") != std::string::npos);
  }
  CHECK_THROWS_AS(read_sts("7\n0 1 x\n"), ParseError);
  CHECK_THROWS_AS(read_sts("# only a comment\n"), ParseError);
  CHECK_THROWS_AS(read_sts("7\n0 1 2\n"), ValidationError);
}

TEST_CASE("relabel preserves structure") {
  std::vector<Point> perm{3, 6, 0, 5, 1, 2, 4};
  const auto fano = fano_sts();
  const auto r = relabel(fano, perm);
  check_structure(r);
  for (const auto& b : fano.blocks()) CHECK(r.has_block(perm[b[0]], perm[b[1]], perm[b[2]]));
}

TEST_CASE("rng bounded draws") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
  Rng r(1);
  std::vector<int> hist(5, 0);
  for (int i = 0; i < 5000; ++i) {
    const auto x = r.below(5);
    REQUIRE(x < 5);
    ++hist[x];
  }
  for (int h : hist) CHECK(h > 800);
  CHECK(mix_seed(1, 0) != mix_seed(1, 1));
}

TEST_CASE("hill climbing") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto s = hill_climb({7, seed});
    check_structure(s);
  }
  const auto s9 = hill_climb({9, 3});
  check_structure(s9);
  for (int v : {13, 15, 19, 21, 25, 31}) check_structure(hill_climb({v, 11}));
  CHECK_THROWS_AS(hill_climb({8, 0}), ValidationError);
}

TEST_CASE("hill climbing is reproducible and varied") {
  for (int v : {19, 21, 25}) {
    CHECK(hill_climb({v, 77}) == hill_climb({v, 77}));
    std::set<std::vector<Triple>> seen;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto s = hill_climb({v, seed});
      seen.insert({s.blocks().begin(), s.blocks().end()});
    }
    CHECK(seen.size() >= 2);
  }
}

TEST_CASE("stagnation budget is enforced") {
  HillClimbConfig cfg{31, 5, 1, 0};
  try {
    hill_climb(cfg);
    FAIL("expected budget exhaustion");
  } catch (const BudgetExhausted& e) {
    CHECK(e.iterations() > 0);
  }
}

TEST_CASE("large orders") {
  for (int v : {63, 93}) {
    const auto s = hill_climb({v, 1});
    CHECK(s.block_count() == static_cast<std::size_t>(v * (v - 1) / 6));
  }
}
