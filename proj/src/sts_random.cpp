#include "tricount/sts_random.hpp"

#include <optional>
#include <vector>

#include "tricount/errors.hpp"

namespace tricount {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

// Partial system under construction. A point is live while it still has an
// uncovered pair, i.e. while its degree is below (v-1)/2.
class PartialSystem {
 public:
  explicit PartialSystem(int v)
      : v_(v),
        third_(static_cast<std::size_t>(v) * v, -1),
        partner_pos_(static_cast<std::size_t>(v) * v, -1),
        partners_(v),
        live_pos_(v, -1) {
    for (Point x = 0; x < v; ++x) {
      for (Point y = 0; y < v; ++y) {
        if (x != y) push_partner(x, y);
      }
    }
  }

  std::size_t blocks() const { return blocks_; }
  bool has_live() const { return !live_.empty(); }

  void step(Rng& rng) {
    const Point x = live_[rng.below(live_.size())];
    const auto& free = partners_[x];
    const auto i = rng.below(free.size());
    auto j = rng.below(free.size() - 1);
    if (j >= i) ++j;
    const Point y = free[i];
    const Point z = free[j];
    const Point w = at(y, z);
    if (w != -1) remove_block(w, y, z);
    add_block(x, y, z);
  }

  std::vector<Triple> block_list() const {
    std::vector<Triple> out;
    for (Point x = 0; x < v_; ++x) {
      for (Point y = x + 1; y < v_; ++y) {
        const Point z = at(x, y);
        if (z > y) out.push_back({x, y, z});
      }
    }
    return out;
  }

 private:
  Point& at(Point x, Point y) { return third_[static_cast<std::size_t>(x) * v_ + y]; }
  Point at(Point x, Point y) const { return third_[static_cast<std::size_t>(x) * v_ + y]; }
  int& pos(Point x, Point y) { return partner_pos_[static_cast<std::size_t>(x) * v_ + y]; }

  void push_partner(Point x, Point y) {
    if (partners_[x].empty()) {
      live_pos_[x] = static_cast<int>(live_.size());
      live_.push_back(x);
    }
    pos(x, y) = static_cast<int>(partners_[x].size());
    partners_[x].push_back(y);
  }

  void pop_partner(Point x, Point y) {
    auto& list = partners_[x];
    const int i = pos(x, y);
    const Point last = list.back();
    list[i] = last;
    pos(x, last) = i;
    list.pop_back();
    pos(x, y) = -1;
    if (list.empty()) {
      const int k = live_pos_[x];
      const Point tail = live_.back();
      live_[k] = tail;
      live_pos_[tail] = k;
      live_.pop_back();
      live_pos_[x] = -1;
    }
  }

  void cover(Point x, Point y, Point z) {
    at(x, y) = z;
    at(y, x) = z;
    pop_partner(x, y);
    pop_partner(y, x);
  }

  void uncover(Point x, Point y) {
    at(x, y) = -1;
    at(y, x) = -1;
    push_partner(x, y);
    push_partner(y, x);
  }

  void add_block(Point x, Point y, Point z) {
    cover(x, y, z);
    cover(x, z, y);
    cover(y, z, x);
    ++blocks_;
  }

  void remove_block(Point x, Point y, Point z) {
    uncover(x, y);
    uncover(x, z);
    uncover(y, z);
    --blocks_;
  }

  int v_;
  std::vector<Point> third_;
  std::vector<int> partner_pos_;
  std::vector<std::vector<Point>> partners_;
  std::vector<Point> live_;
  std::vector<int> live_pos_;
  std::size_t blocks_ = 0;
};

}  // namespace

SteinerTripleSystem hill_climb(const HillClimbConfig& cfg) {
  if (!admissible_order(cfg.v)) {
    throw ValidationError("inadmissible order " + std::to_string(cfg.v) + " for hill climbing");
  }
  if (cfg.v <= 3) {
    std::vector<Triple> blocks;
    if (cfg.v == 3) blocks.push_back({0, 1, 2});
    return SteinerTripleSystem::build(cfg.v, std::move(blocks));
  }
  const auto v = static_cast<std::uint64_t>(cfg.v);
  const std::uint64_t budget = cfg.max_stagnation ? cfg.max_stagnation : 100 * v * v;
  const std::size_t target = v * (v - 1) / 6;

  std::uint64_t total_steps = 0;
  for (int attempt = 0; attempt <= cfg.max_restarts; ++attempt) {
    Rng rng(attempt == 0 ? cfg.seed : mix_seed(cfg.seed, static_cast<std::uint64_t>(attempt)));
    PartialSystem partial(cfg.v);
    std::size_t best = 0;
    std::uint64_t since_best = 0;
    while (partial.blocks() < target && since_best <= budget) {
      partial.step(rng);
      ++total_steps;
      if (partial.blocks() > best) {
        best = partial.blocks();
        since_best = 0;
      } else {
        ++since_best;
      }
    }
    if (partial.blocks() == target) return SteinerTripleSystem::build(cfg.v, partial.block_list());
  }
  throw BudgetExhausted("hill climbing for v=" + std::to_string(cfg.v) + " stagnated after " +
                            std::to_string(total_steps) + " steps",
                        total_steps);
}

}  // namespace tricount
