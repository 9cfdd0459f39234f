#include "tricount/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <ostream>
#include <thread>

#include "tricount/config_enum.hpp"
#include "tricount/plan_gen.hpp"
#include "tricount/sts_random.hpp"

namespace tricount {

std::vector<Configuration> full_configurations_up_to(int n) {
  std::vector<Configuration> out;
  for (int b = 1; b <= n; ++b) {
    auto classes = enumerate_full(b);
    for (std::size_t i = 0; i < classes.size(); ++i) {
      if (classes[i].name().empty()) classes[i].set_name("full" + std::to_string(b) + "_" + std::to_string(i + 1));
      out.push_back(std::move(classes[i]));
    }
  }
  return out;
}

VectorCounter::VectorCounter(std::vector<Configuration> configs) : configs_(std::move(configs)) {
  for (const auto& c : configs_) {
    if (minimum_generating_sets(c).m <= kMaxPlanGenerators) {
      plans_.emplace_back(CompiledPlan(first_plan(c)));
    } else {
      plans_.emplace_back(std::nullopt);
    }
  }
}

std::vector<std::uint64_t> VectorCounter::row(const SteinerTripleSystem& sts) const {
  std::vector<std::uint64_t> out{1};
  for (std::size_t i = 0; i < configs_.size(); ++i) {
    out.push_back(plans_[i] ? plans_[i]->count(sts) : list_occurrences(configs_[i], sts).size());
  }
  return out;
}

std::vector<std::uint64_t> count_vector(const SteinerTripleSystem& sts, const std::vector<Configuration>& configs) {
  return VectorCounter(configs).row(sts);
}

std::size_t exact_rank(std::vector<std::vector<BigInt>> a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::size_t rank = 0;
  BigInt prev = 1;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[rank]);
    const BigInt pivot = a[rank][c];
    for (std::size_t i = rank + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        a[i][j] = (pivot * a[i][j] - a[i][c] * a[rank][j]) / prev;
      }
      a[i][c] = 0;
    }
    prev = pivot;
    ++rank;
  }
  return rank;
}

std::size_t exact_rank(const std::vector<std::vector<std::uint64_t>>& m) {
  std::vector<std::vector<BigInt>> a;
  for (const auto& r : m) a.emplace_back(r.begin(), r.end());
  return exact_rank(std::move(a));
}

IndependenceReport independence_check(int n, std::size_t systems, int v, std::uint64_t seed, int jobs) {
  const VectorCounter counter(full_configurations_up_to(n));
  IndependenceReport rep;
  rep.matrix.columns.push_back("1");
  for (const auto& c : counter.configs()) rep.matrix.columns.push_back(c.name());
  rep.target = rep.matrix.columns.size();

  // distinct systems, redrawing duplicates from the next stream
  std::vector<SteinerTripleSystem> drawn;
  for (std::uint64_t stream = 0; drawn.size() < systems; ++stream) {
    HillClimbConfig hc;
    hc.v = v;
    hc.seed = mix_seed(seed, stream);
    auto s = hill_climb(hc);
    if (std::find(drawn.begin(), drawn.end(), s) != drawn.end()) {
      ++rep.redraws;
      continue;
    }
    drawn.push_back(std::move(s));
  }

  rep.matrix.rows.resize(drawn.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next++) < drawn.size();) rep.matrix.rows[i] = counter.row(drawn[i]);
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < std::max(jobs, 1); ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  rep.rank = exact_rank(rep.matrix.rows);
  rep.full_rank = rep.rank == rep.target;
  return rep;
}

void write_matrix_csv(const RankMatrix& m, std::ostream& out) {
  for (std::size_t j = 0; j < m.columns.size(); ++j) out << (j ? "," : "") << m.columns[j];
  out << '\n';
  for (const auto& r : m.rows) {
    for (std::size_t j = 0; j < r.size(); ++j) out << (j ? "," : "") << r[j];
    out << '\n';
  }
}

}  // namespace tricount
