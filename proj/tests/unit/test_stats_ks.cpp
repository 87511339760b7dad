#include <stdexcept>
#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "pmlab/stats/ks_test.hpp"

using namespace pmlab::stats;

namespace {

/// Brute force: evaluate every per-sample CDF and the pooled CDF at every
/// sample point by direct counting.
double brute_force_statistic(const std::vector<std::vector<double>>& samples) {
  std::vector<double> points;
  std::size_t total = 0;
  for (const auto& s : samples) {
    points.insert(points.end(), s.begin(), s.end());
    total += s.size();
  }
  double best = 0.0;
  for (double x : points) {
    std::size_t pool_count = 0;
    for (const auto& s : samples) {
      for (double v : s) {
        if (v <= x) ++pool_count;
      }
    }
    const double f_pool = static_cast<double>(pool_count) / static_cast<double>(total);
    for (const auto& s : samples) {
      std::size_t count = 0;
      for (double v : s) {
        if (v <= x) ++count;
      }
      const double diff = std::abs(static_cast<double>(count) / static_cast<double>(s.size()) - f_pool);
      if (diff > best) best = diff;
    }
  }
  return best;
}

}  // namespace

TEST_CASE("identical samples have statistic zero") {
  const std::vector<double> sample{0.2, 0.5, 0.9, 1.4};
  CHECK(ks_k_sample_statistic({sample, sample, sample}) == 0.0);
}

TEST_CASE("two singleton samples at 0 and 1") {
  CHECK(ks_k_sample_statistic({{0.0}, {1.0}}) == doctest::Approx(0.5));
}

TEST_CASE("statistic equals the brute-force sup search on random cases") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> k_pick(2, 4);
  std::uniform_int_distribution<int> n_pick(1, 50);
  std::uniform_int_distribution<int> value(0, 19);  // ties on purpose
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<std::vector<double>> samples(k_pick(rng));
    for (auto& s : samples) {
      const int n = n_pick(rng);
      for (int i = 0; i < n; ++i) s.push_back(static_cast<double>(value(rng)) / 4.0);
    }
    CHECK(ks_k_sample_statistic(samples) == brute_force_statistic(samples));
  }
}

TEST_CASE("statistic is invariant under joint strictly monotone transforms") {
  std::mt19937_64 rng(32);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<std::vector<double>> samples(3);
  for (auto& s : samples) {
    for (int i = 0; i < 40; ++i) s.push_back(normal(rng));
  }
  const double base = ks_k_sample_statistic(samples);
  auto transformed = samples;
  for (auto& s : transformed) {
    for (double& v : s) v = std::exp(2.0 * v) + 1.0;
  }
  CHECK(ks_k_sample_statistic(transformed) == doctest::Approx(base).epsilon(1e-15));
}

TEST_CASE("empty samples and K < 2 are rejected") {
  CHECK_THROWS_AS(ks_k_sample_statistic({{1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(ks_k_sample_statistic({{1.0}, {}}), std::invalid_argument);
}

TEST_CASE("subsampled test keeps the null and rejects a shift with power") {
  std::mt19937_64 world_rng(41);
  const int n_days = 50;
  const int per_day = 20;  // 500 per bucket over 50 days, 2 buckets

  auto make_days = [&](double shift) {
    std::vector<KsDay> days(n_days);
    std::normal_distribution<double> base(0.0, 1.0);
    std::normal_distribution<double> moved(shift, 1.0);
    for (auto& day : days) {
      for (int i = 0; i < per_day / 2; ++i) {
        day.observations.emplace_back(0, base(world_rng));
        day.observations.emplace_back(1, moved(world_rng));
      }
    }
    return days;
  };

  int null_rejections = 0;
  int shift_rejections = 0;
  const int worlds = 10;
  for (int w = 0; w < worlds; ++w) {
    std::mt19937_64 rng(100 + w);
    const KsTestResult h0 = ks_k_sample_test(make_days(0.0), 2, n_days / 4, 100, rng);
    if (h0.p_value < 0.05) ++null_rejections;
    const KsTestResult h1 = ks_k_sample_test(make_days(0.4), 2, n_days / 4, 100, rng);
    if (h1.p_value < 0.05) ++shift_rejections;
  }
  CHECK(shift_rejections >= 9);      // power at least 0.9
  CHECK(null_rejections <= 2);       // size roughly held
}

TEST_CASE("identical buckets give statistic zero and p-value one") {
  std::vector<KsDay> days(10);
  for (int d = 0; d < 10; ++d) {
    for (int i = 0; i < 5; ++i) {
      days[d].observations.emplace_back(0, static_cast<double>(i));
      days[d].observations.emplace_back(1, static_cast<double>(i));
    }
  }
  std::mt19937_64 rng(1);
  const KsTestResult result = ks_k_sample_test(days, 2, 3, 50, rng);
  CHECK(result.statistic == 0.0);
  CHECK(result.p_value == 1.0);
}
