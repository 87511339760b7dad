#include "pmlab/stats/ks_test.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pmlab/stats/subsample.hpp"

namespace pmlab::stats {

double ks_k_sample_statistic(const std::vector<std::vector<double>>& samples) {
  if (samples.size() < 2) throw std::invalid_argument("ks_k_sample_statistic: need K >= 2");

  std::vector<std::vector<double>> sorted;
  sorted.reserve(samples.size());
  std::vector<double> pooled;
  for (const auto& s : samples) {
    if (s.empty()) throw std::invalid_argument("ks_k_sample_statistic: empty sample");
    sorted.push_back(s);
    std::sort(sorted.back().begin(), sorted.back().end());
    pooled.insert(pooled.end(), s.begin(), s.end());
  }
  std::sort(pooled.begin(), pooled.end());
  const double n_pool = static_cast<double>(pooled.size());

  std::vector<double> points = pooled;
  points.erase(std::unique(points.begin(), points.end()), points.end());

  // Every CDF involved is constant between pooled sample points, so the
  // supremum over x is attained at one of them.
  double best = 0.0;
  for (const auto& s : sorted) {
    const double n_k = static_cast<double>(s.size());
    for (double x : points) {
      const double f_k =
          static_cast<double>(std::upper_bound(s.begin(), s.end(), x) - s.begin()) / n_k;
      const double f_pool =
          static_cast<double>(std::upper_bound(pooled.begin(), pooled.end(), x) - pooled.begin()) /
          n_pool;
      const double diff = std::abs(f_k - f_pool);
      if (diff > best) best = diff;
    }
  }
  return best;
}

KsTestResult ks_k_sample_test(const std::vector<KsDay>& days, int n_samples, int block_size,
                              int n_replicates, std::mt19937_64& rng, double beta) {
  if (days.empty()) throw std::invalid_argument("ks_k_sample_test: no days");
  if (n_samples < 2) throw std::invalid_argument("ks_k_sample_test: need K >= 2");
  const int n_days = static_cast<int>(days.size());
  if (block_size < 1 || block_size > n_days) {
    throw std::invalid_argument("ks_k_sample_test: need 1 <= b <= A");
  }

  auto collect = [&](std::span<const int> idx) {
    std::vector<std::vector<double>> samples(static_cast<std::size_t>(n_samples));
    std::size_t total = 0;
    for (int d : idx) {
      for (const auto& [k, v] : days[d].observations) {
        samples.at(k).push_back(v);
        ++total;
      }
    }
    return std::pair{std::move(samples), total};
  };

  std::vector<int> all(days.size());
  for (int i = 0; i < n_days; ++i) all[i] = i;
  const auto [full_samples, full_n] = collect(all);

  KsTestResult result;
  result.statistic = ks_k_sample_statistic(full_samples);
  const double tau_full = std::pow(static_cast<double>(full_n), beta);

  int exceed = 0;
  for (int a = 0; a < n_replicates; ++a) {
    const std::vector<int> idx = sample_day_indices(n_days, block_size, false, rng);
    const auto [samples, n_obs] = collect(idx);
    const bool ok = std::all_of(samples.begin(), samples.end(),
                                [](const auto& s) { return !s.empty(); });
    if (!ok) {
      ++result.replicates_failed;
      continue;
    }
    const double stat = ks_k_sample_statistic(samples);
    const double tau_b = std::pow(static_cast<double>(n_obs), beta);
    if (tau_b * stat >= tau_full * result.statistic) ++exceed;
    ++result.replicates_used;
  }
  result.p_value = result.replicates_used > 0
                       ? static_cast<double>(exceed) / static_cast<double>(result.replicates_used)
                       : 1.0;
  return result;
}

}  // namespace pmlab::stats
