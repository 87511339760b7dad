#include "pmlab/stats/subsample.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "pmlab/stats/ecdf.hpp"

namespace pmlab::stats {

std::vector<double> isotonic_nondecreasing(std::span<const double> y) {
  std::vector<double> value;
  std::vector<double> weight;
  value.reserve(y.size());
  weight.reserve(y.size());
  for (double v : y) {
    value.push_back(v);
    weight.push_back(1.0);
    while (value.size() >= 2 && value[value.size() - 2] > value.back()) {
      const double w = weight[weight.size() - 2] + weight.back();
      const double merged =
          (value[value.size() - 2] * weight[weight.size() - 2] + value.back() * weight.back()) / w;
      value.pop_back();
      weight.pop_back();
      value.back() = merged;
      weight.back() = w;
    }
  }
  std::vector<double> out;
  out.reserve(y.size());
  for (std::size_t i = 0; i < value.size(); ++i) {
    for (int k = 0; k < static_cast<int>(weight[i]); ++k) out.push_back(value[i]);
  }
  return out;
}

double sample_quantile(std::vector<double> sorted_values, double level) {
  if (sorted_values.empty()) throw std::invalid_argument("sample_quantile: empty sample");
  if (level <= 0.0) return sorted_values.front();
  if (level >= 1.0) return sorted_values.back();
  const auto n = static_cast<double>(sorted_values.size());
  auto idx = static_cast<std::size_t>(std::ceil(level * n)) - 1;
  if (idx >= sorted_values.size()) idx = sorted_values.size() - 1;
  return sorted_values[idx];
}

std::vector<int> sample_day_indices(int n_days, int block_size, bool with_replacement,
                                    std::mt19937_64& rng) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(block_size));
  if (with_replacement) {
    std::uniform_int_distribution<int> pick(0, n_days - 1);
    for (int i = 0; i < block_size; ++i) out.push_back(pick(rng));
  } else {
    // Partial Fisher-Yates over an index array.
    std::vector<int> idx(static_cast<std::size_t>(n_days));
    std::iota(idx.begin(), idx.end(), 0);
    for (int i = 0; i < block_size; ++i) {
      std::uniform_int_distribution<int> pick(i, n_days - 1);
      std::swap(idx[i], idx[pick(rng)]);
      out.push_back(idx[i]);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

double SubsampleResult::quantile(double level, double tau) const {
  if (norms.empty()) throw std::logic_error("SubsampleResult: no replicates");
  if (level <= 0.0) return 0.0;  // the norm distribution starts at zero
  return tau * sample_quantile(norms, level);
}

SubsampleResult subsample(int n_days, const BlockEstimator& estimator, int block_size,
                          int n_replicates, std::mt19937_64& rng, bool with_replacement,
                          int jobs) {
  if (n_days < 1 || block_size < 1 || block_size > n_days) {
    throw std::invalid_argument("subsample: need 1 <= b <= A");
  }
  if (n_replicates < 1) throw std::invalid_argument("subsample: need q >= 1");

  SubsampleResult result;
  result.n_days = n_days;
  result.block_size = block_size;
  result.replicates_requested = n_replicates;

  std::vector<int> all(static_cast<std::size_t>(n_days));
  std::iota(all.begin(), all.end(), 0);
  const std::optional<double> full = estimator(all);
  if (!full.has_value()) throw std::runtime_error("subsample: estimator failed on full sample");
  result.full_estimate = *full;

  std::vector<std::vector<int>> draws;
  draws.reserve(static_cast<std::size_t>(n_replicates));
  for (int a = 0; a < n_replicates; ++a) {
    draws.push_back(sample_day_indices(n_days, block_size, with_replacement, rng));
  }

  std::vector<std::optional<double>> estimates(draws.size());
  if (jobs <= 1) {
    for (std::size_t a = 0; a < draws.size(); ++a) estimates[a] = estimator(draws[a]);
  } else {
    std::vector<std::thread> workers;
    std::atomic<std::size_t> next{0};
    for (int j = 0; j < jobs; ++j) {
      workers.emplace_back([&] {
        for (std::size_t a = next.fetch_add(1); a < draws.size(); a = next.fetch_add(1)) {
          estimates[a] = estimator(draws[a]);
        }
      });
    }
    for (std::thread& w : workers) w.join();
  }

  result.norms.reserve(draws.size());
  for (const std::optional<double>& theta : estimates) {
    if (!theta.has_value()) {
      ++result.replicates_failed;
      continue;
    }
    result.norms.push_back(std::abs(*theta - result.full_estimate));
  }
  if (result.norms.empty()) throw std::runtime_error("subsample: every replicate failed");
  std::sort(result.norms.begin(), result.norms.end());
  return result;
}

ConfidenceInterval confidence_interval(const SubsampleResult& result, double level, double beta) {
  const double tau_b = std::pow(static_cast<double>(result.block_size), beta);
  const double tau_a = std::pow(static_cast<double>(result.n_days), beta);
  const double half = result.quantile(level, tau_b) / tau_a;
  return {result.full_estimate - half, result.full_estimate + half, result.reliable()};
}

double beta_from_quantile_logs(std::span<const double> block_sizes,
                               const std::vector<std::vector<double>>& quantile_logs) {
  const std::size_t K = block_sizes.size();
  if (K < 2 || quantile_logs.size() != K) {
    throw std::invalid_argument("beta_from_quantile_logs: need K >= 2 block sizes");
  }
  std::vector<double> log_b(K);
  std::vector<double> y_k(K);
  for (std::size_t k = 0; k < K; ++k) {
    if (quantile_logs[k].empty()) {
      throw std::invalid_argument("beta_from_quantile_logs: empty quantile row");
    }
    log_b[k] = std::log(block_sizes[k]);
    double sum = 0.0;
    for (double v : quantile_logs[k]) sum += v;
    y_k[k] = sum / static_cast<double>(quantile_logs[k].size());
  }
  const double log_mean = std::accumulate(log_b.begin(), log_b.end(), 0.0) / static_cast<double>(K);
  const double y_mean = std::accumulate(y_k.begin(), y_k.end(), 0.0) / static_cast<double>(K);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t k = 0; k < K; ++k) {
    num += (y_k[k] - y_mean) * (log_b[k] - log_mean);
    den += (log_b[k] - log_mean) * (log_b[k] - log_mean);
  }
  if (den == 0.0) throw std::invalid_argument("beta_from_quantile_logs: block sizes all equal");
  // log-quantiles fall with log b at rate beta, so the slope is -beta.
  return -num / den;
}

BetaEstimate estimate_beta(int n_days, const BlockEstimator& estimator,
                           std::span<const int> block_sizes, std::span<const double> quantiles,
                           int n_replicates, std::mt19937_64& rng) {
  if (block_sizes.size() < 2) throw std::invalid_argument("estimate_beta: need K >= 2");
  if (quantiles.empty()) throw std::invalid_argument("estimate_beta: need J >= 1 quantiles");

  std::vector<double> bs;
  std::vector<std::vector<double>> logs;
  for (int b : block_sizes) {
    const SubsampleResult res = subsample(n_days, estimator, b, n_replicates, rng);
    std::vector<double> row;
    row.reserve(quantiles.size());
    for (double s : quantiles) {
      row.push_back(std::log(std::max(res.quantile(s), 1e-300)));
    }
    bs.push_back(static_cast<double>(b));
    logs.push_back(std::move(row));
  }
  const double beta = beta_from_quantile_logs(bs, logs);

  // R^2 of the averaged regression as a fit diagnostic.
  const std::size_t K = bs.size();
  std::vector<double> y_k(K);
  for (std::size_t k = 0; k < K; ++k) {
    double sum = 0.0;
    for (double v : logs[k]) sum += v;
    y_k[k] = sum / static_cast<double>(logs[k].size());
  }
  double log_mean = 0.0;
  double y_mean = 0.0;
  for (std::size_t k = 0; k < K; ++k) {
    log_mean += std::log(bs[k]);
    y_mean += y_k[k];
  }
  log_mean /= static_cast<double>(K);
  y_mean /= static_cast<double>(K);
  double ss_tot = 0.0;
  double ss_res = 0.0;
  for (std::size_t k = 0; k < K; ++k) {
    const double fitted = y_mean - beta * (std::log(bs[k]) - log_mean);
    ss_tot += (y_k[k] - y_mean) * (y_k[k] - y_mean);
    ss_res += (y_k[k] - fitted) * (y_k[k] - fitted);
  }
  const double r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return {beta, r2};
}

}  // namespace pmlab::stats
