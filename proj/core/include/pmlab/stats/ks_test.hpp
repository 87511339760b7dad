#pragma once

#include <random>
#include <span>
#include <vector>

namespace pmlab::stats {

/// K-sample statistic: the largest distance between any one sample's
/// empirical CDF and the CDF of all observations pooled,
///   T = max_k sup_x |F_k(x) - F_pool(x)|.
/// Reported unscaled; critical values come from day-block subsampling.
double ks_k_sample_statistic(const std::vector<std::vector<double>>& samples);

/// One trading day's observations, each tagged with its sample index.
struct KsDay {
  std::vector<std::pair<int, double>> observations;  // (sample k, value)
};

struct KsTestResult {
  double statistic = 0.0;
  double p_value = 1.0;
  int replicates_used = 0;
  int replicates_failed = 0;
};

/// Approximates the null distribution of tau_A * T by re-computing the
/// statistic on random day subsets of size `block_size`; a replicate is
/// dropped when some sample is empty in the subset. tau_n = n_obs^beta
/// with n_obs the observation count in the (sub)sample.
KsTestResult ks_k_sample_test(const std::vector<KsDay>& days, int n_samples, int block_size,
                              int n_replicates, std::mt19937_64& rng, double beta = 0.5);

}  // namespace pmlab::stats
