#pragma once

#include <functional>
#include <optional>
#include <random>
#include <span>
#include <vector>

namespace pmlab::stats {

/// Estimator evaluated on a subset of day blocks, identified by index.
/// Returning nullopt drops the replicate (counted, not fatal).
using BlockEstimator = std::function<std::optional<double>(std::span<const int> day_indices)>;

std::vector<int> sample_day_indices(int n_days, int block_size, bool with_replacement,
                                    std::mt19937_64& rng);

/// Approximation of an estimator's sampling distribution from `q` random
/// day subsets of size b: the distribution of tau_b * |theta_hat_b - theta_hat|.
struct SubsampleResult {
  int n_days = 0;
  int block_size = 0;
  int replicates_requested = 0;
  int replicates_failed = 0;
  double full_estimate = 0.0;
  std::vector<double> norms;  // |replicate - full|, sorted ascending

  /// Inverse of the approximated distribution at `level`, scale tau.
  double quantile(double level, double tau = 1.0) const;
  bool reliable() const {
    return replicates_requested > 0 &&
           replicates_failed * 20 <= replicates_requested;  // <= 5% dropped
  }
};

/// Index sets are drawn from `rng` up front, so the result does not depend
/// on `jobs`.
SubsampleResult subsample(int n_days, const BlockEstimator& estimator, int block_size,
                          int n_replicates, std::mt19937_64& rng,
                          bool with_replacement = false, int jobs = 1);

struct ConfidenceInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool reliable = true;
};

/// Symmetric-norm interval: theta_hat +/- L^{-1}(level) / tau_A with
/// tau_n = n^beta.
ConfidenceInterval confidence_interval(const SubsampleResult& result, double level,
                                       double beta = 0.5);

/// Least-squares fit of the rate exponent from quantile logs at several
/// block sizes: y_kj = log L^{-1}_{b_k}(s_j | tau=1) decays like
/// -beta * log(b_k), so beta is the negated regression slope. Exact when
/// the quantiles follow a pure power law.
double beta_from_quantile_logs(std::span<const double> block_sizes,
                               const std::vector<std::vector<double>>& quantile_logs);

struct BetaEstimate {
  double beta = 0.0;
  double r_squared = 0.0;  // diagnostic only
};

BetaEstimate estimate_beta(int n_days, const BlockEstimator& estimator,
                           std::span<const int> block_sizes, std::span<const double> quantiles,
                           int n_replicates, std::mt19937_64& rng);

}  // namespace pmlab::stats
