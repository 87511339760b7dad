#pragma once

#include <array>
#include <optional>
#include <random>
#include <span>

#include "pmlab/bounds/observations.hpp"
#include "pmlab/sim/exec_prob.hpp"

namespace pmlab::bounds {

inline constexpr int kGridSize = 99;  // every tradable tick
constexpr double grid_point(int i) { return (i + 1) / 100.0; }

/// What one order reveals about its submitter's belief that YES wins,
/// as an interval [lo, hi]:
///   - a YES order at price p is profitable only when q >= p;
///   - a YES limit order was preferred to immediate execution, which caps
///     the belief at B (order_upper_belief);
///   - NO-side orders carry the mirrored statements through the
///     complement, bounding q from above by 1 - p and from below by
///     1 - B of the NO scale.
/// Market orders contribute only their price-side statement.
struct BeliefInterval {
  double lo = 0.0;
  double hi = 1.0;
};

/// Choice bound for a limit order on its own side's scale: preferring the
/// posted price p to walking up the book for x shares at probability phi
/// caps the belief at
///   B = (sweep_cost - phi * p * x) / (sweep_qty - phi * x),
/// which collapses to (ask - phi * p) / (1 - phi) when the best level
/// covers x. Clamped to [p, 1]; vacuous (1) without opposite liquidity.
/// Sets *degenerate when phi is too close to 1 for the bound to exist.
double order_upper_belief(const OrderObservation& obs, const sim::ExecProbOracle& phi,
                          bool* degenerate = nullptr);

std::optional<BeliefInterval> observation_interval(const OrderObservation& obs,
                                                   const sim::ExecProbOracle& phi);

/// Pointwise upper bound on the belief CDF: the empirical CDF of interval
/// lower endpoints. Dominates the true CDF since lo_i <= q_i.
std::array<double, kGridSize> upper_cdf_bound(std::span<const BeliefInterval> intervals);

/// Pointwise lower bound: the empirical CDF of interval upper endpoints.
std::array<double, kGridSize> lower_cdf_bound(std::span<const BeliefInterval> intervals);

struct BoundCurves {
  std::array<double, kGridSize> lower{};
  std::array<double, kGridSize> upper{};
  int n_used = 0;
  int n_dropped_phi = 0;
};

/// Pool-adjacent-violators on each curve, then pointwise min/max so that
/// lower <= upper everywhere.
void isotonize(BoundCurves& curves);

BoundCurves estimate_bound_curves(std::span<const OrderObservation> observations,
                                  const sim::ExecProbOracle& phi);

struct MeanBeliefInterval {
  double mean_lo = 0.0;
  double mean_hi = 1.0;
};

/// Interval for the mean belief implied by the CDF sandwich:
/// integrating 1 - cdf over the grid, the upper CDF gives the low end.
MeanBeliefInterval mean_belief_interval(const BoundCurves& curves);

struct BandConfig {
  double level = 0.95;
  int block_days = 0;      // 0 = quarter of the observed days
  int replicates = 500;
  double beta = 0.5;
  int days = 365;
};

/// Pointwise confidence bands and mean-interval CIs from day-block
/// subsampling of the observations.
struct BoundBands {
  double level = 0.95;
  int block_days = 0;
  int replicates_used = 0;
  std::array<double, kGridSize> lower_lo{}, lower_hi{};
  std::array<double, kGridSize> upper_lo{}, upper_hi{};
  double mean_lo_lo = 0.0, mean_lo_hi = 0.0;
  double mean_hi_lo = 0.0, mean_hi_hi = 0.0;
};

struct BeliefBoundEstimate {
  HistoryKey key;
  BoundCurves curves;
  MeanBeliefInterval means;
  std::optional<BoundBands> bands;
};

BeliefBoundEstimate estimate_bounds(HistoryKey key,
                                    std::span<const OrderObservation> observations,
                                    const sim::ExecProbOracle& phi,
                                    const BandConfig* band_config, std::mt19937_64& rng);

}  // namespace pmlab::bounds
