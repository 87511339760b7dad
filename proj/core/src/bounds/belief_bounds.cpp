#include "pmlab/bounds/belief_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "pmlab/stats/ecdf.hpp"
#include "pmlab/stats/subsample.hpp"

namespace pmlab::bounds {

namespace {
constexpr double kPhiCeiling = 1.0 - 1e-3;  // beyond this the bound blows up
}

double order_upper_belief(const OrderObservation& obs, const sim::ExecProbOracle& phi,
                          bool* degenerate) {
  if (degenerate != nullptr) *degenerate = false;

  const sim::ExecQuery query = sim::make_exec_query(
      obs.ladder, obs.side, static_cast<Tick>(std::lround(obs.price * 100.0)),
      static_cast<Qty>(std::llround(obs.size)));
  const double p_exec = phi(query);
  if (p_exec >= kPhiCeiling) {
    if (degenerate != nullptr) *degenerate = true;
    return 1.0;
  }

  if (obs.sweep_qty <= 0) return 1.0;  // nothing to walk up, no choice content
  const double S = static_cast<double>(obs.sweep_qty);
  const double x = obs.size;
  const double denom = S - p_exec * x;
  if (denom <= 0.0) return 1.0;
  const double bound = (obs.sweep_cost - p_exec * obs.price * x) / denom;
  return std::clamp(bound, obs.price, 1.0);
}

std::optional<BeliefInterval> observation_interval(const OrderObservation& obs,
                                                   const sim::ExecProbOracle& phi) {
  BeliefInterval interval;
  if (obs.is_limit) {
    bool degenerate = false;
    const double choice_bound = order_upper_belief(obs, phi, &degenerate);
    if (degenerate) return std::nullopt;
    if (obs.side == Side::Yes) {
      interval.lo = obs.price;
      interval.hi = choice_bound;
    } else {
      interval.lo = 1.0 - choice_bound;
      interval.hi = 1.0 - obs.price;
    }
  } else {
    if (obs.side == Side::Yes) {
      interval.lo = obs.price;
      interval.hi = 1.0;
    } else {
      interval.lo = 0.0;
      interval.hi = 1.0 - obs.price;
    }
  }
  return interval;
}

namespace {

std::array<double, kGridSize> ecdf_on_grid(std::vector<double> values) {
  std::array<double, kGridSize> out{};
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  for (int i = 0; i < kGridSize; ++i) {
    const double s = grid_point(i) + 1e-12;
    const auto it = std::upper_bound(values.begin(), values.end(), s);
    out[i] = n > 0.0 ? static_cast<double>(it - values.begin()) / n : 0.0;
  }
  return out;
}

}  // namespace

std::array<double, kGridSize> upper_cdf_bound(std::span<const BeliefInterval> intervals) {
  std::vector<double> lo;
  lo.reserve(intervals.size());
  for (const BeliefInterval& iv : intervals) lo.push_back(iv.lo);
  return ecdf_on_grid(std::move(lo));
}

std::array<double, kGridSize> lower_cdf_bound(std::span<const BeliefInterval> intervals) {
  std::vector<double> hi;
  hi.reserve(intervals.size());
  for (const BeliefInterval& iv : intervals) hi.push_back(iv.hi);
  return ecdf_on_grid(std::move(hi));
}

void isotonize(BoundCurves& curves) {
  const std::vector<double> lower =
      stats::isotonic_nondecreasing({curves.lower.begin(), curves.lower.end()});
  const std::vector<double> upper =
      stats::isotonic_nondecreasing({curves.upper.begin(), curves.upper.end()});
  for (int i = 0; i < kGridSize; ++i) {
    curves.lower[i] = std::min(lower[i], upper[i]);
    curves.upper[i] = std::max(lower[i], upper[i]);
  }
}

BoundCurves estimate_bound_curves(std::span<const OrderObservation> observations,
                                  const sim::ExecProbOracle& phi) {
  BoundCurves curves;
  std::vector<BeliefInterval> intervals;
  intervals.reserve(observations.size());
  for (const OrderObservation& obs : observations) {
    const std::optional<BeliefInterval> interval = observation_interval(obs, phi);
    if (interval.has_value()) {
      intervals.push_back(*interval);
    } else {
      ++curves.n_dropped_phi;
    }
  }
  curves.n_used = static_cast<int>(intervals.size());
  if (!intervals.empty()) {
    curves.upper = upper_cdf_bound(intervals);
    curves.lower = lower_cdf_bound(intervals);
    isotonize(curves);
  }
  return curves;
}

MeanBeliefInterval mean_belief_interval(const BoundCurves& curves) {
  MeanBeliefInterval out;
  double lo = 0.0;
  double hi = 0.0;
  for (int i = 0; i < kGridSize; ++i) {
    lo += (1.0 - curves.upper[i]) * 0.01;
    hi += (1.0 - curves.lower[i]) * 0.01;
  }
  out.mean_lo = lo;
  out.mean_hi = hi;
  return out;
}

BeliefBoundEstimate estimate_bounds(HistoryKey key,
                                    std::span<const OrderObservation> observations,
                                    const sim::ExecProbOracle& phi,
                                    const BandConfig* band_config, std::mt19937_64& rng) {
  BeliefBoundEstimate estimate;
  estimate.key = key;
  estimate.curves = estimate_bound_curves(observations, phi);
  estimate.means = mean_belief_interval(estimate.curves);
  if (band_config == nullptr || estimate.curves.n_used == 0) return estimate;

  // Day blocks over the observations actually present.
  std::map<int, std::vector<std::size_t>> by_day;
  for (std::size_t i = 0; i < observations.size(); ++i) {
    int day = static_cast<int>(observations[i].time * band_config->days);
    if (day >= band_config->days) day = band_config->days - 1;
    by_day[day].push_back(i);
  }
  const int n_days = static_cast<int>(by_day.size());
  if (n_days < 2) return estimate;

  std::vector<const std::vector<std::size_t>*> day_lists;
  day_lists.reserve(by_day.size());
  for (const auto& [day, list] : by_day) day_lists.push_back(&list);

  int block = band_config->block_days > 0 ? band_config->block_days : std::max(1, n_days / 4);
  block = std::min(block, n_days);

  BoundBands bands;
  bands.level = band_config->level;
  bands.block_days = block;

  std::vector<std::array<double, kGridSize>> lower_dev;
  std::vector<std::array<double, kGridSize>> upper_dev;
  std::vector<double> mean_lo_dev;
  std::vector<double> mean_hi_dev;

  std::vector<OrderObservation> replica;
  for (int a = 0; a < band_config->replicates; ++a) {
    const std::vector<int> pick = stats::sample_day_indices(n_days, block, false, rng);
    replica.clear();
    for (int d : pick) {
      for (std::size_t i : *day_lists[d]) replica.push_back(observations[i]);
    }
    if (replica.empty()) continue;
    const BoundCurves curves = estimate_bound_curves(replica, phi);
    if (curves.n_used == 0) continue;
    const MeanBeliefInterval means = mean_belief_interval(curves);

    std::array<double, kGridSize> dl{};
    std::array<double, kGridSize> du{};
    for (int i = 0; i < kGridSize; ++i) {
      dl[i] = std::abs(curves.lower[i] - estimate.curves.lower[i]);
      du[i] = std::abs(curves.upper[i] - estimate.curves.upper[i]);
    }
    lower_dev.push_back(dl);
    upper_dev.push_back(du);
    mean_lo_dev.push_back(std::abs(means.mean_lo - estimate.means.mean_lo));
    mean_hi_dev.push_back(std::abs(means.mean_hi - estimate.means.mean_hi));
  }
  if (lower_dev.empty()) return estimate;
  bands.replicates_used = static_cast<int>(lower_dev.size());

  const double scale = std::pow(static_cast<double>(block) / n_days, band_config->beta);
  auto band_at = [&](const std::vector<std::array<double, kGridSize>>& dev, int i) {
    std::vector<double> v;
    v.reserve(dev.size());
    for (const auto& d : dev) v.push_back(d[i]);
    std::sort(v.begin(), v.end());
    return stats::sample_quantile(std::move(v), bands.level) * scale;
  };

  for (int i = 0; i < kGridSize; ++i) {
    const double hl = band_at(lower_dev, i);
    const double hu = band_at(upper_dev, i);
    bands.lower_lo[i] = std::max(0.0, estimate.curves.lower[i] - hl);
    bands.lower_hi[i] = std::min(1.0, estimate.curves.lower[i] + hl);
    bands.upper_lo[i] = std::max(0.0, estimate.curves.upper[i] - hu);
    bands.upper_hi[i] = std::min(1.0, estimate.curves.upper[i] + hu);
  }
  {
    std::sort(mean_lo_dev.begin(), mean_lo_dev.end());
    std::sort(mean_hi_dev.begin(), mean_hi_dev.end());
    const double h_lo = stats::sample_quantile(mean_lo_dev, bands.level) * scale;
    const double h_hi = stats::sample_quantile(mean_hi_dev, bands.level) * scale;
    bands.mean_lo_lo = estimate.means.mean_lo - h_lo;
    bands.mean_lo_hi = estimate.means.mean_lo + h_lo;
    bands.mean_hi_lo = estimate.means.mean_hi - h_hi;
    bands.mean_hi_hi = estimate.means.mean_hi + h_hi;
  }
  estimate.bands = bands;
  return estimate;
}

}  // namespace pmlab::bounds
