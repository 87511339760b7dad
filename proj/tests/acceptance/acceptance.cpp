// Acceptance suite: every criterion prints one PASS/FAIL line; the binary
// exits nonzero if any fails. Thresholds are fixed here, not configurable.

#include <algorithm>
#include <cmath>
#include <deque>
#include <iostream>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <vector>

#include "pmlab/analytics/matrices.hpp"
#include "pmlab/analytics/portfolio.hpp"
#include "pmlab/bounds/belief_bounds.hpp"
#include "pmlab/bounds/observations.hpp"
#include "pmlab/lob/event_log.hpp"
#include "pmlab/margin/linked_margin.hpp"
#include "pmlab/sim/day_trader_benchmark.hpp"
#include "pmlab/sim/simulator.hpp"
#include "pmlab/stats/kernel_regression.hpp"
#include "pmlab/stats/ks_test.hpp"
#include "pmlab/stats/subsample.hpp"

using namespace pmlab;
using lob::Cents;
using lob::ContractId;
using lob::Exchange;
using lob::Qty;
using lob::Side;
using lob::Tick;
using lob::TraderId;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

// ---------------------------------------------------------------------------
// 1. Intro scenario: informed bulls against NO-side noise above 75; every
//    executed YES price must land in (0, 0.25], across 50 seeds.
Outcome criterion_scenario() {
  sim::SimConfig config;
  config.contracts = 1;
  config.true_state_prob = {0.9};
  config.n_informed = 25;
  config.n_noise = 25;
  config.belief = sim::ScalarDist::parse("uniform:0.76,0.99");
  config.hazard = 25.0;
  config.order_size = sim::SizeDist::parse("uniform_int:1,5");
  config.noise_side = sim::NoiseSideRule::parse("no");
  config.noise_band_lo = 76;
  config.noise_band_hi = 99;
  config.exec_prob = sim::ExecProbSpec::parse("constant:0.5");

  long executions = 0;
  long violations = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const sim::SimResult result = sim::run_simulation(config, seed);
    for (const lob::OrderEvent& ev : result.events) {
      if (ev.kind != lob::EventKind::Execute) continue;
      ++executions;
      if (ev.trade.price_yes < 1 || ev.trade.price_yes > 25) ++violations;
    }
  }
  std::ostringstream detail;
  detail << executions << " executions across 50 seeds, " << violations << " outside (0,0.25]";
  return {executions > 0 && violations == 0, detail.str()};
}

// ---------------------------------------------------------------------------
// 2. Linked-market margin: the worked three-candidate position pays exactly
//    $6, and max_exposure equals exhaustive enumeration on 1000 random
//    portfolios with up to 8 outcomes.
Cents enumeration_exposure(const margin::LinkedPosition& p) {
  Cents worst = 0;
  for (int w = 0; w < p.n_outcomes; ++w) {
    Cents pnl = 0;
    for (const margin::LinkedLeg& leg : p.legs) {
      Cents payout = 0;
      if (leg.side == Side::Yes && leg.outcome == w) payout = 100 * leg.qty;
      if (leg.side == Side::No && leg.outcome != w) payout = 100 * leg.qty;
      pnl += payout - leg.cash_paid;
    }
    worst = std::max(worst, -pnl);
  }
  return worst;
}

Outcome criterion_margin() {
  margin::LinkedPosition worked;
  worked.n_outcomes = 3;
  worked.legs = {{0, Side::Yes, 6, 300}, {1, Side::No, 4, 300}, {2, Side::No, 5, 400}};
  if (margin::max_exposure(worked) != 600) {
    return {false, "worked example != $6"};
  }

  std::mt19937_64 rng(7040);
  int mismatches = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    margin::LinkedPosition p;
    p.n_outcomes = 2 + static_cast<int>(rng() % 7);
    const int legs = 1 + static_cast<int>(rng() % 10);
    for (int i = 0; i < legs; ++i) {
      margin::LinkedLeg leg;
      leg.outcome = static_cast<int>(rng() % p.n_outcomes);
      leg.side = (rng() & 1) ? Side::Yes : Side::No;
      leg.qty = 1 + static_cast<Qty>(rng() % 15);
      leg.cash_paid = (1 + static_cast<Cents>(rng() % 99)) * leg.qty;
      p.legs.push_back(leg);
    }
    if (margin::max_exposure(p) != enumeration_exposure(p)) ++mismatches;
  }
  std::ostringstream detail;
  detail << "worked example $6 exact, " << mismatches << "/1000 oracle mismatches";
  return {mismatches == 0, detail.str()};
}

// ---------------------------------------------------------------------------
// 3. Book property suite: 20 seeds x 1e5 random operations against an
//    independent reference matcher, share/escrow audits after every
//    operation, and a full replay at the end of each run.
class ReferenceBook {
 public:
  explicit ReferenceBook(int contracts) : sides_(2 * static_cast<std::size_t>(contracts)) {}

  struct Fill {
    lob::OrderId id;
    Qty qty;
  };

  std::vector<Fill> submit(ContractId c, Side side, Tick price, Qty qty, lob::OrderId id,
                           bool rest) {
    std::vector<Fill> fills;
    auto& opp = level(c, lob::opposite(side));
    while (qty > 0) {
      auto best = opp.rbegin();
      while (best != opp.rend() && best->second.empty()) ++best;
      if (best == opp.rend() || price + best->first < 100) break;
      Entry& head = best->second.front();
      const Qty take = std::min(qty, head.remaining);
      fills.push_back({head.id, take});
      head.remaining -= take;
      qty -= take;
      if (head.remaining == 0) best->second.pop_front();
    }
    if (qty > 0 && rest) level(c, side)[price].push_back({id, qty});
    return fills;
  }

  bool cancel(ContractId c, Side side, Tick price, lob::OrderId id) {
    auto& entries = level(c, side)[price];
    for (auto it = entries.begin(); it != entries.end(); ++it) {
      if (it->id == id) {
        entries.erase(it);
        return true;
      }
    }
    return false;
  }

 private:
  struct Entry {
    lob::OrderId id;
    Qty remaining;
  };
  std::map<Tick, std::deque<Entry>>& level(ContractId c, Side s) {
    return sides_[2 * static_cast<std::size_t>(c) + static_cast<std::size_t>(lob::side_index(s))];
  }
  std::vector<std::map<Tick, std::deque<Entry>>> sides_;
};

Outcome criterion_book_properties() {
  const int contracts = 2;
  long violations = 0;
  std::ostringstream first_failure;

  auto check_fills = [&](const lob::SubmitResult& res, Side side,
                         const std::vector<ReferenceBook::Fill>& expected,
                         std::uint64_t seed) {
    if (expected.size() != res.trades.size()) {
      ++violations;
      first_failure << "fill count diverged from reference, seed " << seed;
      return;
    }
    for (std::size_t i = 0; i < expected.size(); ++i) {
      const lob::OrderId resting =
          side == Side::Yes ? res.trades[i].no_order : res.trades[i].yes_order;
      if (expected[i].id != resting || expected[i].qty != res.trades[i].qty) {
        ++violations;
        first_failure << "price-time priority diverged, seed " << seed;
        return;
      }
    }
  };

  for (std::uint64_t seed = 1; seed <= 20 && violations == 0; ++seed) {
    Exchange ex(contracts);
    ReferenceBook reference(contracts);
    std::mt19937_64 rng(seed * 977);
    std::uniform_int_distribution<Tick> tick(1, 99);
    std::uniform_int_distribution<Qty> qty(1, 12);
    std::uniform_int_distribution<TraderId> trader(1, 30);
    std::uniform_int_distribution<ContractId> contract(0, contracts - 1);
    std::vector<lob::OrderId> live;
    double t = 0.0;

    auto audit = [&]() {
      if (!ex.uncrossed()) {
        ++violations;
        first_failure << "crossed book, seed " << seed;
        return;
      }
      Qty pairs_total = 0;
      for (ContractId c = 0; c < contracts; ++c) {
        Qty yes = 0;
        Qty no = 0;
        for (TraderId who : ex.traders()) {
          yes += ex.holdings(who, c, Side::Yes);
          no += ex.holdings(who, c, Side::No);
        }
        if (yes != no || yes != ex.pairs_outstanding(c)) {
          ++violations;
          first_failure << "share conservation broke, seed " << seed;
          return;
        }
        pairs_total += ex.pairs_outstanding(c);
      }
      if (ex.escrow_total() != 100 * pairs_total) {
        ++violations;
        first_failure << "escrow != $1 x pairs, seed " << seed;
      }
    };

    for (int op = 0; op < 100000 && violations == 0; ++op) {
      t += 1e-6;
      const int kind = static_cast<int>(rng() % 10);
      const Side side = (rng() & 1) ? Side::Yes : Side::No;
      const ContractId c = contract(rng);
      const TraderId who = trader(rng);
      if (kind < 5) {
        const Tick price = tick(rng);
        const Qty n = qty(rng);
        const lob::SubmitResult res = ex.submit_limit(who, c, side, price, n, t);
        check_fills(res, side, reference.submit(c, side, price, n, res.order_id, true), seed);
        if (res.rested > 0) live.push_back(res.order_id);
      } else if (kind < 7) {
        const Qty n = qty(rng);
        const Tick opp_best = ex.book(c).best_bid(lob::opposite(side));
        const lob::SubmitResult res = ex.submit_market(who, c, side, n, t);
        if (res.ok()) {
          check_fills(res, side,
                      reference.submit(c, side, lob::tick_complement(opp_best), n,
                                       res.order_id, false),
                      seed);
        }
      } else if (kind < 9 && !live.empty()) {
        const std::size_t at = rng() % live.size();
        const lob::OrderId id = live[at];
        const lob::Order* order = ex.order(id);
        const bool open = order != nullptr && order->remaining > 0;
        const lob::RejectReason r = ex.cancel(id, t);
        if (open) {
          if (r != lob::RejectReason::None ||
              !reference.cancel(order->contract, order->side, order->price, id)) {
            ++violations;
            first_failure << "cancel diverged, seed " << seed;
          }
        }
        live.erase(live.begin() + static_cast<std::ptrdiff_t>(at));
      } else {
        const Side held = side;
        const Qty avail = ex.available_to_sell(who, c, held);
        if (avail > 0) {
          const Tick price = tick(rng);
          const Qty n = std::min<Qty>(avail, qty(rng));
          const lob::SubmitResult res =
              ex.submit_limit(who, c, lob::opposite(held), price, n, t, true);
          check_fills(res, lob::opposite(held),
                      reference.submit(c, lob::opposite(held), price, n, res.order_id, true),
                      seed);
          if (res.rested > 0) live.push_back(res.order_id);
        }
      }
      audit();
    }

    if (violations == 0) {
      const lob::ReplayResult replayed = lob::replay(ex.events(), contracts);
      if (replayed.exchange.state_hash() != ex.state_hash()) {
        ++violations;
        first_failure << "replay digest diverged, seed " << seed;
      }
    }
  }

  std::ostringstream detail;
  if (violations == 0) {
    detail << "20 seeds x 100000 ops: zero violations, replay digests equal";
  } else {
    detail << first_failure.str();
  }
  return {violations == 0, detail.str()};
}

// ---------------------------------------------------------------------------
// 4. Bound sandwich on simulated markets with known beliefs and a known
//    logistic execution-probability oracle.
Outcome criterion_bound_sandwich() {
  sim::SimConfig config;
  config.contracts = 1;
  config.true_state_prob = {0.5};
  config.n_informed = 320;
  config.n_noise = 0;
  config.belief = sim::ScalarDist::parse("beta:2,2");
  config.hazard = 14.0;
  config.order_size = sim::SizeDist::parse("uniform_int:1,3");
  config.exec_prob = sim::ExecProbSpec::parse("logistic:2,0,-14,0");
  const auto oracle = sim::make_oracle(config.exec_prob);

  bounds::ExtractionConfig extraction;
  extraction.window_edges_days = {};
  extraction.exclusion_days = 0.0;
  extraction.days = config.days;
  extraction.condition_on_spread = false;

  int worlds_with_mean = 0;
  long point_violations = 0;
  long interval_violations = 0;
  long total_orders = 0;
  double width_sum = 0.0;
  int n_small = 0;

  for (int world = 0; world < 100; ++world) {
    const sim::SimResult result = sim::run_simulation(config, 9000 + world);
    std::map<TraderId, double> beliefs;
    for (const auto& spec : result.truth.traders) beliefs[spec.id] = spec.belief;

    const auto extracted = bounds::extract_observations(result.events, 1, extraction);
    if (extracted.observations.size() < 2000) ++n_small;
    total_orders += static_cast<long>(extracted.observations.size());

    std::vector<double> qs;
    for (const auto& obs : extracted.observations) {
      const auto interval = bounds::observation_interval(obs, *oracle);
      if (!interval.has_value()) continue;
      const double q = beliefs.at(obs.trader);
      if (q < interval->lo - 1e-12 || q > interval->hi + 1e-12) ++interval_violations;
      qs.push_back(q);
    }

    const bounds::BoundCurves curves =
        bounds::estimate_bound_curves(extracted.observations, *oracle);
    std::sort(qs.begin(), qs.end());
    const double n = static_cast<double>(qs.size());
    for (int i = 0; i < bounds::kGridSize; ++i) {
      const double s = bounds::grid_point(i);
      const double truth =
          static_cast<double>(std::upper_bound(qs.begin(), qs.end(), s + 1e-12) - qs.begin()) / n;
      const double band = 1.645 * std::sqrt(std::max(truth * (1.0 - truth), 1e-9) / n);
      if (curves.upper[i] < truth - band) ++point_violations;
      if (curves.lower[i] > truth + band) ++point_violations;
    }

    const bounds::MeanBeliefInterval mean = bounds::mean_belief_interval(curves);
    if (mean.mean_lo <= 0.5 && 0.5 <= mean.mean_hi) ++worlds_with_mean;
    width_sum += mean.mean_hi - mean.mean_lo;
  }

  std::ostringstream detail;
  detail << total_orders / 100 << " informed orders/world, " << interval_violations
         << " per-order violations, " << point_violations
         << " banded grid violations, mean interval held 0.5 in " << worlds_with_mean
         << "/100 worlds (avg width " << width_sum / 100.0 << ", " << n_small
         << " worlds under 2000 orders)";
  const bool pass = interval_violations == 0 && point_violations == 0 &&
                    worlds_with_mean >= 90 && n_small == 0;
  return {pass, detail.str()};
}

// ---------------------------------------------------------------------------
// 5. Kernel-regression recovery of a synthetic execution surface.
Outcome criterion_nw_recovery() {
  std::mt19937_64 rng(6100);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto logistic = [](double z) { return 1.0 / (1.0 + std::exp(-z)); };
  const int n = 10000;
  std::vector<double> x;
  std::vector<double> y;
  x.reserve(2 * n);
  for (int i = 0; i < n; ++i) {
    const double p = unit(rng);
    const double x1 = 2.0 * unit(rng) - 1.0;
    x.push_back(p);
    x.push_back(x1);
    y.push_back(unit(rng) < logistic(2.0 - 6.0 * p + x1) ? 1.0 : 0.0);
  }
  const stats::NwModel model = stats::NwModel::fit(std::move(x), std::move(y), 2);
  double se = 0.0;
  int cells = 0;
  for (int i = 1; i < 20; ++i) {
    for (int j = 1; j < 20; ++j) {
      const double p = i / 20.0;
      const double x1 = 2.0 * (j / 20.0) - 1.0;
      const double truth = logistic(2.0 - 6.0 * p + x1);
      const double fitted = model.predict(std::vector<double>{p, x1});
      se += (fitted - truth) * (fitted - truth);
      ++cells;
    }
  }
  const double rmse = std::sqrt(se / cells);
  std::ostringstream detail;
  detail << "held-out RMSE " << rmse << " (limit 0.05), n = 10000";
  return {rmse <= 0.05, detail.str()};
}

// ---------------------------------------------------------------------------
// 6. Subsampling calibration: CI coverage, the rate regression on i.i.d.
//    data, and exactness on manufactured power-law replicates.
Outcome criterion_subsampling() {
  const int A = 1000;
  int covered = 0;
  for (int world = 0; world < 200; ++world) {
    std::mt19937_64 gen(40000 + world);
    std::normal_distribution<double> normal(0.3, 1.0);
    std::vector<double> days(A);
    for (double& v : days) v = normal(gen);
    const stats::BlockEstimator mean =
        [&days](std::span<const int> idx) -> std::optional<double> {
      double sum = 0.0;
      for (int d : idx) sum += days[d];
      return sum / static_cast<double>(idx.size());
    };
    std::mt19937_64 rng(90000 + world);
    const stats::SubsampleResult res = stats::subsample(A, mean, A / 4, 500, rng);
    const stats::ConfidenceInterval ci = stats::confidence_interval(res, 0.95, 0.5);
    if (ci.lo <= 0.3 && 0.3 <= ci.hi) ++covered;
  }

  std::mt19937_64 gen(123);
  std::normal_distribution<double> normal(0.0, 1.5);
  std::vector<double> days(A);
  for (double& v : days) v = normal(gen);
  const stats::BlockEstimator mean = [&days](std::span<const int> idx) -> std::optional<double> {
    double sum = 0.0;
    for (int d : idx) sum += days[d];
    return sum / static_cast<double>(idx.size());
  };
  std::mt19937_64 rng(321);
  const std::vector<int> blocks{20, 40, 80, 160};
  const std::vector<double> quantiles{0.75, 0.9};
  const stats::BetaEstimate est = stats::estimate_beta(A, mean, blocks, quantiles, 500, rng);

  const double beta0 = 0.41;
  const std::vector<double> block_sizes{25.0, 50.0, 100.0, 200.0};
  std::vector<std::vector<double>> logs;
  for (double b : block_sizes) {
    std::vector<double> row;
    for (double a : {0.4, 0.9, 1.7}) row.push_back(std::log(a) - beta0 * std::log(b));
    logs.push_back(row);
  }
  const double beta_exact = stats::beta_from_quantile_logs(block_sizes, logs);

  std::ostringstream detail;
  detail << "coverage " << covered << "/200, beta_hat " << est.beta << ", manufactured |err| "
         << std::abs(beta_exact - beta0);
  const bool pass = covered >= 180 && std::abs(est.beta - 0.5) <= 0.1 &&
                    std::abs(beta_exact - beta0) <= 1e-8;
  return {pass, detail.str()};
}

// ---------------------------------------------------------------------------
// 7. K-sample KS statistic equals brute force exactly.
double brute_force_ks(const std::vector<std::vector<double>>& samples) {
  std::vector<double> points;
  std::size_t total = 0;
  for (const auto& s : samples) {
    points.insert(points.end(), s.begin(), s.end());
    total += s.size();
  }
  double best = 0.0;
  for (double x : points) {
    std::size_t pool = 0;
    for (const auto& s : samples) {
      for (double v : s) {
        if (v <= x) ++pool;
      }
    }
    const double f_pool = static_cast<double>(pool) / static_cast<double>(total);
    for (const auto& s : samples) {
      std::size_t count = 0;
      for (double v : s) {
        if (v <= x) ++count;
      }
      best = std::max(
          best, std::abs(static_cast<double>(count) / static_cast<double>(s.size()) - f_pool));
    }
  }
  return best;
}

Outcome criterion_ks_oracle() {
  std::mt19937_64 rng(5151);
  int mismatches = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<std::vector<double>> samples(2 + rng() % 3);
    for (auto& s : samples) {
      const int n = 1 + static_cast<int>(rng() % 50);
      for (int i = 0; i < n; ++i) {
        s.push_back(static_cast<double>(rng() % 25) / 5.0);
      }
    }
    if (stats::ks_k_sample_statistic(samples) != brute_force_ks(samples)) ++mismatches;
  }
  const std::vector<double> same{0.1, 0.4, 0.4, 0.9};
  const bool zero_ok = stats::ks_k_sample_statistic({same, same, same, same}) == 0.0;
  std::ostringstream detail;
  detail << mismatches << "/1000 brute-force mismatches, identical-sample statistic "
         << (zero_ok ? "0" : "nonzero");
  return {mismatches == 0 && zero_ok, detail.str()};
}

// ---------------------------------------------------------------------------
// 8. Day-trader benchmark: nonnegative pre-settlement trading P&L for every
//    day trader, and exact economy-wide cash conservation.
Outcome criterion_benchmark() {
  sim::SimConfig config;
  config.contracts = 2;
  config.true_state_prob = {0.6, 0.4};
  config.n_informed = 15;
  config.n_noise = 35;
  config.belief = sim::ScalarDist::parse("beta:2,2");
  config.hazard = 25.0;
  config.order_size = sim::SizeDist::parse("uniform_int:1,4");
  config.noise_side = sim::NoiseSideRule::parse("mix:0.5");
  config.noise_band_lo = 30;
  config.noise_band_hi = 70;
  config.noise_flip_fraction = 0.7;
  config.exec_prob = sim::ExecProbSpec::parse("constant:0.4");

  int subjects = 0;
  int negative = 0;
  int conservation_failures = 0;
  for (std::uint64_t seed = 101; seed <= 105; ++seed) {
    const sim::SimResult result = sim::run_simulation(config, seed);
    const auto portfolios = analytics::build_portfolios(result.events, config.contracts);
    const auto rows = analytics::profit_decomposition(portfolios, result.truth.outcome_yes);
    Cents total = 0;
    for (const auto& row : rows) total += row.total;
    if (total != 0) ++conservation_failures;
    for (const auto& row : rows) {
      if (!row.day_trader) continue;
      const auto it = portfolios.find(row.trader);
      if (it == portfolios.end() || it->second.executions == 0) continue;
      const sim::BenchmarkReport report = sim::mimic_day_trader(
          result.events, config.contracts, row.trader, result.truth.outcome_yes);
      ++subjects;
      if (report.trading_profit < 0) ++negative;
    }
  }
  std::ostringstream detail;
  detail << subjects << " day traders over 5 seeds, " << negative
         << " with negative mimic trading P&L, " << conservation_failures
         << " conservation failures";
  return {subjects > 0 && negative == 0 && conservation_failures == 0, detail.str()};
}

// ---------------------------------------------------------------------------
// 9. Stubborn agents keep the transition diagonal heavy; the forced
//    convergence variant concentrates open orders in one column.
Outcome criterion_matrix_diagnostics() {
  sim::SimConfig stubborn;
  stubborn.contracts = 3;
  stubborn.true_state_prob = {0.5, 0.5, 0.5};
  stubborn.n_informed = 30;
  stubborn.n_noise = 30;
  stubborn.belief = sim::ScalarDist::parse("beta:2,2");
  stubborn.hazard = 40.0;
  stubborn.order_size = sim::SizeDist::parse("uniform_int:1,3");
  stubborn.noise_side = sim::NoiseSideRule::parse("no");
  stubborn.noise_band_lo = 35;
  stubborn.noise_band_hi = 65;
  stubborn.exec_prob = sim::ExecProbSpec::parse("constant:0.4");

  double min_diag = 1.0;
  for (std::uint64_t seed = 11; seed <= 13; ++seed) {
    const auto result = sim::run_simulation(stubborn, seed);
    const auto matrix = analytics::transition_matrix(result.events, 3, 1.0, 1.0);
    min_diag = std::min(min_diag, matrix.diagonal_mass());
  }

  sim::SimConfig convergent = stubborn;
  convergent.noise_side = sim::NoiseSideRule::parse("mix:0.5");
  convergent.noise_band_lo = 40;
  convergent.noise_band_hi = 60;
  convergent.hazard = 30.0;
  convergent.convergence_time = 0.5;
  convergent.convergence_contract = 0;
  convergent.convergence_side = Side::Yes;
  convergent.convergence_band_lo = 1;
  convergent.convergence_band_hi = 5;

  double min_column = 1.0;
  for (std::uint64_t seed = 21; seed <= 23; ++seed) {
    const auto result = sim::run_simulation(convergent, seed);
    const auto matrix = analytics::open_order_shift(result.events, 3, 0.9);
    min_column = std::min(min_column, matrix.max_column_share());
  }

  std::ostringstream detail;
  detail << "min diagonal mass " << min_diag << " (need >= 0.9), min column share " << min_column
         << " (need > 0.5)";
  return {min_diag >= 0.9 && min_column > 0.5, detail.str()};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"1 intro-scenario prices in (0,0.25]", criterion_scenario},
      {"2 linked-margin worked example and enumeration oracle", criterion_margin},
      {"3 book property suite with reference matcher and replay", criterion_book_properties},
      {"4 belief-bound sandwich and mean interval", criterion_bound_sandwich},
      {"5 kernel-regression surface recovery", criterion_nw_recovery},
      {"6 subsampling coverage and rate regression", criterion_subsampling},
      {"7 K-sample KS brute-force equivalence", criterion_ks_oracle},
      {"8 day-trader benchmark and cash conservation", criterion_benchmark},
      {"9 transition diagonal and convergence column", criterion_matrix_diagnostics},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    const Outcome outcome = criterion.run();
    std::cout << (outcome.pass ? "PASS" : "FAIL") << " criterion " << criterion.name << ": "
              << outcome.detail << std::endl;
    if (!outcome.pass) ++failures;
  }
  if (failures > 0) {
    std::cout << failures << " criterion(s) failed" << std::endl;
    return 1;
  }
  std::cout << "all 9 criteria passed" << std::endl;
  return 0;
}
