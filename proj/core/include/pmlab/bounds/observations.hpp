#pragma once

#include <optional>
#include <set>
#include <span>
#include <vector>

#include "pmlab/lob/types.hpp"
#include "pmlab/sim/exec_prob.hpp"

namespace pmlab::bounds {

using lob::ContractId;
using lob::OrderEvent;
using lob::Qty;
using lob::Side;
using lob::Tick;
using lob::TraderId;

/// Conditioning cell for bound estimation: a days-before-resolution window
/// plus, unless pooled, the best bid and ask (YES scale) at submission.
/// Full-ladder conditioning would leave every cell almost empty; ladders
/// still enter through the execution-probability regressors.
struct HistoryKey {
  int window = 0;
  Tick best_bid_yes = 0;   // 0 = empty side
  Tick best_ask_yes = 100; // 100 = empty side

  auto operator<=>(const HistoryKey&) const = default;
};

/// One order submission, everything the bound formulas need, captured on
/// the submitting side's own scale before the order touched the book.
struct OrderObservation {
  TraderId trader = 0;
  ContractId contract = 0;
  Side side = Side::Yes;
  bool is_limit = true;
  double price = 0.0;      // own-side scale, in (0,1)
  double ask = 1.0;        // own-side best ask, 1 when the opposite side is empty
  double size = 0.0;
  Qty sweep_qty = 0;       // executable quantity of a full walk-up
  double sweep_cost = 0.0; // dollars paid for that quantity
  double time = 0.0;
  HistoryKey key;
  sim::MarketLadder ladder;  // pre-submission top five, for fitted oracles
};

struct ExtractionConfig {
  /// Window edges in days before resolution, descending (e.g. 40, 20, 10):
  /// window k covers (edges[k+1], edges[k]] with the last edge as the
  /// innermost cutoff. Empty = one pooled window over everything kept.
  std::vector<double> window_edges_days;
  double exclusion_days = 10.0;  // drop the market's final days
  int days = 365;
  bool condition_on_spread = true;  // include best bid/ask in the key
};

struct ExtractionResult {
  std::vector<OrderObservation> observations;
  int excluded_by_cutoff = 0;
  int outside_windows = 0;
};

/// Pulls every submission (optionally only those of `traders`) from an
/// event stream, keyed and ready for bound estimation.
ExtractionResult extract_observations(std::span<const OrderEvent> events, int n_contracts,
                                      const ExtractionConfig& config,
                                      const std::set<TraderId>* traders = nullptr);

/// Drops observations from the final stretch of the market, t > 1 - cutoff.
std::vector<OrderObservation> exclusion_filter(std::vector<OrderObservation> observations,
                                               double cutoff_fraction, int* dropped = nullptr);

}  // namespace pmlab::bounds
