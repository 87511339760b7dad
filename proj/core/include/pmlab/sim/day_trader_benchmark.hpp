#pragma once

#include <span>
#include <vector>

#include "pmlab/lob/types.hpp"

namespace pmlab::sim {

using lob::Cents;
using lob::OrderEvent;
using lob::TraderId;

/// Algorithmic benchmark for a day trader (a trader whose terminal
/// holdings are zero in every contract): copy the subject's buys at their
/// executed prices, then exit each position at the first later book state
/// whose same-side bids absorb the whole position at a strict profit
/// (walking down levels when needed). Positions never sell at a loss;
/// whatever remains open settles at terminal value and is reported
/// separately.
struct BenchmarkReport {
  Cents trading_profit = 0;     // realized round trips, nonnegative by construction
  Cents settlement_profit = 0;  // terminal value of unsold inventory minus its cost
  int round_trips = 0;
  int buys_copied = 0;

  Cents total() const { return trading_profit + settlement_profit; }
};

/// Throws std::invalid_argument when the subject is unknown or is not a
/// day trader.
BenchmarkReport mimic_day_trader(std::span<const OrderEvent> events, int n_contracts,
                                 TraderId subject, const std::vector<int>& outcome_yes);

}  // namespace pmlab::sim
