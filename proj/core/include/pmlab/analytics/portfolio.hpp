#pragma once

#include <array>
#include <map>
#include <span>
#include <vector>

#include "pmlab/lob/types.hpp"

namespace pmlab::analytics {

using lob::Cents;
using lob::ContractId;
using lob::OrderEvent;
using lob::Qty;
using lob::Side;
using lob::TraderId;

struct PortfolioLeg {
  Qty qty = 0;
  Cents cost = 0;  // average-cost basis, kept as an exact running total
};

/// Exact replay accounting for one trader: buys accumulate quantity and
/// cost; inventory sells release cost pro rata (integer division, the
/// remainder stays in the basis) and realize the difference as trading
/// P&L. Trading plus prediction profit always equals the trader's total
/// cash delta to the cent.
struct TraderPortfolio {
  TraderId trader = 0;
  Cents cash = 0;      // excludes settlement
  Cents realized = 0;  // trading P&L from closed round trips
  double entry_time = -1.0;
  int executions = 0;
  std::vector<std::array<PortfolioLeg, 2>> legs;  // [contract][side]

  bool flat() const;
};

std::map<TraderId, TraderPortfolio> build_portfolios(std::span<const OrderEvent> events,
                                                     int n_contracts);

struct ProfitRow {
  TraderId trader = 0;
  Cents trading = 0;
  Cents prediction = 0;
  Cents total = 0;
  bool day_trader = false;
  double entry_time = -1.0;
};

std::vector<ProfitRow> profit_decomposition(const std::map<TraderId, TraderPortfolio>& portfolios,
                                            const std::vector<int>& outcome_yes);

}  // namespace pmlab::analytics
