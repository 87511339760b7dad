#pragma once

#include <span>
#include <vector>

#include "pmlab/analytics/portfolio.hpp"
#include "pmlab/lob/types.hpp"

namespace pmlab::analytics {

/// One (day, contract) aggregate. Days with no trades report volume 0 and
/// a missing price rather than a carried-forward one.
struct DailyRow {
  int day = 0;
  ContractId contract = 0;
  int n_trades = 0;
  lob::Qty volume = 0;
  double avg_price = 0.0;  // mean of execution prices (YES scale)
  bool has_price = false;
  int active_traders = 0;      // distinct traders touching the contract that day
  lob::Qty open_qty_yes = 0;   // resting quantity at the end of the day
  lob::Qty open_qty_no = 0;
};

std::vector<DailyRow> daily_series(std::span<const OrderEvent> events, int n_contracts, int days);

struct EntryBuckets {
  std::vector<double> edges;                  // K+1 edges over entry time
  std::vector<std::vector<double>> profits;   // per bucket, total profit in dollars
};

/// Buckets traders by first order time; bucket k holds entry times in
/// [edges[k], edges[k+1]) with the last bucket closed on the right.
EntryBuckets profits_by_entry_time(const std::vector<ProfitRow>& profits,
                                   const std::vector<double>& edges);

}  // namespace pmlab::analytics
