#pragma once

#include <array>
#include <map>
#include <set>
#include <span>
#include <unordered_map>
#include <vector>

#include "pmlab/lob/types.hpp"

namespace pmlab::lob {

/// Reconstructs resting depth and order state from an event stream without
/// re-running the matching engine: Submit adds a limit order's quantity at
/// its tick, Execute debits both orders, Cancel/Expire remove the
/// remainder. Market orders never rest. Between a crossing Submit and its
/// last Execute the view is transiently crossed; uncrossed() gates reads.
class LogMirror {
 public:
  explicit LogMirror(int n_contracts);

  void apply(const OrderEvent& event);

  const Order* order(OrderId id) const;
  Qty remaining(OrderId id) const;
  bool is_open(OrderId id) const;

  Tick best_bid(ContractId c, Side s) const;
  Qty level_qty(ContractId c, Side s, Tick t) const;
  Qty open_qty(ContractId c, Side s) const;
  std::vector<LevelQuote> ladder(ContractId c, Side s, int depth) const;
  bool uncrossed(ContractId c) const;

  /// Walk-up preview: executable quantity and cost (in cents paid for
  /// `side`) of lifting the opposite ladder for `qty` shares.
  Qty sweep(ContractId c, Side side, Qty qty, Cents* cost_cents) const;

  /// Walk-down preview: quantity and proceeds of selling `qty` shares of
  /// `held` into that side's resting bids, best first.
  Qty sweep_sell(ContractId c, Side held, Qty qty, Cents* proceeds_cents) const;

  const std::map<TraderId, std::set<OrderId>>& open_by_trader() const { return open_by_trader_; }

 private:
  struct SideLevels {
    std::array<Qty, kMaxTick + 1> qty{};
    Qty total = 0;
  };

  void remove_open(const Order& order, Qty remainder);

  std::vector<std::array<SideLevels, 2>> levels_;  // [contract][side]
  std::unordered_map<OrderId, Order> orders_;      // remaining kept current
  std::map<TraderId, std::set<OrderId>> open_by_trader_;
};

}  // namespace pmlab::lob
