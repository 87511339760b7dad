#pragma once

#include <array>
#include <deque>
#include <unordered_map>
#include <vector>

#include "pmlab/lob/types.hpp"

namespace pmlab::lob {

/// Price-time priority bid book for one binary contract. Both sides hold
/// BUY orders only; a YES bid at p and a NO bid at b cross when p + b >= 100.
/// Matching consumes the opposite side best-price-first, FIFO within a
/// level, and executes at the resting order's terms.
class Book {
 public:
  struct Fill {
    OrderId resting_id = 0;
    Side resting_side = Side::Yes;
    Tick resting_price = 0;
    Qty qty = 0;
  };

  /// Matches `order` while marketable, updating `order.remaining`. The
  /// remainder rests at its limit when `rest_remainder` is set (limit
  /// orders); market orders pass false and the caller discards it.
  /// `order` must already be validated and carry a unique id.
  std::vector<Fill> submit(Order& order, bool rest_remainder);

  /// Removes an open order. Returns false when the id is unknown or closed.
  bool cancel(OrderId id);

  Tick best_bid(Side s) const { return best_[side_index(s)]; }
  Qty level_qty(Side s, Tick t) const;
  Qty open_qty(Side s) const { return open_qty_[side_index(s)]; }
  std::size_t open_orders() const { return open_.size(); }

  const Order* open_order(OrderId id) const;

  /// Best `depth` levels of one side, descending price, quantities summed
  /// over resting orders at each tick.
  std::vector<LevelQuote> ladder(Side s, int depth) const;

  BookSnapshot snapshot_top5(ContractId contract, double time) const;

  /// Quantity and cost of lifting the opposite side for `qty` shares of
  /// `side`, walking levels best-first. Returns executable quantity;
  /// `cost_cents` accumulates price paid for `side` (complement of the
  /// resting ticks).
  Qty sweep(Side side, Qty qty, Cents* cost_cents) const;

  bool uncrossed() const;

  /// Folds the full resting state into a running FNV hash.
  std::uint64_t state_hash(std::uint64_t hash) const;

 private:
  struct Level {
    std::deque<OrderId> fifo;
    Qty qty = 0;
  };

  void rest(const Order& order);
  void refresh_best(Side s);

  std::array<std::array<Level, kMaxTick + 1>, 2> levels_{};
  std::array<Tick, 2> best_{0, 0};
  std::array<Qty, 2> open_qty_{0, 0};
  std::unordered_map<OrderId, Order> open_;
};

}  // namespace pmlab::lob
