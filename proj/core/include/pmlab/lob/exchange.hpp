#pragma once

#include <map>
#include <set>
#include <unordered_map>
#include <vector>

#include "pmlab/lob/book.hpp"
#include "pmlab/lob/types.hpp"

namespace pmlab::lob {

/// Deterministic continuous double auction over one or more binary
/// contracts, with the cash ledger that makes conservation auditable:
/// every minted pair escrows exactly $1, transfers move cash between
/// traders, settlement pays $1 per pair to the winning side.
///
/// Strictly sequential; callers that want parallelism run independent
/// Exchange instances.
class Exchange {
 public:
  explicit Exchange(int n_contracts);

  int contracts() const { return static_cast<int>(books_.size()); }

  SubmitResult submit_limit(TraderId trader, ContractId contract, Side side, Tick price,
                            Qty qty, double time, bool against_inventory = false);

  /// A market order is a limit order priced at the best opposite level; it
  /// fills at most that level's quantity and the remainder is cancelled,
  /// never rested.
  SubmitResult submit_market(TraderId trader, ContractId contract, Side side, Qty qty,
                             double time, bool against_inventory = false);

  RejectReason cancel(OrderId id, double time);

  /// Expires every open order (ascending id). Emitted as Expire events.
  void expire_open_orders(double time);

  /// Per-order expiry, used by log replay.
  RejectReason expire_order(OrderId id, double time);

  /// Re-applies a logged submission verbatim (same id, seq and time are
  /// re-derived). Market orders are matched against the logged price.
  SubmitResult apply_logged(const Order& order);

  /// Pays $1 per share of the winning side and zeroes holdings and escrow.
  /// `outcome_yes[c]` is 1 when YES wins contract c. Books must be empty.
  void settle(const std::vector<int>& outcome_yes, double time);

  const std::vector<OrderEvent>& events() const { return events_; }
  const Book& book(ContractId c) const { return books_.at(c); }
  BookSnapshot snapshot_top5(ContractId c, double time) const {
    return books_.at(c).snapshot_top5(c, time);
  }

  /// Open orders of one trader, ascending id.
  std::vector<OrderId> open_orders_of(TraderId trader) const;

  const Order* order(OrderId id) const;  // any order ever accepted

  Qty holdings(TraderId trader, ContractId c, Side s) const;
  /// Held quantity not already reserved by open inventory sells.
  Qty available_to_sell(TraderId trader, ContractId c, Side held) const;
  Cents cash(TraderId trader) const;
  Cents escrow_total() const { return escrow_; }
  Qty pairs_outstanding(ContractId c) const { return pairs_.at(c); }
  std::vector<TraderId> traders() const;

  bool uncrossed() const;
  std::uint64_t state_hash() const;

 private:
  struct Account {
    Cents cash = 0;
    std::vector<std::array<Qty, 2>> pos;        // [contract][side]
    std::vector<std::array<Qty, 2>> committed;  // held qty reserved by open inventory sells
  };

  Account& account(TraderId trader);
  SubmitResult execute(Order order, bool rest_remainder);
  void apply_fill(const Trade& trade, const Order& yes_order, const Order& no_order);
  void apply_party(TraderId trader, ContractId contract, Side side, Tick price_for_side,
                   Qty qty, bool against_inventory);
  RejectReason validate(const Order& order) const;
  void release_commitment(const Order& order, Qty qty);
  void close_open(const Order& order);

  void emit_submit(const Order& order);
  void emit_execute(const Trade& trade);
  void emit_close(EventKind kind, OrderId id, double time);

  std::vector<Book> books_;
  std::unordered_map<OrderId, Order> orders_;  // every accepted order, remaining kept current
  std::map<TraderId, Account> accounts_;
  std::map<TraderId, std::set<OrderId>> open_by_trader_;
  std::vector<Qty> pairs_;
  Cents escrow_ = 0;
  std::vector<OrderEvent> events_;
  OrderId next_order_id_ = 1;
  TradeId next_trade_id_ = 1;
  Seq next_seq_ = 1;
};

}  // namespace pmlab::lob
