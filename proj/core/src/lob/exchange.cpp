#include "pmlab/lob/exchange.hpp"

#include <cassert>
#include <stdexcept>

namespace pmlab::lob {

Exchange::Exchange(int n_contracts) {
  if (n_contracts <= 0) throw std::invalid_argument("Exchange: need at least one contract");
  books_.resize(static_cast<std::size_t>(n_contracts));
  pairs_.assign(static_cast<std::size_t>(n_contracts), 0);
}

Exchange::Account& Exchange::account(TraderId trader) {
  Account& acc = accounts_[trader];
  if (acc.pos.empty()) {
    acc.pos.assign(books_.size(), {0, 0});
    acc.committed.assign(books_.size(), {0, 0});
  }
  return acc;
}

RejectReason Exchange::validate(const Order& order) const {
  if (order.contract < 0 || order.contract >= contracts()) return RejectReason::UnknownContract;
  if (!tick_valid(order.price)) return RejectReason::InvalidTick;
  if (order.qty <= 0) return RejectReason::NonPositiveQty;
  if (orders_.contains(order.id)) return RejectReason::DuplicateOrderId;
  return RejectReason::None;
}

SubmitResult Exchange::submit_limit(TraderId trader, ContractId contract, Side side, Tick price,
                                    Qty qty, double time, bool against_inventory) {
  Order order;
  order.id = next_order_id_;
  order.trader = trader;
  order.contract = contract;
  order.side = side;
  order.type = OrderType::Limit;
  order.price = price;
  order.qty = qty;
  order.remaining = qty;
  order.against_inventory = against_inventory;
  order.time = time;
  return execute(std::move(order), /*rest_remainder=*/true);
}

SubmitResult Exchange::submit_market(TraderId trader, ContractId contract, Side side, Qty qty,
                                     double time, bool against_inventory) {
  SubmitResult result;
  if (contract < 0 || contract >= contracts()) {
    result.reject = RejectReason::UnknownContract;
    return result;
  }
  const Tick opp_bid = books_[contract].best_bid(opposite(side));
  if (opp_bid == 0) {
    result.reject = RejectReason::NoLiquidity;
    return result;
  }
  Order order;
  order.id = next_order_id_;
  order.trader = trader;
  order.contract = contract;
  order.side = side;
  order.type = OrderType::Market;
  order.price = tick_complement(opp_bid);
  order.qty = qty;
  order.remaining = qty;
  order.against_inventory = against_inventory;
  order.time = time;
  return execute(std::move(order), /*rest_remainder=*/false);
}

SubmitResult Exchange::apply_logged(const Order& logged) {
  Order order = logged;
  order.remaining = order.qty;
  order.submit_seq = 0;
  SubmitResult result = execute(std::move(order), logged.type == OrderType::Limit);
  if (result.ok() && logged.id >= next_order_id_) next_order_id_ = logged.id + 1;
  return result;
}

SubmitResult Exchange::execute(Order order, bool rest_remainder) {
  SubmitResult result;
  result.reject = validate(order);
  if (!result.ok()) return result;

  if (order.against_inventory) {
    const Account& acc = account(order.trader);
    const Side held = opposite(order.side);
    const Qty available =
        acc.pos[order.contract][side_index(held)] - acc.committed[order.contract][side_index(held)];
    if (order.qty > available) {
      result.reject = RejectReason::InsufficientInventory;
      return result;
    }
  }

  if (order.id >= next_order_id_) next_order_id_ = order.id + 1;
  order.submit_seq = next_seq_;  // the Submit event's sequence number
  result.order_id = order.id;

  if (order.against_inventory) {
    account(order.trader).committed[order.contract][side_index(opposite(order.side))] += order.qty;
  }

  emit_submit(order);
  orders_.emplace(order.id, order);

  Book& book = books_[order.contract];
  const std::vector<Book::Fill> fills = book.submit(order, rest_remainder);
  Order& stored = orders_.at(order.id);
  stored.remaining = order.remaining;

  for (const Book::Fill& fill : fills) {
    Order& resting = orders_.at(fill.resting_id);
    resting.remaining -= fill.qty;
    if (resting.remaining == 0) close_open(resting);

    Trade trade;
    trade.id = next_trade_id_++;
    trade.contract = order.contract;
    trade.qty = fill.qty;
    trade.time = order.time;
    if (order.side == Side::Yes) {
      trade.yes_order = order.id;
      trade.no_order = fill.resting_id;
      trade.price_yes = tick_complement(fill.resting_price);
    } else {
      trade.yes_order = fill.resting_id;
      trade.no_order = order.id;
      trade.price_yes = fill.resting_price;
    }
    const Order& yes_order = orders_.at(trade.yes_order);
    const Order& no_order = orders_.at(trade.no_order);
    trade.kind = (!yes_order.against_inventory && !no_order.against_inventory)
                     ? TradeKind::Mint
                     : TradeKind::Transfer;
    emit_execute(trade);
    apply_fill(trade, yes_order, no_order);
    result.trades.push_back(trade);
  }

  if (stored.remaining > 0) {
    if (rest_remainder) {
      result.rested = stored.remaining;
      open_by_trader_[order.trader].insert(order.id);
    } else {
      result.cancelled_remainder = stored.remaining;
      release_commitment(stored, stored.remaining);
      stored.remaining = 0;
    }
  }
  return result;
}

void Exchange::apply_fill(const Trade& trade, const Order& yes_order, const Order& no_order) {
  apply_party(yes_order.trader, trade.contract, Side::Yes, trade.price_yes, trade.qty,
              yes_order.against_inventory);
  apply_party(no_order.trader, trade.contract, Side::No, tick_complement(trade.price_yes),
              trade.qty, no_order.against_inventory);
  pairs_[trade.contract] += trade.qty;
  if (yes_order.against_inventory) pairs_[trade.contract] -= trade.qty;
  if (no_order.against_inventory) pairs_[trade.contract] -= trade.qty;
}

void Exchange::apply_party(TraderId trader, ContractId contract, Side side, Tick price_for_side,
                           Qty qty, bool against_inventory) {
  Account& acc = account(trader);
  const Cents paid = static_cast<Cents>(price_for_side) * qty;
  acc.cash -= paid;
  escrow_ += paid;
  if (against_inventory) {
    // The fresh share nets against held inventory of the other side,
    // releasing the pair's escrow to the seller.
    const Side held = opposite(side);
    acc.pos[contract][side_index(held)] -= qty;
    acc.committed[contract][side_index(held)] -= qty;
    assert(acc.pos[contract][side_index(held)] >= 0);
    assert(acc.committed[contract][side_index(held)] >= 0);
    acc.cash += kPairValue * qty;
    escrow_ -= kPairValue * qty;
  } else {
    acc.pos[contract][side_index(side)] += qty;
  }
}

void Exchange::release_commitment(const Order& order, Qty qty) {
  if (!order.against_inventory) return;
  account(order.trader).committed[order.contract][side_index(opposite(order.side))] -= qty;
}

void Exchange::close_open(const Order& order) {
  auto it = open_by_trader_.find(order.trader);
  if (it != open_by_trader_.end()) it->second.erase(order.id);
}

RejectReason Exchange::cancel(OrderId id, double time) {
  auto it = orders_.find(id);
  if (it == orders_.end() || it->second.remaining == 0) return RejectReason::NotOpen;
  Order& order = it->second;
  if (!books_[order.contract].cancel(id)) return RejectReason::NotOpen;
  release_commitment(order, order.remaining);
  order.remaining = 0;
  close_open(order);
  emit_close(EventKind::Cancel, id, time);
  return RejectReason::None;
}

RejectReason Exchange::expire_order(OrderId id, double time) {
  auto it = orders_.find(id);
  if (it == orders_.end() || it->second.remaining == 0) return RejectReason::NotOpen;
  Order& order = it->second;
  if (!books_[order.contract].cancel(id)) return RejectReason::NotOpen;
  release_commitment(order, order.remaining);
  order.remaining = 0;
  close_open(order);
  emit_close(EventKind::Expire, id, time);
  return RejectReason::None;
}

void Exchange::expire_open_orders(double time) {
  std::vector<OrderId> open_ids;
  for (const auto& [trader, ids] : open_by_trader_) {
    open_ids.insert(open_ids.end(), ids.begin(), ids.end());
  }
  std::sort(open_ids.begin(), open_ids.end());
  for (OrderId id : open_ids) expire_order(id, time);
}

void Exchange::settle(const std::vector<int>& outcome_yes, double time) {
  (void)time;
  if (static_cast<int>(outcome_yes.size()) != contracts()) {
    throw std::invalid_argument("settle: one outcome per contract required");
  }
  for (const Book& book : books_) {
    if (book.open_orders() != 0) {
      throw std::logic_error("settle: open orders remain, expire them first");
    }
  }
  for (auto& [trader, acc] : accounts_) {
    for (ContractId c = 0; c < contracts(); ++c) {
      const Side winner = outcome_yes[c] != 0 ? Side::Yes : Side::No;
      const Qty won = acc.pos[c][side_index(winner)];
      acc.cash += kPairValue * won;
      escrow_ -= kPairValue * won;
      pairs_[c] -= won;
      acc.pos[c] = {0, 0};
    }
  }
}

std::vector<OrderId> Exchange::open_orders_of(TraderId trader) const {
  auto it = open_by_trader_.find(trader);
  if (it == open_by_trader_.end()) return {};
  return {it->second.begin(), it->second.end()};
}

const Order* Exchange::order(OrderId id) const {
  auto it = orders_.find(id);
  return it == orders_.end() ? nullptr : &it->second;
}

Qty Exchange::holdings(TraderId trader, ContractId c, Side s) const {
  auto it = accounts_.find(trader);
  if (it == accounts_.end() || it->second.pos.empty()) return 0;
  return it->second.pos[c][side_index(s)];
}

Qty Exchange::available_to_sell(TraderId trader, ContractId c, Side held) const {
  auto it = accounts_.find(trader);
  if (it == accounts_.end() || it->second.pos.empty()) return 0;
  return it->second.pos[c][side_index(held)] - it->second.committed[c][side_index(held)];
}

Cents Exchange::cash(TraderId trader) const {
  auto it = accounts_.find(trader);
  return it == accounts_.end() ? 0 : it->second.cash;
}

std::vector<TraderId> Exchange::traders() const {
  std::vector<TraderId> out;
  out.reserve(accounts_.size());
  for (const auto& [trader, acc] : accounts_) out.push_back(trader);
  return out;
}

bool Exchange::uncrossed() const {
  for (const Book& book : books_) {
    if (!book.uncrossed()) return false;
  }
  return true;
}

std::uint64_t Exchange::state_hash() const {
  std::uint64_t hash = kFnvOffset;
  hash = fnv1a(static_cast<std::uint64_t>(contracts()), hash);
  hash = fnv1a(next_order_id_, hash);
  hash = fnv1a(next_trade_id_, hash);
  hash = fnv1a(next_seq_, hash);
  hash = fnv1a(static_cast<std::uint64_t>(escrow_), hash);
  for (Qty p : pairs_) hash = fnv1a(static_cast<std::uint64_t>(p), hash);
  for (const Book& book : books_) hash = book.state_hash(hash);
  for (const auto& [trader, acc] : accounts_) {
    hash = fnv1a(static_cast<std::uint64_t>(trader), hash);
    hash = fnv1a(static_cast<std::uint64_t>(acc.cash), hash);
    for (const auto& pos : acc.pos) {
      hash = fnv1a(static_cast<std::uint64_t>(pos[0]), hash);
      hash = fnv1a(static_cast<std::uint64_t>(pos[1]), hash);
    }
  }
  return hash;
}

void Exchange::emit_submit(const Order& order) {
  OrderEvent ev;
  ev.seq = next_seq_++;
  ev.time = order.time;
  ev.kind = EventKind::Submit;
  ev.order = order;
  events_.push_back(std::move(ev));
}

void Exchange::emit_execute(const Trade& trade) {
  OrderEvent ev;
  ev.seq = next_seq_++;
  ev.time = trade.time;
  ev.kind = EventKind::Execute;
  ev.trade = trade;
  events_.push_back(std::move(ev));
}

void Exchange::emit_close(EventKind kind, OrderId id, double time) {
  OrderEvent ev;
  ev.seq = next_seq_++;
  ev.time = time;
  ev.kind = kind;
  ev.order_id = id;
  events_.push_back(std::move(ev));
}

}  // namespace pmlab::lob
