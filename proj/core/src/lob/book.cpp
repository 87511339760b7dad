#include "pmlab/lob/book.hpp"

#include <algorithm>

namespace pmlab::lob {

const char* to_string(Side s) { return s == Side::Yes ? "YES" : "NO"; }

bool side_from_string(const std::string& text, Side& out) {
  if (text == "YES") { out = Side::Yes; return true; }
  if (text == "NO") { out = Side::No; return true; }
  return false;
}

const char* to_string(OrderType t) { return t == OrderType::Limit ? "LIMIT" : "MARKET"; }

bool order_type_from_string(const std::string& text, OrderType& out) {
  if (text == "LIMIT") { out = OrderType::Limit; return true; }
  if (text == "MARKET") { out = OrderType::Market; return true; }
  return false;
}

const char* to_string(TradeKind k) { return k == TradeKind::Mint ? "MINT" : "TRANSFER"; }

bool trade_kind_from_string(const std::string& text, TradeKind& out) {
  if (text == "MINT") { out = TradeKind::Mint; return true; }
  if (text == "TRANSFER") { out = TradeKind::Transfer; return true; }
  return false;
}

const char* to_string(EventKind k) {
  switch (k) {
    case EventKind::Submit: return "SUBMIT";
    case EventKind::Cancel: return "CANCEL";
    case EventKind::Execute: return "EXECUTE";
    case EventKind::Expire: return "EXPIRE";
  }
  return "?";
}

bool event_kind_from_string(const std::string& text, EventKind& out) {
  if (text == "SUBMIT") { out = EventKind::Submit; return true; }
  if (text == "CANCEL") { out = EventKind::Cancel; return true; }
  if (text == "EXECUTE") { out = EventKind::Execute; return true; }
  if (text == "EXPIRE") { out = EventKind::Expire; return true; }
  return false;
}

const char* to_string(RejectReason r) {
  switch (r) {
    case RejectReason::None: return "none";
    case RejectReason::InvalidTick: return "invalid tick";
    case RejectReason::UnknownContract: return "unknown contract";
    case RejectReason::NonPositiveQty: return "non-positive quantity";
    case RejectReason::DuplicateOrderId: return "duplicate order id";
    case RejectReason::NoLiquidity: return "no liquidity";
    case RejectReason::NotOpen: return "order not open";
    case RejectReason::InsufficientInventory: return "insufficient inventory";
  }
  return "?";
}

std::uint64_t fnv1a_bytes(const void* data, std::size_t n, std::uint64_t hash) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    hash ^= p[i];
    hash *= kFnvPrime;
  }
  return hash;
}

std::vector<Book::Fill> Book::submit(Order& order, bool rest_remainder) {
  std::vector<Fill> fills;
  const Side opp = opposite(order.side);
  auto& opp_levels = levels_[side_index(opp)];

  while (order.remaining > 0) {
    const Tick bb = best_[side_index(opp)];
    if (bb == 0 || order.price + bb < 100) break;

    Level& level = opp_levels[bb];
    const OrderId resting_id = level.fifo.front();
    Order& resting = open_.at(resting_id);
    const Qty fill_qty = std::min(order.remaining, resting.remaining);

    fills.push_back({resting_id, opp, resting.price, fill_qty});
    resting.remaining -= fill_qty;
    order.remaining -= fill_qty;
    level.qty -= fill_qty;
    open_qty_[side_index(opp)] -= fill_qty;

    if (resting.remaining == 0) {
      level.fifo.pop_front();
      open_.erase(resting_id);
    }
    if (level.fifo.empty()) refresh_best(opp);
  }

  if (order.remaining > 0 && rest_remainder) rest(order);
  return fills;
}

void Book::rest(const Order& order) {
  Level& level = levels_[side_index(order.side)][order.price];
  level.fifo.push_back(order.id);
  level.qty += order.remaining;
  open_qty_[side_index(order.side)] += order.remaining;
  open_.emplace(order.id, order);
  if (order.price > best_[side_index(order.side)]) {
    best_[side_index(order.side)] = order.price;
  }
}

bool Book::cancel(OrderId id) {
  auto it = open_.find(id);
  if (it == open_.end()) return false;
  const Order& order = it->second;

  Level& level = levels_[side_index(order.side)][order.price];
  auto pos = std::find(level.fifo.begin(), level.fifo.end(), id);
  level.fifo.erase(pos);
  level.qty -= order.remaining;
  open_qty_[side_index(order.side)] -= order.remaining;

  const Side side = order.side;
  open_.erase(it);
  if (level.fifo.empty() && best_[side_index(side)] == order.price) refresh_best(side);
  return true;
}

void Book::refresh_best(Side s) {
  const auto& ls = levels_[side_index(s)];
  for (Tick t = best_[side_index(s)] == 0 ? kMaxTick : best_[side_index(s)]; t >= kMinTick; --t) {
    if (!ls[t].fifo.empty()) {
      best_[side_index(s)] = t;
      return;
    }
  }
  best_[side_index(s)] = 0;
}

Qty Book::level_qty(Side s, Tick t) const {
  if (!tick_valid(t)) return 0;
  return levels_[side_index(s)][t].qty;
}

const Order* Book::open_order(OrderId id) const {
  auto it = open_.find(id);
  return it == open_.end() ? nullptr : &it->second;
}

std::vector<LevelQuote> Book::ladder(Side s, int depth) const {
  std::vector<LevelQuote> out;
  const auto& ls = levels_[side_index(s)];
  for (Tick t = best_[side_index(s)]; t >= kMinTick && static_cast<int>(out.size()) < depth; --t) {
    if (!ls[t].fifo.empty()) out.push_back({t, ls[t].qty});
  }
  return out;
}

BookSnapshot Book::snapshot_top5(ContractId contract, double time) const {
  BookSnapshot snap;
  snap.contract = contract;
  snap.time = time;
  snap.bids_yes = ladder(Side::Yes, 5);
  snap.bids_no = ladder(Side::No, 5);
  return snap;
}

Qty Book::sweep(Side side, Qty qty, Cents* cost_cents) const {
  const Side opp = opposite(side);
  const auto& ls = levels_[side_index(opp)];
  Qty done = 0;
  Cents cost = 0;
  for (Tick t = best_[side_index(opp)]; t >= kMinTick && done < qty; --t) {
    if (ls[t].fifo.empty()) continue;
    const Qty take = std::min(qty - done, ls[t].qty);
    done += take;
    cost += static_cast<Cents>(take) * tick_complement(t);
  }
  if (cost_cents != nullptr) *cost_cents = cost;
  return done;
}

bool Book::uncrossed() const {
  const Tick by = best_[side_index(Side::Yes)];
  const Tick bn = best_[side_index(Side::No)];
  return by == 0 || bn == 0 || by + bn < 100;
}

std::uint64_t Book::state_hash(std::uint64_t hash) const {
  for (int s = 0; s < 2; ++s) {
    hash = fnv1a(static_cast<std::uint64_t>(best_[s]), hash);
    for (Tick t = kMinTick; t <= kMaxTick; ++t) {
      const Level& level = levels_[s][t];
      if (level.fifo.empty()) continue;
      hash = fnv1a(static_cast<std::uint64_t>(t), hash);
      hash = fnv1a(static_cast<std::uint64_t>(level.qty), hash);
      for (OrderId id : level.fifo) {
        const Order& o = open_.at(id);
        hash = fnv1a(id, hash);
        hash = fnv1a(static_cast<std::uint64_t>(o.trader), hash);
        hash = fnv1a(static_cast<std::uint64_t>(o.remaining), hash);
        hash = fnv1a(static_cast<std::uint64_t>(o.submit_seq), hash);
        hash = fnv1a(o.against_inventory ? 1 : 0, hash);
      }
    }
  }
  return hash;
}

}  // namespace pmlab::lob
