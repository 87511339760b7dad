#include "pmlab/lob/log_mirror.hpp"

#include <algorithm>
#include <stdexcept>

namespace pmlab::lob {

LogMirror::LogMirror(int n_contracts) {
  if (n_contracts <= 0) throw std::invalid_argument("LogMirror: need at least one contract");
  levels_.resize(static_cast<std::size_t>(n_contracts));
}

void LogMirror::apply(const OrderEvent& event) {
  switch (event.kind) {
    case EventKind::Submit: {
      Order order = event.order;
      order.remaining = order.qty;
      if (order.type == OrderType::Limit) {
        SideLevels& side = levels_[order.contract][side_index(order.side)];
        side.qty[order.price] += order.qty;
        side.total += order.qty;
        open_by_trader_[order.trader].insert(order.id);
      }
      orders_.emplace(order.id, order);
      break;
    }
    case EventKind::Execute: {
      const Trade& trade = event.trade;
      for (OrderId id : {trade.yes_order, trade.no_order}) {
        Order& order = orders_.at(id);
        order.remaining -= trade.qty;
        if (order.type == OrderType::Limit) {
          SideLevels& side = levels_[order.contract][side_index(order.side)];
          side.qty[order.price] -= trade.qty;
          side.total -= trade.qty;
          if (order.remaining == 0) {
            open_by_trader_[order.trader].erase(id);
          }
        }
      }
      break;
    }
    case EventKind::Cancel:
    case EventKind::Expire: {
      Order& order = orders_.at(event.order_id);
      remove_open(order, order.remaining);
      order.remaining = 0;
      break;
    }
  }
}

void LogMirror::remove_open(const Order& order, Qty remainder) {
  if (order.type != OrderType::Limit || remainder <= 0) return;
  SideLevels& side = levels_[order.contract][side_index(order.side)];
  side.qty[order.price] -= remainder;
  side.total -= remainder;
  open_by_trader_[order.trader].erase(order.id);
}

const Order* LogMirror::order(OrderId id) const {
  auto it = orders_.find(id);
  return it == orders_.end() ? nullptr : &it->second;
}

Qty LogMirror::remaining(OrderId id) const {
  auto it = orders_.find(id);
  return it == orders_.end() ? 0 : it->second.remaining;
}

bool LogMirror::is_open(OrderId id) const {
  auto it = orders_.find(id);
  if (it == orders_.end()) return false;
  return it->second.type == OrderType::Limit && it->second.remaining > 0;
}

Tick LogMirror::best_bid(ContractId c, Side s) const {
  const SideLevels& side = levels_[c][side_index(s)];
  for (Tick t = kMaxTick; t >= kMinTick; --t) {
    if (side.qty[t] > 0) return t;
  }
  return 0;
}

Qty LogMirror::level_qty(ContractId c, Side s, Tick t) const {
  if (!tick_valid(t)) return 0;
  return levels_[c][side_index(s)].qty[t];
}

Qty LogMirror::open_qty(ContractId c, Side s) const { return levels_[c][side_index(s)].total; }

std::vector<LevelQuote> LogMirror::ladder(ContractId c, Side s, int depth) const {
  std::vector<LevelQuote> out;
  const SideLevels& side = levels_[c][side_index(s)];
  for (Tick t = kMaxTick; t >= kMinTick && static_cast<int>(out.size()) < depth; --t) {
    if (side.qty[t] > 0) out.push_back({t, side.qty[t]});
  }
  return out;
}

bool LogMirror::uncrossed(ContractId c) const {
  const Tick by = best_bid(c, Side::Yes);
  const Tick bn = best_bid(c, Side::No);
  return by == 0 || bn == 0 || by + bn < 100;
}

Qty LogMirror::sweep_sell(ContractId c, Side held, Qty qty, Cents* proceeds_cents) const {
  const SideLevels& own = levels_[c][side_index(held)];
  Qty done = 0;
  Cents proceeds = 0;
  for (Tick t = kMaxTick; t >= kMinTick && done < qty; --t) {
    if (own.qty[t] <= 0) continue;
    const Qty take = std::min(qty - done, own.qty[t]);
    done += take;
    proceeds += static_cast<Cents>(take) * t;
  }
  if (proceeds_cents != nullptr) *proceeds_cents = proceeds;
  return done;
}

Qty LogMirror::sweep(ContractId c, Side side, Qty qty, Cents* cost_cents) const {
  const SideLevels& opp = levels_[c][side_index(opposite(side))];
  Qty done = 0;
  Cents cost = 0;
  for (Tick t = kMaxTick; t >= kMinTick && done < qty; --t) {
    if (opp.qty[t] <= 0) continue;
    const Qty take = std::min(qty - done, opp.qty[t]);
    done += take;
    cost += static_cast<Cents>(take) * tick_complement(t);
  }
  if (cost_cents != nullptr) *cost_cents = cost;
  return done;
}

}  // namespace pmlab::lob
