#include "pmlab/sim/day_trader_benchmark.hpp"

#include <map>
#include <stdexcept>

#include "pmlab/lob/log_mirror.hpp"

namespace pmlab::sim {

using lob::ContractId;
using lob::EventKind;
using lob::LogMirror;
using lob::Order;
using lob::Qty;
using lob::Side;
using lob::Tick;

namespace {

struct Lot {
  Qty qty = 0;
  Cents cost = 0;
};

/// Price paid per share by one party of a trade, on that party's side.
Tick party_price(const lob::Trade& trade, Side side) {
  return side == Side::Yes ? trade.price_yes : lob::tick_complement(trade.price_yes);
}

}  // namespace

BenchmarkReport mimic_day_trader(std::span<const OrderEvent> events, int n_contracts,
                                 TraderId subject, const std::vector<int>& outcome_yes) {
  if (static_cast<int>(outcome_yes.size()) != n_contracts) {
    throw std::invalid_argument("mimic_day_trader: one outcome per contract required");
  }

  // Classification pass: the subject must exist and end flat everywhere.
  {
    std::map<std::pair<ContractId, int>, Qty> net;
    bool seen = false;
    LogMirror mirror(n_contracts);
    for (const OrderEvent& ev : events) {
      if (ev.kind == EventKind::Submit && ev.order.trader == subject) seen = true;
      if (ev.kind == EventKind::Execute) {
        for (lob::OrderId id : {ev.trade.yes_order, ev.trade.no_order}) {
          const Order* order = mirror.order(id);
          if (order != nullptr && order->trader == subject) {
            const Side changed = order->against_inventory ? lob::opposite(order->side) : order->side;
            const Qty delta = order->against_inventory ? -ev.trade.qty : ev.trade.qty;
            net[{ev.trade.contract, lob::side_index(changed)}] += delta;
          }
        }
      }
      mirror.apply(ev);
    }
    if (!seen) throw std::invalid_argument("mimic_day_trader: unknown trader");
    for (const auto& [leg, qty] : net) {
      if (qty != 0) throw std::invalid_argument("mimic_day_trader: subject is not a day trader");
    }
  }

  BenchmarkReport report;
  LogMirror mirror(n_contracts);
  std::map<std::pair<ContractId, int>, Lot> lots;

  auto try_exit = [&]() {
    for (auto& [key, lot] : lots) {
      if (lot.qty == 0) continue;
      const ContractId contract = key.first;
      const Side side = key.second == 0 ? Side::Yes : Side::No;
      if (!mirror.uncrossed(contract)) continue;
      Cents proceeds = 0;
      const Qty fillable = mirror.sweep_sell(contract, side, lot.qty, &proceeds);
      if (fillable < lot.qty) continue;  // the full position must go
      if (proceeds <= lot.cost) continue;
      report.trading_profit += proceeds - lot.cost;
      ++report.round_trips;
      lot = Lot{};
    }
  };

  for (const OrderEvent& ev : events) {
    if (ev.kind == EventKind::Execute) {
      for (lob::OrderId id : {ev.trade.yes_order, ev.trade.no_order}) {
        const Order* order = mirror.order(id);
        if (order == nullptr || order->trader != subject) continue;
        if (order->against_inventory) continue;  // the subject's own exits are not copied
        const Side side = order->side;
        Lot& lot = lots[{ev.trade.contract, lob::side_index(side)}];
        lot.qty += ev.trade.qty;
        lot.cost += static_cast<Cents>(party_price(ev.trade, side)) * ev.trade.qty;
        ++report.buys_copied;
      }
    }
    mirror.apply(ev);
    try_exit();
  }

  for (const auto& [key, lot] : lots) {
    if (lot.qty == 0) continue;
    const Side side = key.second == 0 ? Side::Yes : Side::No;
    const bool won = (outcome_yes[key.first] != 0) == (side == Side::Yes);
    const Cents value = won ? lob::kPairValue * lot.qty : 0;
    report.settlement_profit += value - lot.cost;
  }
  return report;
}

}  // namespace pmlab::sim
