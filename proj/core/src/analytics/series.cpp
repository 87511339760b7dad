#include "pmlab/analytics/series.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "pmlab/lob/log_mirror.hpp"

namespace pmlab::analytics {

using lob::EventKind;
using lob::LogMirror;
using lob::Order;

namespace {

int day_of(double time, int days) {
  int day = static_cast<int>(time * days);
  if (day >= days) day = days - 1;
  if (day < 0) day = 0;
  return day;
}

}  // namespace

std::vector<DailyRow> daily_series(std::span<const OrderEvent> events, int n_contracts,
                                   int days) {
  if (days < 1) throw std::invalid_argument("daily_series: days must be >= 1");

  struct Accum {
    int n_trades = 0;
    lob::Qty volume = 0;
    double price_sum = 0.0;
    std::set<lob::TraderId> active;
  };
  std::vector<std::vector<Accum>> accum(static_cast<std::size_t>(days),
                                        std::vector<Accum>(static_cast<std::size_t>(n_contracts)));
  std::vector<DailyRow> rows(static_cast<std::size_t>(days) * n_contracts);

  LogMirror mirror(n_contracts);
  int cursor = 0;  // next day whose end-of-day book has not been captured

  auto close_days_until = [&](int day) {
    for (; cursor < day; ++cursor) {
      for (ContractId c = 0; c < n_contracts; ++c) {
        DailyRow& row = rows[static_cast<std::size_t>(cursor) * n_contracts + c];
        row.open_qty_yes = mirror.open_qty(c, Side::Yes);
        row.open_qty_no = mirror.open_qty(c, Side::No);
      }
    }
  };

  for (const OrderEvent& ev : events) {
    const int day = day_of(ev.time, days);
    close_days_until(day);
    switch (ev.kind) {
      case EventKind::Submit:
        accum[day][ev.order.contract].active.insert(ev.order.trader);
        break;
      case EventKind::Execute: {
        Accum& a = accum[day][ev.trade.contract];
        ++a.n_trades;
        a.volume += ev.trade.qty;
        a.price_sum += ev.trade.price_yes / 100.0;
        for (lob::OrderId id : {ev.trade.yes_order, ev.trade.no_order}) {
          const Order* order = mirror.order(id);
          if (order != nullptr) a.active.insert(order->trader);
        }
        break;
      }
      case EventKind::Cancel:
      case EventKind::Expire:
        break;
    }
    mirror.apply(ev);
  }
  close_days_until(days);

  for (int day = 0; day < days; ++day) {
    for (ContractId c = 0; c < n_contracts; ++c) {
      DailyRow& row = rows[static_cast<std::size_t>(day) * n_contracts + c];
      const Accum& a = accum[day][c];
      row.day = day;
      row.contract = c;
      row.n_trades = a.n_trades;
      row.volume = a.volume;
      row.active_traders = static_cast<int>(a.active.size());
      if (a.n_trades > 0) {
        row.avg_price = a.price_sum / a.n_trades;
        row.has_price = true;
      }
    }
  }
  return rows;
}

EntryBuckets profits_by_entry_time(const std::vector<ProfitRow>& profits,
                                   const std::vector<double>& edges) {
  if (edges.size() < 2) throw std::invalid_argument("profits_by_entry_time: need >= 2 edges");
  if (!std::is_sorted(edges.begin(), edges.end())) {
    throw std::invalid_argument("profits_by_entry_time: edges must be sorted");
  }
  EntryBuckets out;
  out.edges = edges;
  out.profits.assign(edges.size() - 1, {});
  for (const ProfitRow& row : profits) {
    if (row.entry_time < edges.front() || row.entry_time > edges.back()) continue;
    auto it = std::upper_bound(edges.begin(), edges.end(), row.entry_time);
    std::size_t bucket = static_cast<std::size_t>(it - edges.begin());
    bucket = bucket == 0 ? 0 : bucket - 1;
    if (bucket >= out.profits.size()) bucket = out.profits.size() - 1;
    out.profits[bucket].push_back(row.total / 100.0);
  }
  return out;
}

}  // namespace pmlab::analytics
