#include "pmlab/analytics/portfolio.hpp"

#include <stdexcept>

#include "pmlab/lob/log_mirror.hpp"

namespace pmlab::analytics {

using lob::EventKind;
using lob::LogMirror;
using lob::Order;
using lob::Tick;

bool TraderPortfolio::flat() const {
  for (const auto& contract : legs) {
    if (contract[0].qty != 0 || contract[1].qty != 0) return false;
  }
  return true;
}

std::map<TraderId, TraderPortfolio> build_portfolios(std::span<const OrderEvent> events,
                                                     int n_contracts) {
  std::map<TraderId, TraderPortfolio> portfolios;
  LogMirror mirror(n_contracts);

  auto portfolio_of = [&](TraderId trader) -> TraderPortfolio& {
    TraderPortfolio& p = portfolios[trader];
    if (p.legs.empty()) {
      p.trader = trader;
      p.legs.assign(static_cast<std::size_t>(n_contracts), {});
    }
    return p;
  };

  auto apply_party = [&](const lob::Trade& trade, const Order& order) {
    TraderPortfolio& p = portfolio_of(order.trader);
    ++p.executions;
    const Side side = order.side;
    const Tick price = side == Side::Yes ? trade.price_yes : lob::tick_complement(trade.price_yes);
    const Cents amount = static_cast<Cents>(price) * trade.qty;
    if (!order.against_inventory) {
      PortfolioLeg& leg = p.legs[trade.contract][lob::side_index(side)];
      leg.qty += trade.qty;
      leg.cost += amount;
      p.cash -= amount;
    } else {
      // Selling `held` at the complement of the order's price.
      const Side held = lob::opposite(side);
      const Tick sale_price = lob::tick_complement(price);
      const Cents proceeds = static_cast<Cents>(sale_price) * trade.qty;
      PortfolioLeg& leg = p.legs[trade.contract][lob::side_index(held)];
      if (leg.qty < trade.qty) {
        throw std::runtime_error("build_portfolios: inventory sale exceeds holdings");
      }
      const Cents released = leg.cost * trade.qty / leg.qty;
      leg.qty -= trade.qty;
      leg.cost -= released;
      p.realized += proceeds - released;
      p.cash += proceeds;
    }
  };

  for (const OrderEvent& ev : events) {
    if (ev.kind == EventKind::Submit) {
      TraderPortfolio& p = portfolio_of(ev.order.trader);
      if (p.entry_time < 0.0) p.entry_time = ev.time;
    } else if (ev.kind == EventKind::Execute) {
      const Order* yes_order = mirror.order(ev.trade.yes_order);
      const Order* no_order = mirror.order(ev.trade.no_order);
      if (yes_order == nullptr || no_order == nullptr) {
        throw std::runtime_error("build_portfolios: execute references unknown order");
      }
      apply_party(ev.trade, *yes_order);
      apply_party(ev.trade, *no_order);
    }
    mirror.apply(ev);
  }
  return portfolios;
}

std::vector<ProfitRow> profit_decomposition(const std::map<TraderId, TraderPortfolio>& portfolios,
                                            const std::vector<int>& outcome_yes) {
  std::vector<ProfitRow> rows;
  rows.reserve(portfolios.size());
  for (const auto& [trader, p] : portfolios) {
    if (!p.legs.empty() && p.legs.size() != outcome_yes.size()) {
      throw std::invalid_argument("profit_decomposition: one outcome per contract required");
    }
    ProfitRow row;
    row.trader = trader;
    row.trading = p.realized;
    row.entry_time = p.entry_time;
    for (std::size_t c = 0; c < p.legs.size(); ++c) {
      const Side winner = outcome_yes[c] != 0 ? Side::Yes : Side::No;
      for (Side s : {Side::Yes, Side::No}) {
        const PortfolioLeg& leg = p.legs[c][lob::side_index(s)];
        const Cents value = s == winner ? lob::kPairValue * leg.qty : 0;
        row.prediction += value - leg.cost;
      }
    }
    row.total = row.trading + row.prediction;
    row.day_trader = p.flat();
    rows.push_back(row);
  }
  return rows;
}

}  // namespace pmlab::analytics
