#include "pmlab/analytics/matrices.hpp"

#include <map>

#include "pmlab/lob/log_mirror.hpp"

namespace pmlab::analytics {

using lob::EventKind;
using lob::LogMirror;
using lob::Order;
using lob::Qty;
using lob::TraderId;

std::string PositionStates::label(int state) const {
  const ContractId c = state / 2;
  const Side s = state % 2 == 0 ? Side::Yes : Side::No;
  return "C" + std::to_string(c) + "-" + lob::to_string(s);
}

double AveragedMatrix::diagonal_mass() const {
  double diag = 0.0;
  double total = 0.0;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      total += rows[r][c];
      if (r == c) diag += rows[r][c];
    }
  }
  return total > 0.0 ? diag / total : 0.0;
}

double AveragedMatrix::max_column_share() const {
  if (rows.empty()) return 0.0;
  std::vector<double> col(rows.front().size(), 0.0);
  double total = 0.0;
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      col[c] += row[c];
      total += row[c];
    }
  }
  double best = 0.0;
  for (double v : col) best = std::max(best, v);
  return total > 0.0 ? best / total : 0.0;
}

namespace {

/// Equal-trader-weight averaging of per-trader count matrices: each
/// trader's visited rows are normalized to 1, then everything is averaged
/// over the contributing traders. A row of the average sums to the share
/// of traders that ever left that state.
AveragedMatrix average_counts(const PositionStates& states,
                              const std::map<TraderId, std::vector<std::vector<double>>>& counts) {
  AveragedMatrix out;
  out.states = states;
  const int n = states.size();
  out.rows.assign(n, std::vector<double>(n, 0.0));
  if (counts.empty()) return out;
  for (const auto& [trader, matrix] : counts) {
    for (int r = 0; r < n; ++r) {
      double row_sum = 0.0;
      for (int c = 0; c < n; ++c) row_sum += matrix[r][c];
      if (row_sum <= 0.0) continue;
      for (int c = 0; c < n; ++c) out.rows[r][c] += matrix[r][c] / row_sum;
    }
  }
  const double n_traders = static_cast<double>(counts.size());
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) out.rows[r][c] /= n_traders;
  }
  return out;
}

/// The leg a party's holdings moved on: the bought side, or the held side
/// for an inventory sale.
int touched_state(const PositionStates& states, const lob::Trade& trade, const Order& order) {
  const Side changed = order.against_inventory ? lob::opposite(order.side) : order.side;
  return states.index(trade.contract, changed);
}

}  // namespace

AveragedMatrix transition_matrix(std::span<const OrderEvent> events, int n_contracts,
                                 double window_end, double lookback) {
  const PositionStates states{n_contracts};
  LogMirror mirror(n_contracts);
  std::map<TraderId, std::vector<std::vector<double>>> counts;
  std::map<TraderId, int> last_state;

  auto matrix_of = [&](TraderId trader) -> std::vector<std::vector<double>>& {
    auto& m = counts[trader];
    if (m.empty()) m.assign(states.size(), std::vector<double>(states.size(), 0.0));
    return m;
  };

  const double window_start = window_end - lookback;
  for (const OrderEvent& ev : events) {
    if (ev.time > window_end) break;
    if (ev.kind == EventKind::Execute && ev.time > window_start) {
      for (lob::OrderId id : {ev.trade.yes_order, ev.trade.no_order}) {
        const Order* order = mirror.order(id);
        if (order == nullptr) continue;
        const int state = touched_state(states, ev.trade, *order);
        auto it = last_state.find(order->trader);
        if (it != last_state.end()) {
          matrix_of(order->trader)[it->second][state] += 1.0;
          it->second = state;
        } else {
          last_state.emplace(order->trader, state);
        }
      }
    }
    mirror.apply(ev);
  }
  return average_counts(states, counts);
}

AveragedMatrix open_order_shift(std::span<const OrderEvent> events, int n_contracts, double at) {
  const PositionStates states{n_contracts};
  LogMirror mirror(n_contracts);
  std::map<TraderId, std::vector<std::array<Qty, 2>>> holdings;

  auto holdings_of = [&](TraderId trader) -> std::vector<std::array<Qty, 2>>& {
    auto& h = holdings[trader];
    if (h.empty()) h.assign(static_cast<std::size_t>(n_contracts), {0, 0});
    return h;
  };

  for (const OrderEvent& ev : events) {
    if (ev.time > at) break;
    if (ev.kind == EventKind::Execute) {
      for (lob::OrderId id : {ev.trade.yes_order, ev.trade.no_order}) {
        const Order* order = mirror.order(id);
        if (order == nullptr) continue;
        const Side changed =
            order->against_inventory ? lob::opposite(order->side) : order->side;
        const Qty delta = order->against_inventory ? -ev.trade.qty : ev.trade.qty;
        holdings_of(order->trader)[ev.trade.contract][lob::side_index(changed)] += delta;
      }
    }
    mirror.apply(ev);
  }

  std::map<TraderId, std::vector<std::vector<double>>> counts;
  for (const auto& [trader, open_ids] : mirror.open_by_trader()) {
    if (open_ids.empty()) continue;
    auto held = holdings.find(trader);
    if (held == holdings.end()) continue;
    int current = -1;
    Qty best_qty = 0;
    for (ContractId c = 0; c < n_contracts; ++c) {
      for (Side s : {Side::Yes, Side::No}) {
        const Qty q = held->second[c][lob::side_index(s)];
        if (q > best_qty) {
          best_qty = q;
          current = states.index(c, s);
        }
      }
    }
    if (current < 0) continue;

    auto& matrix = counts[trader];
    matrix.assign(states.size(), std::vector<double>(states.size(), 0.0));
    for (lob::OrderId id : open_ids) {
      const Order* order = mirror.order(id);
      matrix[current][states.index(order->contract, order->side)] += 1.0;
    }
  }
  return average_counts(states, counts);
}

}  // namespace pmlab::analytics
