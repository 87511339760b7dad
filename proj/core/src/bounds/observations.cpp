#include "pmlab/bounds/observations.hpp"

#include <algorithm>

#include "pmlab/lob/log_mirror.hpp"

namespace pmlab::bounds {

using lob::EventKind;
using lob::LogMirror;

namespace {

int window_of(double time, const ExtractionConfig& config, bool* outside) {
  *outside = false;
  if (config.window_edges_days.empty()) return 0;
  const double days_before = (1.0 - time) * config.days;
  // Descending edges: window k is (edges[k+1], edges[k]], innermost edge last.
  const auto& edges = config.window_edges_days;
  if (days_before > edges.front()) {
    *outside = true;
    return -1;
  }
  for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
    if (days_before > edges[k + 1]) return static_cast<int>(k);
  }
  if (days_before > 0.0 && edges.size() == 1) return 0;
  *outside = true;
  return -1;
}

}  // namespace

ExtractionResult extract_observations(std::span<const OrderEvent> events, int n_contracts,
                                      const ExtractionConfig& config,
                                      const std::set<TraderId>* traders) {
  ExtractionResult result;
  LogMirror mirror(n_contracts);
  const double cutoff_time = 1.0 - config.exclusion_days / config.days;

  for (const OrderEvent& ev : events) {
    if (ev.kind == EventKind::Submit) {
      const lob::Order& order = ev.order;
      const bool wanted = traders == nullptr || traders->contains(order.trader);
      if (wanted) {
        if (order.time > cutoff_time) {
          ++result.excluded_by_cutoff;
        } else {
          bool outside = false;
          const int window = window_of(order.time, config, &outside);
          if (outside) {
            ++result.outside_windows;
          } else {
            OrderObservation obs;
            obs.trader = order.trader;
            obs.contract = order.contract;
            obs.side = order.side;
            obs.is_limit = order.type == lob::OrderType::Limit;
            obs.price = order.price / 100.0;
            obs.size = static_cast<double>(order.qty);
            obs.time = order.time;

            obs.ladder = {mirror.ladder(order.contract, Side::Yes, 5),
                          mirror.ladder(order.contract, Side::No, 5)};
            // Everything below conditions on the same five visible levels
            // the submitter saw.
            const auto& opp = obs.ladder.bids(lob::opposite(order.side));
            obs.ask = opp.empty() ? 1.0 : lob::tick_complement(opp.front().price) / 100.0;
            Qty done = 0;
            double cost = 0.0;
            for (const lob::LevelQuote& level : opp) {
              if (done >= order.qty) break;
              const Qty take = std::min(order.qty - done, level.qty);
              cost += take * (lob::tick_complement(level.price) / 100.0);
              done += take;
            }
            obs.sweep_qty = done;
            obs.sweep_cost = cost;

            obs.key.window = window;
            if (config.condition_on_spread) {
              obs.key.best_bid_yes = mirror.best_bid(order.contract, Side::Yes);
              const Tick no_bid = mirror.best_bid(order.contract, Side::No);
              obs.key.best_ask_yes = no_bid == 0 ? 100 : lob::tick_complement(no_bid);
            }
            result.observations.push_back(std::move(obs));
          }
        }
      }
    }
    mirror.apply(ev);
  }
  return result;
}

std::vector<OrderObservation> exclusion_filter(std::vector<OrderObservation> observations,
                                               double cutoff_fraction, int* dropped) {
  const double limit = 1.0 - cutoff_fraction;
  const auto end = std::remove_if(observations.begin(), observations.end(),
                                  [&](const OrderObservation& o) { return o.time > limit; });
  if (dropped != nullptr) *dropped = static_cast<int>(observations.end() - end);
  observations.erase(end, observations.end());
  return observations;
}

}  // namespace pmlab::bounds
