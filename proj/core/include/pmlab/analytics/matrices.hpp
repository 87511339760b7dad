#pragma once

#include <span>
#include <string>
#include <vector>

#include "pmlab/lob/types.hpp"

namespace pmlab::analytics {

using lob::ContractId;
using lob::OrderEvent;
using lob::Side;

/// Position labels: one per (contract, side) leg.
struct PositionStates {
  int n_contracts = 0;
  int size() const { return n_contracts * 2; }
  int index(ContractId c, Side s) const { return c * 2 + lob::side_index(s); }
  std::string label(int state) const;
};

/// Row-stochastic matrix averaged across traders with equal weights: each
/// visited row of each trader's count matrix is normalized, then rows are
/// averaged over the traders that visited them. Unvisited rows stay zero.
struct AveragedMatrix {
  PositionStates states;
  std::vector<std::vector<double>> rows;

  double diagonal_mass() const;    // share of total mass on the diagonal
  double max_column_share() const; // largest column's share of total mass
};

/// Transitions between the legs touched by consecutive executions of each
/// trader inside (window_end - lookback, window_end]. A trade touches
/// exactly one leg per party: the bought leg, or the sold leg for an
/// inventory sale. Traders with fewer than two executions in the window
/// contribute nothing.
AveragedMatrix transition_matrix(std::span<const OrderEvent> events, int n_contracts,
                                 double window_end, double lookback);

/// Current position (largest leg held, ties to the lowest state index)
/// against the legs targeted by open unexecuted orders at time `at`, one
/// count per open order. Traders holding nothing contribute nothing.
AveragedMatrix open_order_shift(std::span<const OrderEvent> events, int n_contracts, double at);

}  // namespace pmlab::analytics
