#pragma once

#include <string>
#include <vector>

#include "pmlab/lob/types.hpp"

namespace pmlab::margin {

using lob::Cents;
using lob::Qty;
using lob::Side;

/// One leg of a portfolio over a linked market: K mutually exclusive
/// outcomes, exactly one pays out.
struct LinkedLeg {
  int outcome = 0;   // index into the linked market's outcome list
  Side side = Side::Yes;
  Qty qty = 0;
  Cents cash_paid = 0;  // total executed price x qty for this leg
};

struct LinkedPosition {
  int n_outcomes = 0;
  std::vector<LinkedLeg> legs;
};

/// Net profit in cents when `winner` is realized: each leg pays
/// qty x 100 if it predicted correctly (YES on the winner, or NO on a
/// loser), minus the cash paid for the leg.
Cents outcome_pnl(const LinkedPosition& position, int winner);

/// Worst-case loss across outcomes, floored at zero. This is the payment
/// the platform collects when the position is opened.
Cents max_exposure(const LinkedPosition& position);

/// Reads rows of `outcome,side,qty,price_cents`, with one header line
/// allowed. Outcome ids are arbitrary strings mapped to indices in order
/// of first appearance.
LinkedPosition read_position_csv(const std::string& path, std::vector<std::string>* outcome_names);

}  // namespace pmlab::margin
