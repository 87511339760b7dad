#include "pmlab/margin/linked_margin.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pmlab::margin {

Cents outcome_pnl(const LinkedPosition& position, int winner) {
  if (winner < 0 || winner >= position.n_outcomes) {
    throw std::invalid_argument("outcome_pnl: unknown winner id");
  }
  Cents pnl = 0;
  for (const LinkedLeg& leg : position.legs) {
    const bool pays = (leg.side == Side::Yes) ? (leg.outcome == winner) : (leg.outcome != winner);
    if (pays) pnl += lob::kPairValue * leg.qty;
    pnl -= leg.cash_paid;
  }
  return pnl;
}

Cents max_exposure(const LinkedPosition& position) {
  Cents worst = 0;
  for (int w = 0; w < position.n_outcomes; ++w) {
    worst = std::max(worst, -outcome_pnl(position, w));
  }
  return worst;
}

LinkedPosition read_position_csv(const std::string& path,
                                 std::vector<std::string>* outcome_names) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  LinkedPosition position;
  std::vector<std::string> names;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::stringstream row(line);
    std::string outcome, side_text, qty_text, price_text;
    if (!std::getline(row, outcome, ',') || !std::getline(row, side_text, ',') ||
        !std::getline(row, qty_text, ',') || !std::getline(row, price_text)) {
      throw std::runtime_error("bad position row: " + line);
    }
    Side side;
    if (!lob::side_from_string(side_text, side)) {
      if (outcome == "outcome") continue;  // header line
      throw std::runtime_error("bad side in position row: " + line);
    }
    LinkedLeg leg;
    auto it = std::find(names.begin(), names.end(), outcome);
    if (it == names.end()) {
      names.push_back(outcome);
      leg.outcome = static_cast<int>(names.size()) - 1;
    } else {
      leg.outcome = static_cast<int>(it - names.begin());
    }
    leg.side = side;
    leg.qty = std::stoll(qty_text);
    leg.cash_paid = std::stoll(price_text) * leg.qty;
    position.legs.push_back(leg);
  }
  position.n_outcomes = static_cast<int>(names.size());
  if (outcome_names != nullptr) *outcome_names = std::move(names);
  return position;
}

}  // namespace pmlab::margin
