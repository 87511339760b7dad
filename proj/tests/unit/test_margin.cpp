#include <stdexcept>
#include <algorithm>
#include <random>

#include "doctest.h"
#include "pmlab/margin/linked_margin.hpp"

using namespace pmlab::margin;
using pmlab::lob::Cents;
using pmlab::lob::Qty;

namespace {

LinkedPosition three_candidate_position() {
  // A YES 6 @ 50, B NO 4 @ 75, C NO 5 @ 80.
  LinkedPosition p;
  p.n_outcomes = 3;
  p.legs = {{0, Side::Yes, 6, 300}, {1, Side::No, 4, 300}, {2, Side::No, 5, 400}};
  return p;
}

/// Independent oracle: enumerate winners and price each leg from scratch.
Cents enumeration_exposure(const LinkedPosition& p) {
  Cents worst = 0;
  for (int w = 0; w < p.n_outcomes; ++w) {
    Cents pnl = 0;
    for (const LinkedLeg& leg : p.legs) {
      Cents payout = 0;
      if (leg.side == Side::Yes && leg.outcome == w) payout = 100 * leg.qty;
      if (leg.side == Side::No && leg.outcome != w) payout = 100 * leg.qty;
      pnl += payout - leg.cash_paid;
    }
    worst = std::max(worst, -pnl);
  }
  return worst;
}

LinkedPosition random_position(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> outcome_count(2, 8);
  std::uniform_int_distribution<int> leg_count(1, 10);
  LinkedPosition p;
  p.n_outcomes = outcome_count(rng);
  std::uniform_int_distribution<int> outcome(0, p.n_outcomes - 1);
  std::uniform_int_distribution<Qty> qty(1, 12);
  std::uniform_int_distribution<Cents> price(1, 99);
  const int legs = leg_count(rng);
  for (int i = 0; i < legs; ++i) {
    LinkedLeg leg;
    leg.outcome = outcome(rng);
    leg.side = (rng() & 1) ? Side::Yes : Side::No;
    leg.qty = qty(rng);
    leg.cash_paid = price(rng) * leg.qty;
    p.legs.push_back(leg);
  }
  return p;
}

}  // namespace

TEST_CASE("three-candidate worked position") {
  const LinkedPosition p = three_candidate_position();
  CHECK(outcome_pnl(p, 2) == -600);  // C wins: only the B NO leg pays
  CHECK(outcome_pnl(p, 0) == 500);   // A wins: YES pays plus both NO legs
  CHECK(outcome_pnl(p, 1) == -500);  // B wins: only the C NO leg pays
  CHECK(max_exposure(p) == 600);
}

TEST_CASE("single-leg positions") {
  LinkedPosition p;
  p.n_outcomes = 3;
  p.legs = {{0, Side::Yes, 1, 50}};
  CHECK(outcome_pnl(p, 0) == 50);
  CHECK(outcome_pnl(p, 1) == -50);
  CHECK(max_exposure(p) == 50);

  LinkedPosition q;
  q.n_outcomes = 2;
  q.legs = {{0, Side::Yes, 6, 300}};
  CHECK(max_exposure(q) == 300);  // worst case loses the full cost
}

TEST_CASE("unknown winner id throws") {
  const LinkedPosition p = three_candidate_position();
  CHECK_THROWS_AS(outcome_pnl(p, 3), std::invalid_argument);
  CHECK_THROWS_AS(outcome_pnl(p, -1), std::invalid_argument);
}

TEST_CASE("exposure equals exhaustive enumeration on random linked portfolios") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const LinkedPosition p = random_position(rng);
    CHECK(max_exposure(p) == enumeration_exposure(p));
  }
}

TEST_CASE("exposure is nonnegative and bounded by total cash paid") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    const LinkedPosition p = random_position(rng);
    Cents total_paid = 0;
    for (const LinkedLeg& leg : p.legs) total_paid += leg.cash_paid;
    const Cents exposure = max_exposure(p);
    CHECK(exposure >= 0);
    CHECK(exposure <= total_paid);
  }
}

TEST_CASE("adding a leg moves exposure by no more than the leg's extremes") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    LinkedPosition p = random_position(rng);
    if (p.n_outcomes > 6) continue;
    const Cents before = max_exposure(p);
    LinkedLeg leg;
    leg.outcome = static_cast<int>(rng() % p.n_outcomes);
    leg.side = (rng() & 1) ? Side::Yes : Side::No;
    leg.qty = 1 + static_cast<Qty>(rng() % 5);
    leg.cash_paid = (1 + static_cast<Cents>(rng() % 99)) * leg.qty;
    p.legs.push_back(leg);
    const Cents after = max_exposure(p);
    const Cents best_case_payout = 100 * leg.qty - leg.cash_paid;
    // A new leg cannot reduce the worst case by more than its best payout,
    // nor worsen it by more than its own full cost.
    CHECK(before - after <= std::max<Cents>(best_case_payout, 0));
    CHECK(after - before <= leg.cash_paid);
  }
}

TEST_CASE("all-NO basket exposure via the same enumeration") {
  // One NO share on each of K outcomes: whoever wins, exactly one leg pays
  // nothing and the rest pay $1 each.
  for (int k = 2; k <= 6; ++k) {
    LinkedPosition p;
    p.n_outcomes = k;
    Cents total_paid = 0;
    for (int i = 0; i < k; ++i) {
      const Cents price = 30 + 5 * i;
      p.legs.push_back({i, Side::No, 1, price});
      total_paid += price;
    }
    CHECK(max_exposure(p) == enumeration_exposure(p));
    // Worst winner is the one whose NO leg was cheapest to give up.
    Cents worst = 0;
    for (int w = 0; w < k; ++w) {
      worst = std::max(worst, total_paid - 100 * (k - 1));
    }
    CHECK(max_exposure(p) == std::max<Cents>(worst, 0));
  }
}
