#include <stdexcept>

#include "doctest.h"
#include "pmlab/lob/exchange.hpp"

using namespace pmlab::lob;

TEST_CASE("inventory sale transfers the share and releases escrow to the seller") {
  Exchange ex(1);
  // Mint: trader 1 buys YES 40, trader 2 buys NO 60.
  REQUIRE(ex.submit_limit(2, 0, Side::No, 60, 10, 0.1).ok());
  REQUIRE(ex.submit_limit(1, 0, Side::Yes, 40, 10, 0.2).ok());
  REQUIRE(ex.holdings(1, 0, Side::Yes) == 10);

  // Trader 3 bids YES 45; trader 1 sells 4 into it via an inventory NO bid.
  REQUIRE(ex.submit_limit(3, 0, Side::Yes, 45, 4, 0.3).ok());
  const SubmitResult sale =
      ex.submit_limit(1, 0, Side::No, tick_complement(45), 4, 0.4, /*against_inventory=*/true);
  REQUIRE(sale.ok());
  REQUIRE(sale.trades.size() == 1);
  CHECK(sale.trades[0].kind == TradeKind::Transfer);
  CHECK(sale.trades[0].price_yes == 45);

  CHECK(ex.holdings(1, 0, Side::Yes) == 6);
  CHECK(ex.holdings(3, 0, Side::Yes) == 4);
  CHECK(ex.holdings(1, 0, Side::No) == 0);  // netted, never held
  // Seller paid 400 for 10, got 45 x 4 back.
  CHECK(ex.cash(1) == -400 + 45 * 4);
  // Outstanding pairs unchanged by the transfer.
  CHECK(ex.pairs_outstanding(0) == 10);
  CHECK(ex.escrow_total() == 1000);
}

TEST_CASE("selling more than held inventory is rejected") {
  Exchange ex(1);
  REQUIRE(ex.submit_limit(2, 0, Side::No, 60, 5, 0.1).ok());
  REQUIRE(ex.submit_limit(1, 0, Side::Yes, 40, 5, 0.2).ok());
  CHECK(ex.submit_limit(1, 0, Side::No, 50, 6, 0.3, true).reject ==
        RejectReason::InsufficientInventory);
  // Committing 3 then trying 3 more fails; available drops with open sells.
  REQUIRE(ex.submit_limit(1, 0, Side::No, 90, 3, 0.4, true).ok());
  CHECK(ex.available_to_sell(1, 0, Side::Yes) == 2);
  CHECK(ex.submit_limit(1, 0, Side::No, 90, 3, 0.5, true).reject ==
        RejectReason::InsufficientInventory);
  REQUIRE(ex.submit_limit(1, 0, Side::No, 90, 2, 0.6, true).ok());
}

TEST_CASE("two inventory sellers crossing burn the pair") {
  Exchange ex(1);
  // Two pairs outstanding: trader 1 holds YES x5, trader 2 holds NO x5.
  REQUIRE(ex.submit_limit(2, 0, Side::No, 60, 5, 0.1).ok());
  REQUIRE(ex.submit_limit(1, 0, Side::Yes, 40, 5, 0.2).ok());
  REQUIRE(ex.pairs_outstanding(0) == 5);

  // Trader 1 sells YES at 40 (inventory NO bid at 60); trader 2 sells NO at
  // 60 (inventory YES bid at 40) and crosses it.
  REQUIRE(ex.submit_limit(1, 0, Side::No, 60, 5, 0.3, true).ok());
  const SubmitResult res = ex.submit_limit(2, 0, Side::Yes, 40, 5, 0.4, true);
  REQUIRE(res.ok());
  REQUIRE(res.trades.size() == 1);
  CHECK(res.trades[0].kind == TradeKind::Transfer);

  CHECK(ex.pairs_outstanding(0) == 0);
  CHECK(ex.escrow_total() == 0);
  CHECK(ex.holdings(1, 0, Side::Yes) == 0);
  CHECK(ex.holdings(2, 0, Side::No) == 0);
  // Trader 1: paid 200 at the mint, sold YES for 40 x 5.
  CHECK(ex.cash(1) == -200 + 200);
  CHECK(ex.cash(2) == -300 + 300);
}

TEST_CASE("settlement pays the winning side and zeroes escrow") {
  Exchange ex(2);
  REQUIRE(ex.submit_limit(2, 0, Side::No, 60, 10, 0.1).ok());
  REQUIRE(ex.submit_limit(1, 0, Side::Yes, 40, 10, 0.2).ok());
  REQUIRE(ex.submit_limit(2, 1, Side::No, 25, 4, 0.3).ok());
  REQUIRE(ex.submit_limit(1, 1, Side::Yes, 75, 4, 0.4).ok());

  ex.expire_open_orders(1.0);
  ex.settle({1, 0}, 1.0);  // YES wins contract 0, NO wins contract 1

  CHECK(ex.escrow_total() == 0);
  CHECK(ex.pairs_outstanding(0) == 0);
  CHECK(ex.pairs_outstanding(1) == 0);
  // Trader 1: won 1000 on contract 0, lost the 300 paid on contract 1.
  CHECK(ex.cash(1) == -400 + 1000 - 300);
  CHECK(ex.cash(2) == -600 - 100 + 400);
  CHECK(ex.cash(1) + ex.cash(2) == 0);  // closed economy
}

TEST_CASE("settle requires an empty book") {
  Exchange ex(1);
  REQUIRE(ex.submit_limit(1, 0, Side::Yes, 40, 10, 0.2).ok());
  CHECK_THROWS_AS(ex.settle({1}, 1.0), std::logic_error);
  ex.expire_open_orders(1.0);
  CHECK_NOTHROW(ex.settle({1}, 1.0));
}

TEST_CASE("expire closes every open order and logs one event per order") {
  Exchange ex(1);
  REQUIRE(ex.submit_limit(1, 0, Side::Yes, 40, 5, 0.1).ok());
  REQUIRE(ex.submit_limit(2, 0, Side::No, 50, 5, 0.2).ok());
  REQUIRE(ex.submit_limit(3, 0, Side::Yes, 10, 5, 0.3).ok());
  ex.expire_open_orders(1.0);
  CHECK(ex.book(0).open_orders() == 0);
  int expire_events = 0;
  for (const OrderEvent& ev : ex.events()) {
    if (ev.kind == EventKind::Expire) ++expire_events;
  }
  CHECK(expire_events == 3);
  CHECK(ex.open_orders_of(1).empty());
}

TEST_CASE("duplicate order ids are rejected on replay application") {
  Exchange ex(1);
  Order o;
  o.id = 7;
  o.trader = 1;
  o.contract = 0;
  o.side = Side::Yes;
  o.price = 40;
  o.qty = 5;
  o.remaining = 5;
  o.time = 0.1;
  REQUIRE(ex.apply_logged(o).ok());
  CHECK(ex.apply_logged(o).reject == RejectReason::DuplicateOrderId);
}
