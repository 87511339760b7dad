#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pmlab::lob {

using OrderId = std::uint64_t;
using TradeId = std::uint64_t;
using TraderId = std::int32_t;
using ContractId = std::int32_t;
using Seq = std::uint64_t;
using Qty = std::int64_t;
using Cents = std::int64_t;

/// Price in integer cents. Contracts pay $1, so the tradable grid is [1, 99]:
/// 0 and 100 would be degenerate contracts.
using Tick = std::int32_t;

inline constexpr Tick kMinTick = 1;
inline constexpr Tick kMaxTick = 99;
inline constexpr Cents kPairValue = 100;  // one YES/NO pair escrows $1

constexpr bool tick_valid(Tick t) { return t >= kMinTick && t <= kMaxTick; }
constexpr Tick tick_complement(Tick t) { return static_cast<Tick>(100 - t); }

/// The two legs of a binary contract. A bid for NO at price p is the same
/// trade as an offer to supply YES at 100 - p.
enum class Side : std::uint8_t { Yes = 0, No = 1 };

constexpr Side opposite(Side s) { return s == Side::Yes ? Side::No : Side::Yes; }
constexpr int side_index(Side s) { return static_cast<int>(s); }

const char* to_string(Side s);
bool side_from_string(const std::string& text, Side& out);

enum class OrderType : std::uint8_t { Limit = 0, Market = 1 };

const char* to_string(OrderType t);
bool order_type_from_string(const std::string& text, OrderType& out);

/// Every resting order is a bid for one side. Selling held inventory is
/// represented as a bid for the complementary side with `against_inventory`
/// set; on execution the engine nets the holder's pair and releases escrow.
struct Order {
  OrderId id = 0;
  TraderId trader = 0;
  ContractId contract = 0;
  Side side = Side::Yes;
  OrderType type = OrderType::Limit;
  Tick price = 0;  // price paid per share of `side`
  Qty qty = 0;
  Qty remaining = 0;
  bool against_inventory = false;
  Seq submit_seq = 0;
  double time = 0.0;  // simulated time in [0, 1]

  bool operator==(const Order&) const = default;
};

/// Mint: two fresh bids cross and a new share pair is created (YES buyer
/// pays price_yes, NO buyer pays 100 - price_yes). Transfer: at least one
/// party sold out of inventory, so outstanding pairs do not increase; when
/// both parties sold, the pair count drops by qty.
enum class TradeKind : std::uint8_t { Mint = 0, Transfer = 1 };

const char* to_string(TradeKind k);
bool trade_kind_from_string(const std::string& text, TradeKind& out);

struct Trade {
  TradeId id = 0;
  ContractId contract = 0;
  OrderId yes_order = 0;
  OrderId no_order = 0;
  Tick price_yes = 0;
  Qty qty = 0;
  TradeKind kind = TradeKind::Mint;
  double time = 0.0;

  bool operator==(const Trade&) const = default;
};

struct LevelQuote {
  Tick price = 0;
  Qty qty = 0;

  bool operator==(const LevelQuote&) const = default;
};

/// Top-of-book view: the five best bid levels per side. Ask levels are
/// implied, ask_yes(k) == 100 - bids_no[k].price.
struct BookSnapshot {
  ContractId contract = 0;
  double time = 0.0;
  std::vector<LevelQuote> bids_yes;  // descending price, at most 5
  std::vector<LevelQuote> bids_no;

  bool operator==(const BookSnapshot&) const = default;
};

enum class EventKind : std::uint8_t { Submit = 0, Cancel = 1, Execute = 2, Expire = 3 };

const char* to_string(EventKind k);
bool event_kind_from_string(const std::string& text, EventKind& out);

/// Append-only market history record. Replaying the Submit/Cancel/Expire
/// stream through a fresh engine reproduces every Execute record and the
/// final book state exactly.
struct OrderEvent {
  Seq seq = 0;
  double time = 0.0;
  EventKind kind = EventKind::Submit;
  Order order;        // Submit
  OrderId order_id = 0;  // Cancel / Expire
  Trade trade;        // Execute

  bool operator==(const OrderEvent&) const = default;
};

enum class RejectReason : std::uint8_t {
  None = 0,
  InvalidTick,
  UnknownContract,
  NonPositiveQty,
  DuplicateOrderId,
  NoLiquidity,
  NotOpen,
  InsufficientInventory,
};

const char* to_string(RejectReason r);

struct SubmitResult {
  RejectReason reject = RejectReason::None;
  OrderId order_id = 0;
  std::vector<Trade> trades;
  Qty rested = 0;               // remainder resting on the book
  Qty cancelled_remainder = 0;  // market-order remainder, never rested

  bool ok() const { return reject == RejectReason::None; }
  Qty filled() const {
    Qty total = 0;
    for (const Trade& t : trades) total += t.qty;
    return total;
  }
};

/// FNV-1a, used for deterministic state digests and config hashes.
inline constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
inline constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

constexpr std::uint64_t fnv1a(std::uint64_t value, std::uint64_t hash) {
  for (int i = 0; i < 8; ++i) {
    hash ^= (value >> (8 * i)) & 0xffULL;
    hash *= kFnvPrime;
  }
  return hash;
}

std::uint64_t fnv1a_bytes(const void* data, std::size_t n, std::uint64_t hash);

}  // namespace pmlab::lob
