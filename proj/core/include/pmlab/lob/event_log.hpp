#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pmlab/lob/exchange.hpp"
#include "pmlab/lob/types.hpp"

namespace pmlab::lob {

/// Thrown when an event stream cannot be a faithful record of a live run:
/// a sequence gap or duplicate, a submission the engine would reject, or a
/// regenerated event differing from the logged one.
class CorruptLogError : public std::runtime_error {
 public:
  explicit CorruptLogError(const std::string& what) : std::runtime_error(what) {}
};

/// First line of every event-log file. Orders follow, one JSON object per
/// line, prices in integer cents, times as fractions of the horizon.
struct LogMeta {
  std::string tool;
  std::string config_hash;
  std::uint64_t seed = 0;
  int contracts = 1;
  int days = 365;
};

std::string to_jsonl(const LogMeta& meta);
std::string to_jsonl(const OrderEvent& event);

void write_events_jsonl(const std::filesystem::path& path, const LogMeta& meta,
                        std::span<const OrderEvent> events);

struct LoadedLog {
  LogMeta meta;
  bool has_meta = false;
  std::vector<OrderEvent> events;
};

LoadedLog read_events_jsonl(const std::filesystem::path& path);

struct ReplayResult {
  Exchange exchange;
  std::vector<BookSnapshot> snapshots;  // one per event when requested
};

/// Re-executes the Submit/Cancel/Expire stream through a fresh engine and
/// verifies the regenerated event stream is identical to the input,
/// Execute records included. Snapshots are taken after each event for the
/// contract it touches.
ReplayResult replay(std::span<const OrderEvent> events, int n_contracts,
                    bool collect_snapshots = false);

void write_snapshots_csv(const std::filesystem::path& path, const std::string& header_comment,
                         std::span<const BookSnapshot> snapshots);

}  // namespace pmlab::lob
