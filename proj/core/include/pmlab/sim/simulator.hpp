#pragma once

#include <filesystem>
#include <random>
#include <vector>

#include "pmlab/lob/exchange.hpp"
#include "pmlab/sim/config.hpp"
#include "pmlab/sim/exec_prob.hpp"

namespace pmlab::sim {

using lob::TraderId;

/// Ground-truth record the simulator keeps about each agent. Invisible to
/// other agents; used by analytics and bound verification only.
struct TraderSpec {
  TraderId id = 0;
  bool informed = false;
  double belief = 0.0;  // probability that YES wins the assigned contract
  double entry_time = 0.0;
  ContractId contract = 0;
  bool flipper = false;  // noise variant that round-trips inventory
};

struct SimTruth {
  std::vector<TraderSpec> traders;
  std::vector<int> outcome_yes;  // realized state per contract
};

struct SimResult {
  std::vector<lob::OrderEvent> events;
  SimTruth truth;
};

/// What a myopic informed trader does at a wake-up.
struct ActionDecision {
  enum class Kind { None, Limit, Market };
  Kind kind = Kind::None;
  Side side = Side::Yes;
  Tick price = 0;       // limit price on the chosen side
  Qty market_qty = 0;   // quantity covered by the evaluated walk-up
  double expected_profit = 0.0;  // per share of `size`, at the chosen action
};

/// Myopic order choice for belief `q` that YES wins. The trader works the
/// side its belief favors; the best limit price maximizes phi(p) * (q - p)
/// over ticks below the ask and at most q, and is compared with the
/// per-share payoff of lifting the visible opposite ladder for `size`
/// shares. No action when nothing is strictly profitable; ties go to the
/// market order.
ActionDecision informed_decide(double q, const MarketLadder& ladder, Qty size,
                               const ExecProbOracle& phi);

/// Uniform tick draw on [lo, hi]; the whole noise price rule.
Tick noise_price(Tick lo, Tick hi, std::mt19937_64& rng);

std::vector<TraderSpec> draw_population(const SimConfig& config, std::mt19937_64& rng);

MarketLadder ladder_of(const lob::Book& book);

/// Runs one market from entry to settlement. Deterministic in (config, seed).
SimResult run_simulation(const SimConfig& config, std::uint64_t seed);

void write_truth_csv(const std::filesystem::path& path, const std::string& header_comment,
                     const SimTruth& truth);
SimTruth read_truth_csv(const std::filesystem::path& path);

}  // namespace pmlab::sim
