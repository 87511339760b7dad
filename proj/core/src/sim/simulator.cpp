#include "pmlab/sim/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace pmlab::sim {

namespace {

struct WakeUp {
  double time;
  std::uint64_t tie;
  TraderId trader;
  bool operator>(const WakeUp& other) const {
    return std::tie(time, tie) > std::tie(other.time, other.tie);
  }
};

}  // namespace

MarketLadder ladder_of(const lob::Book& book) {
  return {book.ladder(Side::Yes, 5), book.ladder(Side::No, 5)};
}

Tick noise_price(Tick lo, Tick hi, std::mt19937_64& rng) {
  return std::uniform_int_distribution<Tick>(lo, hi)(rng);
}

std::vector<TraderSpec> draw_population(const SimConfig& config, std::mt19937_64& rng) {
  std::vector<TraderSpec> traders;
  traders.reserve(static_cast<std::size_t>(config.n_informed + config.n_noise));
  std::uniform_int_distribution<ContractId> contract_pick(0, config.contracts - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  TraderId next_id = 1;
  for (int i = 0; i < config.n_informed; ++i) {
    TraderSpec spec;
    spec.id = next_id++;
    spec.informed = true;
    spec.belief = config.belief.sample(rng);
    spec.entry_time = config.entry.sample(rng);
    spec.contract = contract_pick(rng);
    traders.push_back(spec);
  }
  for (int i = 0; i < config.n_noise; ++i) {
    TraderSpec spec;
    spec.id = next_id++;
    spec.informed = false;
    spec.entry_time = config.entry.sample(rng);
    spec.contract = contract_pick(rng);
    spec.flipper = unit(rng) < config.noise_flip_fraction;
    traders.push_back(spec);
  }
  return traders;
}

ActionDecision informed_decide(double q, const MarketLadder& ladder, Qty size,
                               const ExecProbOracle& phi) {
  ActionDecision decision;
  decision.side = q > 0.5 ? Side::Yes : Side::No;
  const double q_side = decision.side == Side::Yes ? q : 1.0 - q;
  const auto& opp = ladder.bids(lob::opposite(decision.side));

  // Taking liquidity: lift the visible opposite ladder until `size` fills
  // or depth runs out; payoff is averaged over the full demand.
  double market_payoff = 0.0;
  Qty market_qty = 0;
  if (!opp.empty()) {
    double cost = 0.0;  // dollars per unit share
    Qty done = 0;
    for (const LevelQuote& level : opp) {
      if (done >= size) break;
      const Qty take = std::min(size - done, level.qty);
      cost += take * (lob::tick_complement(level.price) / 100.0);
      done += take;
    }
    market_qty = done;
    market_payoff = (q_side * static_cast<double>(done) - cost) / static_cast<double>(size);
  }

  // Posting: best tick below the ask, never above the belief.
  const Tick ask_tick = opp.empty() ? 100 : lob::tick_complement(opp.front().price);
  const Tick p_max = std::min<Tick>(ask_tick - 1, static_cast<Tick>(std::floor(q_side * 100.0)));
  double limit_payoff = 0.0;
  Tick limit_price = 0;
  for (Tick p = lob::kMinTick; p <= std::min<Tick>(p_max, lob::kMaxTick); ++p) {
    const double prob = phi(make_exec_query(ladder, decision.side, p, size));
    const double payoff = prob * (q_side - p / 100.0);
    if (payoff > limit_payoff) {
      limit_payoff = payoff;
      limit_price = p;
    }
  }

  if (market_qty > 0 && market_payoff > 0.0 && market_payoff >= limit_payoff) {
    decision.kind = ActionDecision::Kind::Market;
    decision.market_qty = market_qty;
    decision.expected_profit = market_payoff;
  } else if (limit_price != 0 && limit_payoff > 0.0) {
    decision.kind = ActionDecision::Kind::Limit;
    decision.price = limit_price;
    decision.expected_profit = limit_payoff;
  }
  return decision;
}

namespace {

class SimRun {
 public:
  SimRun(const SimConfig& config, std::uint64_t seed)
      : config_(config), rng_(seed), exchange_(config.contracts) {
    config_.validate();
    oracle_ = make_oracle(config_.exec_prob);
  }

  SimResult run() {
    const std::vector<TraderSpec> traders = draw_population(config_, rng_);
    for (const TraderSpec& spec : traders) by_id_.emplace(spec.id, spec);

    std::vector<int> outcomes(static_cast<std::size_t>(config_.contracts));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int c = 0; c < config_.contracts; ++c) {
      outcomes[c] = unit(rng_) < config_.true_state_prob[c] ? 1 : 0;
    }

    std::priority_queue<WakeUp, std::vector<WakeUp>, std::greater<>> queue;
    std::uint64_t tie = 0;
    for (const TraderSpec& spec : traders) {
      if (spec.entry_time < 1.0) queue.push({spec.entry_time, tie++, spec.id});
    }

    std::exponential_distribution<double> wait(config_.hazard > 0.0 ? config_.hazard : 1.0);
    while (!queue.empty()) {
      const WakeUp wake = queue.top();
      queue.pop();
      act(wake.time, by_id_.at(wake.trader));
      if (config_.hazard > 0.0) {
        const double next = wake.time + wait(rng_);
        if (next < 1.0) queue.push({next, tie++, wake.trader});
      }
    }

    exchange_.expire_open_orders(1.0);
    exchange_.settle(outcomes, 1.0);

    SimResult result;
    result.events = exchange_.events();
    result.truth.traders = traders;
    result.truth.outcome_yes = std::move(outcomes);
    return result;
  }

 private:
  void act(double t, const TraderSpec& spec) {
    if (config_.convergence_time >= 0.0 && t >= config_.convergence_time) {
      if (spec.informed) cancel_all(spec.id, t);
      const Tick price =
          noise_price(config_.convergence_band_lo, config_.convergence_band_hi, rng_);
      exchange_.submit_limit(spec.id, config_.convergence_contract, config_.convergence_side,
                             price, config_.order_size.sample(rng_), t);
      return;
    }
    if (spec.informed) {
      act_informed(t, spec);
    } else {
      act_noise(t, spec);
    }
  }

  void act_informed(double t, const TraderSpec& spec) {
    cancel_all(spec.id, t);
    const MarketLadder ladder = ladder_of(exchange_.book(spec.contract));
    const Qty size = config_.order_size.sample(rng_);
    const ActionDecision d = informed_decide(spec.belief, ladder, size, *oracle_);
    switch (d.kind) {
      case ActionDecision::Kind::None:
        break;
      case ActionDecision::Kind::Limit:
        exchange_.submit_limit(spec.id, spec.contract, d.side, d.price, size, t);
        break;
      case ActionDecision::Kind::Market: {
        // One marketable order per price level, until the evaluated
        // quantity is filled.
        Qty remaining = d.market_qty;
        while (remaining > 0) {
          const lob::SubmitResult res =
              exchange_.submit_market(spec.id, spec.contract, d.side, remaining, t);
          if (!res.ok()) break;
          const Qty filled = res.filled();
          if (filled == 0) break;
          remaining -= filled;
        }
        break;
      }
    }
  }

  void act_noise(double t, const TraderSpec& spec) {
    const ContractId contract =
        config_.noise_contract_fixed
            ? spec.contract
            : std::uniform_int_distribution<ContractId>(0, config_.contracts - 1)(rng_);

    if (spec.flipper) {
      // Liquidate the largest uncommitted leg at a reservation price drawn
      // from the band; otherwise fall through to a plain buy.
      ContractId best_c = -1;
      Side best_side = Side::Yes;
      Qty best_qty = 0;
      for (ContractId c = 0; c < config_.contracts; ++c) {
        for (Side s : {Side::Yes, Side::No}) {
          const Qty avail = exchange_.available_to_sell(spec.id, c, s);
          if (avail > best_qty) {
            best_qty = avail;
            best_c = c;
            best_side = s;
          }
        }
      }
      if (best_qty > 0) {
        const Tick reserve = noise_price(config_.noise_band_lo, config_.noise_band_hi, rng_);
        exchange_.submit_limit(spec.id, best_c, lob::opposite(best_side),
                               lob::tick_complement(reserve), best_qty, t,
                               /*against_inventory=*/true);
        return;
      }
    }

    const Side side = config_.noise_side.sample(rng_);
    const Tick price = noise_price(config_.noise_band_lo, config_.noise_band_hi, rng_);
    exchange_.submit_limit(spec.id, contract, side, price, config_.order_size.sample(rng_), t);
  }

  void cancel_all(TraderId trader, double t) {
    for (lob::OrderId id : exchange_.open_orders_of(trader)) exchange_.cancel(id, t);
  }

  SimConfig config_;
  std::mt19937_64 rng_;
  lob::Exchange exchange_;
  std::unique_ptr<ExecProbOracle> oracle_;
  std::unordered_map<TraderId, TraderSpec> by_id_;
};

}  // namespace

SimResult run_simulation(const SimConfig& config, std::uint64_t seed) {
  return SimRun(config, seed).run();
}

void write_truth_csv(const std::filesystem::path& path, const std::string& header_comment,
                     const SimTruth& truth) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  if (!header_comment.empty()) out << "# " << header_comment << '\n';
  out.precision(17);
  out << "record,trader,kind,belief,entry_time,contract,flipper,outcome_yes\n";
  for (const TraderSpec& spec : truth.traders) {
    out << "TRADER," << spec.id << ',' << (spec.informed ? "INFORMED" : "NOISE") << ',';
    if (spec.informed) out << spec.belief;
    out << ',' << spec.entry_time << ',' << spec.contract << ',' << (spec.flipper ? 1 : 0)
        << ",\n";
  }
  for (std::size_t c = 0; c < truth.outcome_yes.size(); ++c) {
    out << "SETTLEMENT,,,,," << c << ",," << truth.outcome_yes[c] << '\n';
  }
}

SimTruth read_truth_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  SimTruth truth;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("record,", 0) == 0) continue;
    std::stringstream row(line);
    std::vector<std::string> cells;
    std::string cell;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    cells.resize(8);
    if (cells[0] == "TRADER") {
      TraderSpec spec;
      spec.id = std::stoi(cells[1]);
      spec.informed = cells[2] == "INFORMED";
      spec.belief = cells[3].empty() ? 0.0 : std::stod(cells[3]);
      spec.entry_time = std::stod(cells[4]);
      spec.contract = std::stoi(cells[5]);
      spec.flipper = cells[6] == "1";
      truth.traders.push_back(spec);
    } else if (cells[0] == "SETTLEMENT") {
      const std::size_t c = static_cast<std::size_t>(std::stoi(cells[5]));
      if (truth.outcome_yes.size() <= c) truth.outcome_yes.resize(c + 1, 0);
      truth.outcome_yes[c] = std::stoi(cells[7]);
    }
  }
  return truth;
}

}  // namespace pmlab::sim
