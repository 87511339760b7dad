#pragma once

#include <memory>
#include <vector>

#include "pmlab/lob/types.hpp"
#include "pmlab/sim/config.hpp"
#include "pmlab/stats/kernel_regression.hpp"

namespace pmlab::sim {

using lob::LevelQuote;

/// Top-of-book state both agents and the estimator condition on. Ladders
/// are bid levels (descending price), five deep at most.
struct MarketLadder {
  std::vector<LevelQuote> bids_yes;
  std::vector<LevelQuote> bids_no;

  const std::vector<LevelQuote>& bids(Side s) const {
    return s == Side::Yes ? bids_yes : bids_no;
  }
};

/// A candidate limit order on the scale of its own side: price in (0,1),
/// ask = complement of the best opposite bid (1 when the opposite side is
/// empty), bid = best same-side bid (0 when empty).
struct ExecQuery {
  Side side = Side::Yes;
  double price = 0.0;
  double best_bid = 0.0;
  double best_ask = 1.0;
  double size = 0.0;
  const MarketLadder* ladder = nullptr;  // set when a fitted model needs depth
};

ExecQuery make_exec_query(const MarketLadder& ladder, Side side, Tick price, Qty size);

/// Probability a resting limit order fills before the horizon, conditional
/// on the visible book. Agents and the bound estimator must evaluate the
/// same oracle on the same pre-submission state.
class ExecProbOracle {
 public:
  virtual ~ExecProbOracle() = default;
  virtual double operator()(const ExecQuery& query) const = 0;
};

class ConstantExecProb final : public ExecProbOracle {
 public:
  explicit ConstantExecProb(double p) : p_(p) {}
  double operator()(const ExecQuery&) const override { return p_; }

 private:
  double p_;
};

class LogisticExecProb final : public ExecProbOracle {
 public:
  LogisticExecProb(double b0, double b_price, double b_spread, double b_size)
      : b0_(b0), b_price_(b_price), b_spread_(b_spread), b_size_(b_size) {}
  double operator()(const ExecQuery& q) const override;

 private:
  double b0_, b_price_, b_spread_, b_size_;
};

/// Feature layouts shared by training and prediction.
enum class FeatureSet { Spread, Full };

const char* to_string(FeatureSet f);
bool feature_set_from_string(const std::string& text, FeatureSet& out);
int feature_dims(FeatureSet f);

/// Regressor vector for one candidate order, on its own side's scale:
/// Spread = (best_bid, best_ask, price, size); Full prepends the five best
/// bid prices and quantities of both sides.
std::vector<double> build_features(FeatureSet f, const MarketLadder& ladder, Side side,
                                   Tick price, Qty size);

class FittedExecProb final : public ExecProbOracle {
 public:
  FittedExecProb(stats::NwModel model, FeatureSet features)
      : model_(std::move(model)), features_(features) {}
  double operator()(const ExecQuery& q) const override;

 private:
  stats::NwModel model_;
  FeatureSet features_;
};

std::unique_ptr<ExecProbOracle> make_oracle(const ExecProbSpec& spec);

}  // namespace pmlab::sim
