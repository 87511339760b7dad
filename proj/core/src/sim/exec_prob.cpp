#include "pmlab/sim/exec_prob.hpp"

#include <cmath>
#include <stdexcept>

namespace pmlab::sim {

ExecQuery make_exec_query(const MarketLadder& ladder, Side side, Tick price, Qty size) {
  ExecQuery q;
  q.side = side;
  q.price = price / 100.0;
  q.size = static_cast<double>(size);
  const auto& own = ladder.bids(side);
  const auto& opp = ladder.bids(lob::opposite(side));
  q.best_bid = own.empty() ? 0.0 : own.front().price / 100.0;
  q.best_ask = opp.empty() ? 1.0 : lob::tick_complement(opp.front().price) / 100.0;
  q.ladder = &ladder;
  return q;
}

double LogisticExecProb::operator()(const ExecQuery& q) const {
  const double z =
      b0_ + b_price_ * q.price + b_spread_ * (q.best_ask - q.price) + b_size_ * q.size;
  return 1.0 / (1.0 + std::exp(-z));
}

const char* to_string(FeatureSet f) { return f == FeatureSet::Spread ? "spread" : "full"; }

bool feature_set_from_string(const std::string& text, FeatureSet& out) {
  if (text == "spread") { out = FeatureSet::Spread; return true; }
  if (text == "full") { out = FeatureSet::Full; return true; }
  return false;
}

int feature_dims(FeatureSet f) { return f == FeatureSet::Spread ? 4 : 24; }

std::vector<double> build_features(FeatureSet f, const MarketLadder& ladder, Side side,
                                   Tick price, Qty size) {
  const auto& own = ladder.bids(side);
  const auto& opp = ladder.bids(lob::opposite(side));
  std::vector<double> x;
  x.reserve(static_cast<std::size_t>(feature_dims(f)));
  if (f == FeatureSet::Full) {
    for (int k = 0; k < 5; ++k) {
      x.push_back(k < static_cast<int>(own.size()) ? own[k].price / 100.0 : 0.0);
      x.push_back(k < static_cast<int>(own.size()) ? static_cast<double>(own[k].qty) : 0.0);
    }
    for (int k = 0; k < 5; ++k) {
      x.push_back(k < static_cast<int>(opp.size()) ? opp[k].price / 100.0 : 0.0);
      x.push_back(k < static_cast<int>(opp.size()) ? static_cast<double>(opp[k].qty) : 0.0);
    }
  }
  x.push_back(own.empty() ? 0.0 : own.front().price / 100.0);
  x.push_back(opp.empty() ? 1.0 : lob::tick_complement(opp.front().price) / 100.0);
  x.push_back(price / 100.0);
  x.push_back(static_cast<double>(size));
  return x;
}

double FittedExecProb::operator()(const ExecQuery& q) const {
  if (q.ladder == nullptr) {
    throw std::invalid_argument("FittedExecProb: query needs a ladder");
  }
  const std::vector<double> x = build_features(
      features_, *q.ladder, q.side, static_cast<Tick>(std::lround(q.price * 100.0)),
      static_cast<Qty>(std::llround(q.size)));
  return model_.predict(x);
}

std::unique_ptr<ExecProbOracle> make_oracle(const ExecProbSpec& spec) {
  switch (spec.kind) {
    case ExecProbSpec::Kind::Constant:
      return std::make_unique<ConstantExecProb>(spec.constant);
    case ExecProbSpec::Kind::Logistic:
      return std::make_unique<LogisticExecProb>(spec.b0, spec.b_price, spec.b_spread, spec.b_size);
    case ExecProbSpec::Kind::Model: {
      std::string feature_text;
      stats::NwModel model = stats::NwModel::load_csv(spec.model_path, &feature_text);
      FeatureSet features = FeatureSet::Full;
      if (!feature_text.empty() && !feature_set_from_string(feature_text, features)) {
        throw std::runtime_error("unknown feature set in model file: " + feature_text);
      }
      return std::make_unique<FittedExecProb>(std::move(model), features);
    }
  }
  throw std::logic_error("make_oracle: unreachable");
}

}  // namespace pmlab::sim
