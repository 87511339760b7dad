#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pmlab/lob/types.hpp"

namespace pmlab::sim {

using lob::ContractId;
using lob::Qty;
using lob::Side;
using lob::Tick;

/// Scalar distribution named in config files, e.g. "beta:2,2",
/// "uniform:0.6,0.9", "point:0.7".
struct ScalarDist {
  enum class Kind { Point, Uniform, Beta };
  Kind kind = Kind::Point;
  double a = 0.5;
  double b = 0.0;

  double sample(std::mt19937_64& rng) const;
  static ScalarDist parse(const std::string& spec);
  std::string repr() const;
};

/// Order-size distribution: "fixed:3" or "uniform_int:1,5".
struct SizeDist {
  enum class Kind { Fixed, UniformInt };
  Kind kind = Kind::Fixed;
  Qty a = 1;
  Qty b = 1;

  Qty sample(std::mt19937_64& rng) const;
  static SizeDist parse(const std::string& spec);
  std::string repr() const;
};

/// Execution-probability oracle named in config files: "constant:0.5",
/// "logistic:b0,b_price,b_spread,b_size", or "model:<path>" for a fitted
/// kernel regression.
struct ExecProbSpec {
  enum class Kind { Constant, Logistic, Model };
  Kind kind = Kind::Constant;
  double constant = 0.5;
  double b0 = 0.0, b_price = 0.0, b_spread = 0.0, b_size = 0.0;
  std::string model_path;

  static ExecProbSpec parse(const std::string& spec);
  std::string repr() const;
};

/// How noise traders pick a side: a fixed side, or YES with probability p.
struct NoiseSideRule {
  bool mixed = false;
  Side fixed = Side::No;
  double yes_prob = 0.0;

  Side sample(std::mt19937_64& rng) const;
  static NoiseSideRule parse(const std::string& spec);
  std::string repr() const;
};

struct SimConfig {
  int contracts = 1;
  std::vector<double> true_state_prob{0.5};  // one per contract
  int n_informed = 0;
  int n_noise = 0;
  ScalarDist belief{ScalarDist::Kind::Beta, 2.0, 2.0};
  ScalarDist entry{ScalarDist::Kind::Uniform, 0.0, 1.0};
  double hazard = 0.0;  // homogeneous re-trade rate
  SizeDist order_size{SizeDist::Kind::Fixed, 1, 1};
  NoiseSideRule noise_side;
  Tick noise_band_lo = 76;
  Tick noise_band_hi = 99;
  bool noise_contract_fixed = true;  // else redrawn every wake-up
  double noise_flip_fraction = 0.0;  // share of noise traders that round-trip inventory
  ExecProbSpec exec_prob;
  int days = 365;
  // Forced-convergence variant: from convergence_time on, every action is a
  // resting bid on one target leg.
  double convergence_time = -1.0;
  ContractId convergence_contract = 0;
  Side convergence_side = Side::Yes;
  Tick convergence_band_lo = 1;
  Tick convergence_band_hi = 5;

  void validate() const;

  static SimConfig from_kv(const std::map<std::string, std::string>& kv);
  static SimConfig load(const std::filesystem::path& path);

  /// Canonical text used for config hashing and reproducibility headers.
  std::string normalized_text() const;
  std::string hash_hex(std::uint64_t seed) const;
};

/// Flat `key = value` file, '#' comments.
std::map<std::string, std::string> parse_kv_file(const std::filesystem::path& path);
std::map<std::string, std::string> parse_kv_text(const std::string& text);

}  // namespace pmlab::sim
