#pragma once

#include <optional>
#include <string>
#include <vector>

namespace pmlab::cli {

struct SimulateOptions {
  std::string config_path;
  std::uint64_t seed = 1;
  int seed_count = 1;
  int jobs = 1;
  std::string out_path;
  std::string truth_path;
  std::string snapshots_path;  // optional
};

struct ReplayOptions {
  std::string in_path;
  std::string snapshots_path;  // optional
  int contracts = 0;           // 0 = take from the log header
};

struct ReportOptions {
  std::string in_path;
  std::string truth_path;
  std::string outdir;
  std::vector<double> window_days{20.0, 10.0};
  std::vector<double> entry_bucket_edges;  // empty = quartiles of the horizon
  std::uint64_t seed = 1;                  // for the KS subsampling path
  int ks_replicates = 500;
};

struct BoundsOptions {
  std::string in_path;
  std::string phi_spec;        // constant:c | logistic:... | model:path
  std::string truth_path;      // optional, restricts to informed traders
  std::string outdir;
  std::vector<double> window_edges_days{40.0, 20.0, 10.0};
  double exclude_days = 10.0;
  bool pooled = false;
  bool spread_key = true;
  int min_obs = 1;
  bool bands = false;
  int replicates = 500;
  int block_days = 0;
  std::uint64_t seed = 1;
};

struct InferOptions {
  bool fit_exec_prob = false;
  bool ks = false;
  bool subsample = false;
  std::string in_path;
  std::string out_path;
  std::string features = "full";
  // ks / subsample
  int block_size = 0;  // 0 = quarter of the days
  int replicates = 500;
  double beta = 0.5;
  double level = 0.95;
  std::string estimator = "mean";
  std::vector<int> beta_blocks;       // non-empty = estimate beta first
  std::vector<double> beta_quantiles{0.75, 0.9};
  std::uint64_t seed = 1;
  int jobs = 1;
};

struct MarginOptions {
  std::string positions_path;
  bool detail = false;
};

int cmd_simulate(const SimulateOptions& options);
int cmd_replay(const ReplayOptions& options);
int cmd_report(const ReportOptions& options);
int cmd_bounds(const BoundsOptions& options);
int cmd_infer(const InferOptions& options);
int cmd_margin(const MarginOptions& options);

/// Default output directory: PMLAB_OUT_DIR when set, else the current
/// working directory.
std::string default_outdir();

}  // namespace pmlab::cli
