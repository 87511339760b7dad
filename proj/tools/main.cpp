#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"pmlab: prediction-market laboratory (simulation, analytics, belief bounds)"};
  app.require_subcommand(1);

  using namespace pmlab::cli;

  SimulateOptions sim;
  CLI::App* simulate = app.add_subcommand("simulate", "Run a market simulation to an event log");
  simulate->add_option("--config", sim.config_path, "flat key=value config file")->required();
  simulate->add_option("--seed", sim.seed, "RNG seed");
  simulate->add_option("--seed-count", sim.seed_count, "run this many consecutive seeds");
  simulate->add_option("--jobs", sim.jobs, "parallel workers for seed batches");
  simulate->add_option("--out", sim.out_path, "events JSONL output")->required();
  simulate->add_option("--truth", sim.truth_path, "ground-truth CSV output")->required();
  simulate->add_option("--snapshots", sim.snapshots_path, "top-5 snapshots CSV output");

  ReplayOptions rep;
  CLI::App* replay = app.add_subcommand("replay", "Re-execute an event log and verify it");
  replay->add_option("--in", rep.in_path, "events JSONL input")->required();
  replay->add_option("--snapshots", rep.snapshots_path, "top-5 snapshots CSV output");
  replay->add_option("--contracts", rep.contracts, "contract count when the log has no header");

  ReportOptions report_options;
  CLI::App* report = app.add_subcommand("report", "Descriptive statistics from an event log");
  report->add_option("--in", report_options.in_path, "events JSONL input")->required();
  report->add_option("--truth", report_options.truth_path, "ground-truth CSV (settlement)")
      ->required();
  report->add_option("--outdir", report_options.outdir, "output directory");
  report->add_option("--windows", report_options.window_days,
                     "days-before-end marks for the matrices")
      ->delimiter(',');
  report->add_option("--entry-buckets", report_options.entry_bucket_edges,
                     "entry-time bucket edges in [0,1]")
      ->delimiter(',');
  report->add_option("--seed", report_options.seed, "seed for the KS subsampling");
  report->add_option("--q", report_options.ks_replicates, "KS subsampling replicates");

  BoundsOptions bounds_options;
  CLI::App* bounds = app.add_subcommand("bounds", "Belief-distribution bounds from order decisions");
  bounds->add_option("--in", bounds_options.in_path, "events JSONL input")->required();
  bounds->add_option("--phi", bounds_options.phi_spec,
                     "execution-probability oracle: constant:c | logistic:a,b,c,d | model:path")
      ->required();
  bounds->add_option("--truth", bounds_options.truth_path,
                     "ground-truth CSV; restricts observations to informed traders");
  bounds->add_option("--outdir", bounds_options.outdir, "output directory");
  bounds->add_option("--windows", bounds_options.window_edges_days,
                     "window edges in days before the end, descending")
      ->delimiter(',');
  bounds->add_option("--exclude-days", bounds_options.exclude_days,
                     "drop the market's final days");
  bounds->add_flag("--pooled", bounds_options.pooled, "one pooled conditioning cell");
  bounds->add_flag("!--no-spread-key", bounds_options.spread_key,
                   "drop best bid/ask from the conditioning key");
  bounds->add_option("--min-obs", bounds_options.min_obs, "skip keys with fewer observations");
  bounds->add_flag("--bands", bounds_options.bands, "subsampled confidence bands");
  bounds->add_option("--q", bounds_options.replicates, "subsampling replicates");
  bounds->add_option("--block-days", bounds_options.block_days, "subsampling block size");
  bounds->add_option("--seed", bounds_options.seed, "seed for the subsampling");

  InferOptions infer_options;
  CLI::App* infer = app.add_subcommand("infer", "Execution-probability fit, KS test, subsampling CIs");
  infer->add_flag("--fit-exec-prob", infer_options.fit_exec_prob,
                  "fit the execution-probability regression from an event log");
  infer->add_flag("--ks", infer_options.ks, "K-sample KS test over bucket,day,value rows");
  infer->add_flag("--subsample", infer_options.subsample,
                  "subsampling CI for a registered estimator over day,value rows");
  infer->add_option("--in", infer_options.in_path, "input file")->required();
  infer->add_option("--out", infer_options.out_path, "output file (fit-exec-prob)");
  infer->add_option("--features", infer_options.features, "feature set: full | spread");
  infer->add_option("--b", infer_options.block_size, "block size in days");
  infer->add_option("--q", infer_options.replicates, "replicates");
  infer->add_option("--beta", infer_options.beta, "convergence-rate exponent");
  infer->add_option("--level", infer_options.level, "confidence level");
  infer->add_option("--estimator", infer_options.estimator, "registered estimator name");
  infer->add_option("--estimate-beta", infer_options.beta_blocks,
                    "block sizes for the rate regression")
      ->delimiter(',');
  infer->add_option("--beta-quantiles", infer_options.beta_quantiles,
                    "quantiles for the rate regression")
      ->delimiter(',');
  infer->add_option("--seed", infer_options.seed, "RNG seed");
  infer->add_option("--jobs", infer_options.jobs, "parallel workers for replicates");

  MarginOptions margin_options;
  CLI::App* margin = app.add_subcommand("margin", "Max-exposure payment for a linked position");
  margin->add_option("--positions", margin_options.positions_path,
                     "CSV of outcome,side,qty,price")
      ->required();
  margin->add_flag("--detail", margin_options.detail, "print per-outcome P&L");

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) return cmd_simulate(sim);
    if (replay->parsed()) return cmd_replay(rep);
    if (report->parsed()) return cmd_report(report_options);
    if (bounds->parsed()) return cmd_bounds(bounds_options);
    if (infer->parsed()) return cmd_infer(infer_options);
    if (margin->parsed()) return cmd_margin(margin_options);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
