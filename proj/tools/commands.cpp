#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "pmlab/analytics/matrices.hpp"
#include "pmlab/analytics/portfolio.hpp"
#include "pmlab/analytics/series.hpp"
#include "pmlab/bounds/belief_bounds.hpp"
#include "pmlab/lob/event_log.hpp"
#include "pmlab/lob/log_mirror.hpp"
#include "pmlab/margin/linked_margin.hpp"
#include "pmlab/sim/day_trader_benchmark.hpp"
#include "pmlab/sim/simulator.hpp"
#include "pmlab/stats/ks_test.hpp"
#include "pmlab/stats/subsample.hpp"

namespace pmlab::cli {

namespace fs = std::filesystem;

namespace {

/// Output file that only appears once fully written: data goes to a
/// temporary, commit() renames it over the target.
class OutFile {
 public:
  explicit OutFile(fs::path target) : target_(std::move(target)), tmp_(target_) {
    tmp_ += ".tmp";
    stream_.open(tmp_);
    if (!stream_) throw std::runtime_error("cannot open " + tmp_.string() + " for writing");
    stream_.precision(17);
  }
  ~OutFile() {
    if (!committed_) {
      stream_.close();
      std::error_code ec;
      fs::remove(tmp_, ec);
    }
  }
  std::ofstream& stream() { return stream_; }
  void commit() {
    stream_.close();
    if (stream_.fail()) throw std::runtime_error("write failed: " + tmp_.string());
    fs::rename(tmp_, target_);
    committed_ = true;
  }

 private:
  fs::path target_;
  fs::path tmp_;
  std::ofstream stream_;
  bool committed_ = false;
};

std::string invocation_hash(const std::string& command,
                            const std::vector<std::string>& fields) {
  std::string text = command;
  for (const std::string& f : fields) {
    text += '\n';
    text += f;
  }
  std::uint64_t h = lob::fnv1a_bytes(text.data(), text.size(), lob::kFnvOffset);
  std::ostringstream out;
  out << std::hex << h;
  return out.str();
}

std::string header_line(const std::string& command, const std::string& config_hash,
                        std::uint64_t seed) {
  std::ostringstream out;
  out << "# pmlab " << command << " config_hash=" << config_hash << " seed=" << seed;
  return out.str();
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream row(line);
  std::string cell;
  while (std::getline(row, cell, ',')) cells.push_back(cell);
  return cells;
}

std::set<lob::TraderId> informed_set(const sim::SimTruth& truth) {
  std::set<lob::TraderId> out;
  for (const sim::TraderSpec& spec : truth.traders) {
    if (spec.informed) out.insert(spec.id);
  }
  return out;
}

struct Summary {
  double mean = 0.0, sd = 0.0, min = 0.0, max = 0.0;
};

Summary summarize(const std::vector<double>& values) {
  Summary s;
  if (values.empty()) return s;
  s.min = *std::min_element(values.begin(), values.end());
  s.max = *std::max_element(values.begin(), values.end());
  for (double v : values) s.mean += v;
  s.mean /= static_cast<double>(values.size());
  for (double v : values) s.sd += (v - s.mean) * (v - s.mean);
  s.sd = values.size() > 1 ? std::sqrt(s.sd / (static_cast<double>(values.size()) - 1.0)) : 0.0;
  return s;
}

void write_matrix_csv(OutFile& file, const analytics::AveragedMatrix& matrix) {
  auto& out = file.stream();
  out << "from";
  for (int c = 0; c < matrix.states.size(); ++c) out << ',' << matrix.states.label(c);
  out << '\n';
  for (int r = 0; r < matrix.states.size(); ++r) {
    out << matrix.states.label(r);
    for (int c = 0; c < matrix.states.size(); ++c) out << ',' << matrix.rows[r][c];
    out << '\n';
  }
}

}  // namespace

std::string default_outdir() {
  const char* env = std::getenv("PMLAB_OUT_DIR");
  return env != nullptr && *env != '\0' ? std::string(env) : std::string(".");
}

int cmd_simulate(const SimulateOptions& options) {
  const sim::SimConfig config = sim::SimConfig::load(options.config_path);

  auto out_name = [&](const fs::path& base, std::uint64_t seed) {
    if (options.seed_count <= 1) return base;
    fs::path named = base;
    named.replace_filename(base.stem().string() + "-" + std::to_string(seed) +
                           base.extension().string());
    return named;
  };

  auto run_one = [&](std::uint64_t seed) {
    const sim::SimResult result = sim::run_simulation(config, seed);
    const std::string hash = config.hash_hex(seed);

    lob::LogMeta meta;
    meta.tool = "simulate";
    meta.config_hash = hash;
    meta.seed = seed;
    meta.contracts = config.contracts;
    meta.days = config.days;
    lob::write_events_jsonl(out_name(options.out_path, seed), meta, result.events);
    sim::write_truth_csv(out_name(options.truth_path, seed),
                         header_line("simulate", hash, seed).substr(2), result.truth);
    if (!options.snapshots_path.empty()) {
      const lob::ReplayResult replayed =
          lob::replay(result.events, config.contracts, /*collect_snapshots=*/true);
      lob::write_snapshots_csv(out_name(options.snapshots_path, seed),
                               header_line("simulate", hash, seed).substr(2),
                               replayed.snapshots);
    }
    return result.events.size();
  };

  if (options.seed_count <= 1) {
    const std::size_t n = run_one(options.seed);
    std::cout << "simulate: seed " << options.seed << ", " << n << " events, config_hash "
              << config.hash_hex(options.seed) << '\n';
    return 0;
  }

  std::vector<std::uint64_t> seeds;
  for (int k = 0; k < options.seed_count; ++k) seeds.push_back(options.seed + k);
  const int jobs = std::max(1, options.jobs);
  std::size_t total = 0;
  for (std::size_t at = 0; at < seeds.size();) {
    std::vector<std::future<std::size_t>> batch;
    for (int j = 0; j < jobs && at < seeds.size(); ++j, ++at) {
      batch.push_back(std::async(std::launch::async, run_one, seeds[at]));
    }
    for (auto& f : batch) total += f.get();
  }
  std::cout << "simulate: " << options.seed_count << " seeds from " << options.seed << ", "
            << total << " events total\n";
  return 0;
}

int cmd_replay(const ReplayOptions& options) {
  const lob::LoadedLog log = lob::read_events_jsonl(options.in_path);
  const int contracts = options.contracts > 0
                            ? options.contracts
                            : (log.has_meta ? log.meta.contracts : 1);
  const lob::ReplayResult result =
      lob::replay(log.events, contracts, !options.snapshots_path.empty());
  if (!options.snapshots_path.empty()) {
    const std::string hash =
        invocation_hash("replay", {options.in_path, std::to_string(contracts)});
    lob::write_snapshots_csv(options.snapshots_path, header_line("replay", hash, 0).substr(2),
                             result.snapshots);
  }
  std::cout << "replay: " << log.events.size() << " events verified, state digest " << std::hex
            << result.exchange.state_hash() << std::dec << '\n';
  return 0;
}

int cmd_report(const ReportOptions& options) {
  const lob::LoadedLog log = lob::read_events_jsonl(options.in_path);
  const int contracts = log.has_meta ? log.meta.contracts : 1;
  const int days = log.has_meta ? log.meta.days : 365;
  const sim::SimTruth truth = sim::read_truth_csv(options.truth_path);
  if (static_cast<int>(truth.outcome_yes.size()) != contracts) {
    throw std::runtime_error("report: truth file settles a different number of contracts");
  }

  const std::string hash = invocation_hash(
      "report", {options.in_path, options.truth_path, std::to_string(options.seed)});
  const std::string header = header_line("report", hash, options.seed);
  const fs::path outdir = options.outdir.empty() ? default_outdir() : options.outdir;
  fs::create_directories(outdir);

  // Daily series.
  const std::vector<analytics::DailyRow> series =
      analytics::daily_series(log.events, contracts, days);
  {
    OutFile file(outdir / "series.csv");
    file.stream() << header << '\n'
                  << "day,contract,avg_price,volume,trades,active_traders,open_qty_yes,open_qty_no\n";
    for (const analytics::DailyRow& row : series) {
      file.stream() << row.day << ',' << row.contract << ',';
      if (row.has_price) file.stream() << row.avg_price;
      file.stream() << ',' << row.volume << ',' << row.n_trades << ',' << row.active_traders
                    << ',' << row.open_qty_yes << ',' << row.open_qty_no << '\n';
    }
    file.commit();
  }

  // Portfolios and profits.
  const auto portfolios = analytics::build_portfolios(log.events, contracts);
  const std::vector<analytics::ProfitRow> profits =
      analytics::profit_decomposition(portfolios, truth.outcome_yes);
  {
    OutFile file(outdir / "profits.csv");
    file.stream() << header << '\n'
                  << "trader,entry_time,trading_profit,prediction_profit,total,day_trader\n";
    for (const analytics::ProfitRow& row : profits) {
      file.stream() << row.trader << ',' << row.entry_time << ',' << row.trading / 100.0 << ','
                    << row.prediction / 100.0 << ',' << row.total / 100.0 << ','
                    << (row.day_trader ? 1 : 0) << '\n';
    }
    file.commit();
  }

  // Table-1-shaped summary per contract.
  {
    OutFile file(outdir / "summary.csv");
    file.stream() << header << '\n'
                  << "contract,stat,avg_daily_price,daily_volume,daily_trades,daily_traders,"
                     "terminal_holdings_yes\n";
    for (lob::ContractId c = 0; c < contracts; ++c) {
      std::vector<double> price, volume, trades, traders;
      for (const analytics::DailyRow& row : series) {
        if (row.contract != c) continue;
        if (row.has_price) price.push_back(row.avg_price);
        volume.push_back(static_cast<double>(row.volume));
        trades.push_back(static_cast<double>(row.n_trades));
        traders.push_back(static_cast<double>(row.active_traders));
      }
      std::vector<double> terminal;
      for (const auto& [trader, p] : portfolios) {
        terminal.push_back(p.legs.empty()
                               ? 0.0
                               : static_cast<double>(p.legs[c][lob::side_index(lob::Side::Yes)].qty));
      }
      const Summary sp = summarize(price), sv = summarize(volume), st = summarize(trades),
                    sa = summarize(traders), sh = summarize(terminal);
      const char* names[4] = {"mean", "std", "min", "max"};
      const double rows[4][5] = {{sp.mean, sv.mean, st.mean, sa.mean, sh.mean},
                                 {sp.sd, sv.sd, st.sd, sa.sd, sh.sd},
                                 {sp.min, sv.min, st.min, sa.min, sh.min},
                                 {sp.max, sv.max, st.max, sa.max, sh.max}};
      for (int r = 0; r < 4; ++r) {
        file.stream() << c << ',' << names[r];
        for (int k = 0; k < 5; ++k) file.stream() << ',' << rows[r][k];
        file.stream() << '\n';
      }
    }
    file.commit();
  }

  // Table-2-shaped profit summary.
  {
    std::vector<double> prediction, trading, trading_dt;
    for (const analytics::ProfitRow& row : profits) {
      prediction.push_back(row.prediction / 100.0);
      trading.push_back(row.trading / 100.0);
      if (row.day_trader) trading_dt.push_back(row.trading / 100.0);
    }
    OutFile file(outdir / "profit_summary.csv");
    file.stream() << header << '\n' << "row,mean,std,min,max\n";
    for (const auto& [name, values] :
         std::vector<std::pair<std::string, const std::vector<double>*>>{
             {"prediction_profits", &prediction},
             {"trading_profits", &trading},
             {"trading_profits_day_traders", &trading_dt}}) {
      const Summary s = summarize(*values);
      file.stream() << name << ',' << s.mean << ',' << s.sd << ',' << s.min << ',' << s.max
                    << '\n';
    }
    file.commit();
  }

  // Transition and open-order matrices at each window.
  for (double w : options.window_days) {
    const double end = 1.0 - w / days;
    {
      OutFile file(outdir / ("transitions_" + std::to_string(static_cast<int>(w)) + "d.csv"));
      file.stream() << header << '\n';
      write_matrix_csv(file, analytics::transition_matrix(log.events, contracts, end, end));
      file.commit();
    }
    {
      OutFile file(outdir / ("order_shift_" + std::to_string(static_cast<int>(w)) + "d.csv"));
      file.stream() << header << '\n';
      write_matrix_csv(file, analytics::open_order_shift(log.events, contracts, end));
      file.commit();
    }
  }

  // Profits by entry time, with the K-sample test.
  std::vector<double> edges = options.entry_bucket_edges;
  if (edges.empty()) edges = {0.0, 0.25, 0.5, 0.75, 1.0};
  const analytics::EntryBuckets buckets = analytics::profits_by_entry_time(profits, edges);
  {
    OutFile file(outdir / "entry_profits.csv");
    file.stream() << header << '\n' << "bucket,edge_lo,edge_hi,profit\n";
    for (std::size_t k = 0; k < buckets.profits.size(); ++k) {
      for (double v : buckets.profits[k]) {
        file.stream() << k << ',' << buckets.edges[k] << ',' << buckets.edges[k + 1] << ',' << v
                      << '\n';
      }
    }
    file.commit();
  }
  {
    // Day-blocked samples for the subsampled critical value.
    std::map<int, stats::KsDay> day_map;
    std::size_t n_nonempty = 0;
    for (std::size_t k = 0; k < buckets.profits.size(); ++k) {
      if (!buckets.profits[k].empty()) ++n_nonempty;
    }
    if (n_nonempty == buckets.profits.size() && buckets.profits.size() >= 2) {
      for (const analytics::ProfitRow& row : profits) {
        if (row.entry_time < edges.front() || row.entry_time > edges.back()) continue;
        auto it = std::upper_bound(edges.begin(), edges.end(), row.entry_time);
        std::size_t bucket = it == edges.begin() ? 0 : static_cast<std::size_t>(it - edges.begin()) - 1;
        if (bucket >= buckets.profits.size()) bucket = buckets.profits.size() - 1;
        int day = static_cast<int>(row.entry_time * days);
        if (day >= days) day = days - 1;
        day_map[day].observations.emplace_back(static_cast<int>(bucket), row.total / 100.0);
      }
      std::vector<stats::KsDay> ks_days;
      ks_days.reserve(day_map.size());
      for (auto& [day, block] : day_map) ks_days.push_back(std::move(block));
      std::mt19937_64 rng(options.seed);
      const int block = std::max(1, static_cast<int>(ks_days.size()) / 4);
      const stats::KsTestResult ks = stats::ks_k_sample_test(
          ks_days, static_cast<int>(buckets.profits.size()), block, options.ks_replicates, rng);
      std::cout << "entry-time KS: statistic " << ks.statistic << ", subsampled p-value "
                << ks.p_value << " (" << ks.replicates_used << " replicates)\n";
    } else {
      std::cout << "entry-time KS: skipped, some buckets are empty\n";
    }
  }

  // Day-trader benchmark for every day trader with at least one execution.
  {
    OutFile file(outdir / "benchmark.csv");
    file.stream() << header << '\n'
                  << "trader,actual_trading_profit,mimic_trading_profit,mimic_settlement_profit,"
                     "round_trips,buys_copied\n";
    for (const analytics::ProfitRow& row : profits) {
      if (!row.day_trader) continue;
      const auto it = portfolios.find(row.trader);
      if (it == portfolios.end() || it->second.executions == 0) continue;
      const sim::BenchmarkReport bench =
          sim::mimic_day_trader(log.events, contracts, row.trader, truth.outcome_yes);
      file.stream() << row.trader << ',' << row.trading / 100.0 << ','
                    << bench.trading_profit / 100.0 << ',' << bench.settlement_profit / 100.0
                    << ',' << bench.round_trips << ',' << bench.buys_copied << '\n';
    }
    file.commit();
  }

  std::cout << "report: wrote artifacts to " << outdir.string() << '\n';
  return 0;
}

int cmd_bounds(const BoundsOptions& options) {
  const lob::LoadedLog log = lob::read_events_jsonl(options.in_path);
  const int contracts = log.has_meta ? log.meta.contracts : 1;
  const int days = log.has_meta ? log.meta.days : 365;

  std::set<lob::TraderId> informed;
  const std::set<lob::TraderId>* filter = nullptr;
  if (!options.truth_path.empty()) {
    const sim::SimTruth truth = sim::read_truth_csv(options.truth_path);
    informed = informed_set(truth);
    filter = &informed;
  }

  const auto oracle = sim::make_oracle(sim::ExecProbSpec::parse(options.phi_spec));

  bounds::ExtractionConfig config;
  config.window_edges_days = options.pooled ? std::vector<double>{} : options.window_edges_days;
  config.exclusion_days = options.exclude_days;
  config.days = days;
  config.condition_on_spread = !options.pooled && options.spread_key;
  const bounds::ExtractionResult extracted =
      bounds::extract_observations(log.events, contracts, config, filter);

  std::map<bounds::HistoryKey, std::vector<bounds::OrderObservation>> by_key;
  for (const bounds::OrderObservation& obs : extracted.observations) {
    by_key[obs.key].push_back(obs);
  }

  const std::string hash = invocation_hash(
      "bounds", {options.in_path, options.phi_spec, options.truth_path,
                 std::to_string(options.seed), options.pooled ? "pooled" : "windows"});
  const std::string header = header_line("bounds", hash, options.seed);
  const fs::path outdir = options.outdir.empty() ? default_outdir() : options.outdir;
  fs::create_directories(outdir);

  bounds::BandConfig band_config;
  band_config.replicates = options.replicates;
  band_config.block_days = options.block_days;
  band_config.days = days;

  std::mt19937_64 rng(options.seed);
  OutFile curves_file(outdir / "bounds.csv");
  curves_file.stream() << header << '\n'
                       << "window,best_bid,best_ask,n_used,n_dropped,s,lower,upper,lower_lo,"
                          "lower_hi,upper_lo,upper_hi\n";
  OutFile means_file(outdir / "mean_beliefs.csv");
  means_file.stream() << header << '\n'
                      << "window,best_bid,best_ask,n_used,mean_lo,mean_lo_ci_lo,mean_lo_ci_hi,"
                         "mean_hi,mean_hi_ci_lo,mean_hi_ci_hi\n";

  int keys_written = 0;
  for (const auto& [key, observations] : by_key) {
    if (static_cast<int>(observations.size()) < options.min_obs) continue;
    const bounds::BeliefBoundEstimate estimate = bounds::estimate_bounds(
        key, observations, *oracle, options.bands ? &band_config : nullptr, rng);
    for (int i = 0; i < bounds::kGridSize; ++i) {
      curves_file.stream() << key.window << ',' << key.best_bid_yes << ',' << key.best_ask_yes
                           << ',' << estimate.curves.n_used << ','
                           << estimate.curves.n_dropped_phi << ',' << bounds::grid_point(i) << ','
                           << estimate.curves.lower[i] << ',' << estimate.curves.upper[i];
      if (estimate.bands.has_value()) {
        curves_file.stream() << ',' << estimate.bands->lower_lo[i] << ','
                             << estimate.bands->lower_hi[i] << ',' << estimate.bands->upper_lo[i]
                             << ',' << estimate.bands->upper_hi[i];
      } else {
        curves_file.stream() << ",,,,";
      }
      curves_file.stream() << '\n';
    }
    means_file.stream() << key.window << ',' << key.best_bid_yes << ',' << key.best_ask_yes << ','
                        << estimate.curves.n_used << ',' << estimate.means.mean_lo << ',';
    if (estimate.bands.has_value()) {
      means_file.stream() << estimate.bands->mean_lo_lo << ',' << estimate.bands->mean_lo_hi;
    } else {
      means_file.stream() << ',';
    }
    means_file.stream() << ',' << estimate.means.mean_hi << ',';
    if (estimate.bands.has_value()) {
      means_file.stream() << estimate.bands->mean_hi_lo << ',' << estimate.bands->mean_hi_hi;
    } else {
      means_file.stream() << ',';
    }
    means_file.stream() << '\n';
    ++keys_written;
  }
  curves_file.commit();
  means_file.commit();

  std::cout << "bounds: " << extracted.observations.size() << " observations ("
            << extracted.excluded_by_cutoff << " excluded by cutoff, " << extracted.outside_windows
            << " outside windows), " << keys_written << " keys written to " << outdir.string()
            << '\n';
  return 0;
}

namespace {

int fit_exec_prob(const InferOptions& options) {
  const lob::LoadedLog log = lob::read_events_jsonl(options.in_path);
  const int contracts = log.has_meta ? log.meta.contracts : 1;
  sim::FeatureSet features;
  if (!sim::feature_set_from_string(options.features, features)) {
    throw std::runtime_error("unknown feature set: " + options.features);
  }

  // Features at submission for every limit order; label = any fill before
  // the horizon.
  lob::LogMirror mirror(contracts);
  std::vector<double> x;
  std::vector<lob::OrderId> ids;
  std::map<lob::OrderId, std::size_t> row_of;
  std::vector<double> labels;
  for (const lob::OrderEvent& ev : log.events) {
    if (ev.kind == lob::EventKind::Submit && ev.order.type == lob::OrderType::Limit) {
      const sim::MarketLadder ladder{mirror.ladder(ev.order.contract, lob::Side::Yes, 5),
                                     mirror.ladder(ev.order.contract, lob::Side::No, 5)};
      const std::vector<double> row =
          sim::build_features(features, ladder, ev.order.side, ev.order.price, ev.order.qty);
      row_of[ev.order.id] = labels.size();
      ids.push_back(ev.order.id);
      x.insert(x.end(), row.begin(), row.end());
      labels.push_back(0.0);
    } else if (ev.kind == lob::EventKind::Execute) {
      for (lob::OrderId id : {ev.trade.yes_order, ev.trade.no_order}) {
        auto it = row_of.find(id);
        if (it != row_of.end()) labels[it->second] = 1.0;
      }
    }
    mirror.apply(ev);
  }
  if (labels.size() < 2) throw std::runtime_error("fit-exec-prob: need at least two limit orders");

  const stats::NwModel model =
      stats::NwModel::fit(std::move(x), std::move(labels), sim::feature_dims(features));
  model.save_csv(options.out_path, sim::to_string(features));
  std::cout << "fit-exec-prob: " << model.size() << " samples, " << model.dims()
            << " dims, model written to " << options.out_path << '\n';
  return 0;
}

int run_ks(const InferOptions& options) {
  std::ifstream in(options.in_path);
  if (!in) throw std::runtime_error("cannot open " + options.in_path);
  std::map<int, stats::KsDay> day_map;
  int n_samples = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("bucket", 0) == 0) continue;
    const std::vector<std::string> cells = split_csv_line(line);
    if (cells.size() < 3) throw std::runtime_error("ks: rows must be bucket,day,value");
    const int bucket = std::stoi(cells[0]);
    const int day = std::stoi(cells[1]);
    day_map[day].observations.emplace_back(bucket, std::stod(cells[2]));
    n_samples = std::max(n_samples, bucket + 1);
  }
  std::vector<stats::KsDay> days;
  days.reserve(day_map.size());
  for (auto& [day, block] : day_map) days.push_back(std::move(block));
  const int block = options.block_size > 0 ? options.block_size
                                           : std::max(1, static_cast<int>(days.size()) / 4);
  std::mt19937_64 rng(options.seed);
  const stats::KsTestResult result =
      stats::ks_k_sample_test(days, n_samples, block, options.replicates, rng, options.beta);
  std::cout << "ks: statistic " << result.statistic << ", p-value " << result.p_value << " ("
            << result.replicates_used << " replicates, block " << block << ")\n";
  return 0;
}

int run_subsample(const InferOptions& options) {
  std::ifstream in(options.in_path);
  if (!in) throw std::runtime_error("cannot open " + options.in_path);
  std::map<int, std::vector<double>> by_day;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("day", 0) == 0) continue;
    const std::vector<std::string> cells = split_csv_line(line);
    if (cells.size() < 2) throw std::runtime_error("subsample: rows must be day,value");
    by_day[std::stoi(cells[0])].push_back(std::stod(cells[1]));
  }
  if (by_day.empty()) throw std::runtime_error("subsample: no data");
  std::vector<std::vector<double>> days;
  days.reserve(by_day.size());
  for (auto& [day, values] : by_day) days.push_back(std::move(values));

  if (options.estimator != "mean") {
    throw std::runtime_error("subsample: unknown estimator " + options.estimator);
  }
  const stats::BlockEstimator estimator = [&](std::span<const int> idx) -> std::optional<double> {
    double sum = 0.0;
    std::size_t n = 0;
    for (int d : idx) {
      for (double v : days[d]) {
        sum += v;
        ++n;
      }
    }
    if (n == 0) return std::nullopt;
    return sum / static_cast<double>(n);
  };

  const int n_days = static_cast<int>(days.size());
  const int block = options.block_size > 0 ? options.block_size : std::max(1, n_days / 4);
  std::mt19937_64 rng(options.seed);

  double beta = options.beta;
  if (!options.beta_blocks.empty()) {
    const stats::BetaEstimate est =
        stats::estimate_beta(n_days, estimator, options.beta_blocks, options.beta_quantiles,
                             options.replicates, rng);
    beta = est.beta;
    std::cout << "subsample: estimated beta " << est.beta << " (R^2 " << est.r_squared << ")\n";
  }

  const stats::SubsampleResult result =
      stats::subsample(n_days, estimator, block, options.replicates, rng, false, options.jobs);
  const stats::ConfidenceInterval ci = stats::confidence_interval(result, options.level, beta);
  std::cout << "subsample: estimate " << result.full_estimate << ", " << options.level * 100
            << "% CI [" << ci.lo << ", " << ci.hi << "], block " << block << ", "
            << result.norms.size() << " replicates" << (ci.reliable ? "" : " (UNRELIABLE)")
            << '\n';
  return 0;
}

}  // namespace

int cmd_infer(const InferOptions& options) {
  const int modes = (options.fit_exec_prob ? 1 : 0) + (options.ks ? 1 : 0) +
                    (options.subsample ? 1 : 0);
  if (modes != 1) {
    throw std::runtime_error("infer: pick exactly one of --fit-exec-prob, --ks, --subsample");
  }
  if (options.fit_exec_prob) return fit_exec_prob(options);
  if (options.ks) return run_ks(options);
  return run_subsample(options);
}

int cmd_margin(const MarginOptions& options) {
  std::vector<std::string> names;
  const margin::LinkedPosition position = margin::read_position_csv(options.positions_path, &names);
  if (options.detail) {
    for (int w = 0; w < position.n_outcomes; ++w) {
      std::cout << "winner " << names[w] << ": pnl "
                << margin::outcome_pnl(position, w) / 100.0 << '\n';
    }
  }
  std::cout << "max exposure: " << margin::max_exposure(position) / 100.0 << '\n';
  return 0;
}

}  // namespace pmlab::cli
