#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "pmlab/lob/event_log.hpp"
#include "pmlab/lob/exchange.hpp"

using namespace pmlab::lob;

namespace {

struct Op {
  bool is_cancel;
  Side side;
  Tick price;
  Qty qty;
  TraderId trader;
  OrderId cancel_target;
};

std::vector<Op> make_ops(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Tick> tick(1, 99);
  std::uniform_int_distribution<Qty> qty(1, 10);
  std::uniform_int_distribution<TraderId> trader(1, 64);
  std::vector<Op> ops;
  ops.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Op op;
    op.is_cancel = rng() % 4 == 0;
    op.side = (rng() & 1) ? Side::Yes : Side::No;
    op.price = tick(rng);
    op.qty = qty(rng);
    op.trader = trader(rng);
    op.cancel_target = 1 + rng() % (i + 1);
    ops.push_back(op);
  }
  return ops;
}

void run_ops(Exchange& ex, const std::vector<Op>& ops) {
  double t = 0.0;
  for (const Op& op : ops) {
    t += 1e-7;
    if (op.is_cancel) {
      ex.cancel(op.cancel_target, t);
    } else {
      ex.submit_limit(op.trader, 0, op.side, op.price, op.qty, t);
    }
  }
}

}  // namespace

static void BM_mixed_submit_cancel(benchmark::State& state) {
  const auto ops = make_ops(static_cast<std::size_t>(state.range(0)), 17);
  for (auto _ : state) {
    Exchange ex(1);
    run_ops(ex, ops);
    benchmark::DoNotOptimize(ex.state_hash());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_mixed_submit_cancel)->Arg(1000)->Arg(10000)->Arg(100000);

static void BM_snapshot_top5(benchmark::State& state) {
  Exchange ex(1);
  const auto ops = make_ops(20000, 3);
  run_ops(ex, ops);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ex.snapshot_top5(0, 0.5));
  }
}
BENCHMARK(BM_snapshot_top5);

static void BM_replay_log(benchmark::State& state) {
  Exchange ex(1);
  const auto ops = make_ops(static_cast<std::size_t>(state.range(0)), 29);
  run_ops(ex, ops);
  const std::vector<OrderEvent> events = ex.events();
  for (auto _ : state) {
    const ReplayResult result = replay(events, 1);
    benchmark::DoNotOptimize(result.exchange.state_hash());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(events.size()));
}
BENCHMARK(BM_replay_log)->Arg(10000)->Arg(50000);

BENCHMARK_MAIN();
