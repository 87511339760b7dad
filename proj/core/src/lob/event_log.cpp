#include "pmlab/lob/event_log.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace pmlab::lob {

using nlohmann::json;

namespace {

json order_to_json(const Order& o) {
  return json{{"id", o.id},
              {"trader", o.trader},
              {"contract", o.contract},
              {"side", to_string(o.side)},
              {"direction", "BUY"},
              {"type", to_string(o.type)},
              {"price", o.price},
              {"qty", o.qty},
              {"inventory", o.against_inventory},
              {"seq", o.submit_seq},
              {"t", o.time}};
}

Order order_from_json(const json& j) {
  Order o;
  o.id = j.at("id").get<OrderId>();
  o.trader = j.at("trader").get<TraderId>();
  o.contract = j.at("contract").get<ContractId>();
  if (!side_from_string(j.at("side").get<std::string>(), o.side)) {
    throw CorruptLogError("bad side in order record");
  }
  if (!order_type_from_string(j.at("type").get<std::string>(), o.type)) {
    throw CorruptLogError("bad order type in order record");
  }
  o.price = j.at("price").get<Tick>();
  o.qty = j.at("qty").get<Qty>();
  o.remaining = o.qty;
  o.against_inventory = j.at("inventory").get<bool>();
  o.submit_seq = j.at("seq").get<Seq>();
  o.time = j.at("t").get<double>();
  return o;
}

json trade_to_json(const Trade& t) {
  return json{{"id", t.id},
              {"contract", t.contract},
              {"yes_order", t.yes_order},
              {"no_order", t.no_order},
              {"price_yes", t.price_yes},
              {"qty", t.qty},
              {"kind", to_string(t.kind)},
              {"t", t.time}};
}

Trade trade_from_json(const json& j) {
  Trade t;
  t.id = j.at("id").get<TradeId>();
  t.contract = j.at("contract").get<ContractId>();
  t.yes_order = j.at("yes_order").get<OrderId>();
  t.no_order = j.at("no_order").get<OrderId>();
  t.price_yes = j.at("price_yes").get<Tick>();
  t.qty = j.at("qty").get<Qty>();
  if (!trade_kind_from_string(j.at("kind").get<std::string>(), t.kind)) {
    throw CorruptLogError("bad trade kind in trade record");
  }
  t.time = j.at("t").get<double>();
  return t;
}

}  // namespace

std::string to_jsonl(const LogMeta& meta) {
  json j{{"meta",
          json{{"format", "pmlab-events-v1"},
               {"tool", meta.tool},
               {"config_hash", meta.config_hash},
               {"seed", meta.seed},
               {"contracts", meta.contracts},
               {"days", meta.days}}}};
  return j.dump();
}

std::string to_jsonl(const OrderEvent& ev) {
  json j{{"seq", ev.seq}, {"t", ev.time}, {"kind", to_string(ev.kind)}};
  switch (ev.kind) {
    case EventKind::Submit:
      j["order"] = order_to_json(ev.order);
      break;
    case EventKind::Cancel:
    case EventKind::Expire:
      j["order_id"] = ev.order_id;
      break;
    case EventKind::Execute:
      j["trade"] = trade_to_json(ev.trade);
      break;
  }
  return j.dump();
}

void write_events_jsonl(const std::filesystem::path& path, const LogMeta& meta,
                        std::span<const OrderEvent> events) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << to_jsonl(meta) << '\n';
  for (const OrderEvent& ev : events) out << to_jsonl(ev) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

LoadedLog read_events_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  LoadedLog log;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) {
      throw CorruptLogError("unparseable JSON at line " + std::to_string(line_no));
    }
    if (j.contains("meta")) {
      const json& m = j["meta"];
      log.meta.tool = m.value("tool", "");
      log.meta.config_hash = m.value("config_hash", "");
      log.meta.seed = m.value("seed", std::uint64_t{0});
      log.meta.contracts = m.value("contracts", 1);
      log.meta.days = m.value("days", 365);
      log.has_meta = true;
      continue;
    }
    OrderEvent ev;
    ev.seq = j.at("seq").get<Seq>();
    ev.time = j.at("t").get<double>();
    if (!event_kind_from_string(j.at("kind").get<std::string>(), ev.kind)) {
      throw CorruptLogError("bad event kind at line " + std::to_string(line_no));
    }
    switch (ev.kind) {
      case EventKind::Submit:
        ev.order = order_from_json(j.at("order"));
        break;
      case EventKind::Cancel:
      case EventKind::Expire:
        ev.order_id = j.at("order_id").get<OrderId>();
        break;
      case EventKind::Execute:
        ev.trade = trade_from_json(j.at("trade"));
        break;
    }
    log.events.push_back(std::move(ev));
  }
  return log;
}

ReplayResult replay(std::span<const OrderEvent> events, int n_contracts,
                    bool collect_snapshots) {
  ReplayResult result{Exchange(n_contracts), {}};
  Exchange& ex = result.exchange;

  Seq expected = 1;
  for (const OrderEvent& ev : events) {
    if (ev.seq != expected) {
      throw CorruptLogError("sequence break at seq " + std::to_string(ev.seq) + ", expected " +
                            std::to_string(expected));
    }
    ++expected;
  }

  for (const OrderEvent& ev : events) {
    ContractId touched = 0;
    switch (ev.kind) {
      case EventKind::Submit: {
        const SubmitResult res = ex.apply_logged(ev.order);
        if (!res.ok()) {
          throw CorruptLogError("logged submission rejected at seq " + std::to_string(ev.seq) +
                                ": " + to_string(res.reject));
        }
        touched = ev.order.contract;
        break;
      }
      case EventKind::Cancel: {
        const Order* o = ex.order(ev.order_id);
        if (o == nullptr || ex.cancel(ev.order_id, ev.time) != RejectReason::None) {
          throw CorruptLogError("logged cancel failed at seq " + std::to_string(ev.seq));
        }
        touched = o->contract;
        break;
      }
      case EventKind::Expire: {
        const Order* o = ex.order(ev.order_id);
        if (o == nullptr || ex.expire_order(ev.order_id, ev.time) != RejectReason::None) {
          throw CorruptLogError("logged expire failed at seq " + std::to_string(ev.seq));
        }
        touched = o->contract;
        break;
      }
      case EventKind::Execute:
        // Regenerated by the Submit that caused it; verified below.
        touched = ev.trade.contract;
        break;
    }
    if (collect_snapshots) {
      result.snapshots.push_back(ex.snapshot_top5(touched, ev.time));
    }
  }

  const std::vector<OrderEvent>& regenerated = ex.events();
  if (regenerated.size() != events.size()) {
    throw CorruptLogError("replay produced " + std::to_string(regenerated.size()) +
                          " events, log has " + std::to_string(events.size()));
  }
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (!(regenerated[i] == events[i])) {
      throw CorruptLogError("replay diverged at seq " + std::to_string(events[i].seq));
    }
  }
  return result;
}

void write_snapshots_csv(const std::filesystem::path& path, const std::string& header_comment,
                         std::span<const BookSnapshot> snapshots) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  if (!header_comment.empty()) out << "# " << header_comment << '\n';
  out << "contract,t,level,side,price,qty\n";
  for (const BookSnapshot& snap : snapshots) {
    for (std::size_t k = 0; k < snap.bids_yes.size(); ++k) {
      out << snap.contract << ',' << snap.time << ',' << k << ",YES," << snap.bids_yes[k].price
          << ',' << snap.bids_yes[k].qty << '\n';
    }
    for (std::size_t k = 0; k < snap.bids_no.size(); ++k) {
      out << snap.contract << ',' << snap.time << ',' << k << ",NO," << snap.bids_no[k].price
          << ',' << snap.bids_no[k].qty << '\n';
    }
  }
}

}  // namespace pmlab::lob
