#include "pmlab/sim/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pmlab::sim {

namespace {

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(std::stod(cell));
  return out;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::pair<std::string, std::string> split_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) return {spec, ""};
  return {spec.substr(0, colon), spec.substr(colon + 1)};
}

}  // namespace

double ScalarDist::sample(std::mt19937_64& rng) const {
  switch (kind) {
    case Kind::Point:
      return a;
    case Kind::Uniform:
      return std::uniform_real_distribution<double>(a, b)(rng);
    case Kind::Beta: {
      std::gamma_distribution<double> ga(a, 1.0);
      std::gamma_distribution<double> gb(b, 1.0);
      const double x = ga(rng);
      const double y = gb(rng);
      return x / (x + y);
    }
  }
  return a;
}

ScalarDist ScalarDist::parse(const std::string& spec) {
  const auto [name, args] = split_spec(spec);
  const std::vector<double> v = args.empty() ? std::vector<double>{} : parse_doubles(args);
  ScalarDist d;
  if (name == "point" && v.size() == 1) {
    d.kind = Kind::Point;
    d.a = v[0];
  } else if (name == "uniform" && v.size() == 2 && v[0] < v[1]) {
    d.kind = Kind::Uniform;
    d.a = v[0];
    d.b = v[1];
  } else if (name == "beta" && v.size() == 2 && v[0] > 0 && v[1] > 0) {
    d.kind = Kind::Beta;
    d.a = v[0];
    d.b = v[1];
  } else {
    throw std::invalid_argument("bad distribution spec: " + spec);
  }
  return d;
}

std::string ScalarDist::repr() const {
  std::ostringstream out;
  out.precision(17);
  switch (kind) {
    case Kind::Point: out << "point:" << a; break;
    case Kind::Uniform: out << "uniform:" << a << ',' << b; break;
    case Kind::Beta: out << "beta:" << a << ',' << b; break;
  }
  return out.str();
}

Qty SizeDist::sample(std::mt19937_64& rng) const {
  if (kind == Kind::Fixed) return a;
  return std::uniform_int_distribution<Qty>(a, b)(rng);
}

SizeDist SizeDist::parse(const std::string& spec) {
  const auto [name, args] = split_spec(spec);
  const std::vector<double> v = args.empty() ? std::vector<double>{} : parse_doubles(args);
  SizeDist d;
  if (name == "fixed" && v.size() == 1 && v[0] >= 1) {
    d.kind = Kind::Fixed;
    d.a = static_cast<Qty>(v[0]);
    d.b = d.a;
  } else if (name == "uniform_int" && v.size() == 2 && v[0] >= 1 && v[0] <= v[1]) {
    d.kind = Kind::UniformInt;
    d.a = static_cast<Qty>(v[0]);
    d.b = static_cast<Qty>(v[1]);
  } else {
    throw std::invalid_argument("bad size spec: " + spec);
  }
  return d;
}

std::string SizeDist::repr() const {
  std::ostringstream out;
  if (kind == Kind::Fixed) {
    out << "fixed:" << a;
  } else {
    out << "uniform_int:" << a << ',' << b;
  }
  return out.str();
}

ExecProbSpec ExecProbSpec::parse(const std::string& spec) {
  const auto [name, args] = split_spec(spec);
  ExecProbSpec e;
  if (name == "constant") {
    const std::vector<double> v = parse_doubles(args);
    if (v.size() != 1 || v[0] < 0.0 || v[0] > 1.0) {
      throw std::invalid_argument("bad exec_prob spec: " + spec);
    }
    e.kind = Kind::Constant;
    e.constant = v[0];
  } else if (name == "logistic") {
    const std::vector<double> v = parse_doubles(args);
    if (v.size() != 4) throw std::invalid_argument("bad exec_prob spec: " + spec);
    e.kind = Kind::Logistic;
    e.b0 = v[0];
    e.b_price = v[1];
    e.b_spread = v[2];
    e.b_size = v[3];
  } else if (name == "model") {
    if (args.empty()) throw std::invalid_argument("bad exec_prob spec: " + spec);
    e.kind = Kind::Model;
    e.model_path = args;
  } else {
    throw std::invalid_argument("bad exec_prob spec: " + spec);
  }
  return e;
}

std::string ExecProbSpec::repr() const {
  std::ostringstream out;
  out.precision(17);
  switch (kind) {
    case Kind::Constant: out << "constant:" << constant; break;
    case Kind::Logistic:
      out << "logistic:" << b0 << ',' << b_price << ',' << b_spread << ',' << b_size;
      break;
    case Kind::Model: out << "model:" << model_path; break;
  }
  return out.str();
}

Side NoiseSideRule::sample(std::mt19937_64& rng) const {
  if (!mixed) return fixed;
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < yes_prob ? Side::Yes : Side::No;
}

NoiseSideRule NoiseSideRule::parse(const std::string& spec) {
  NoiseSideRule r;
  const auto [name, args] = split_spec(spec);
  if (name == "yes") {
    r.fixed = Side::Yes;
  } else if (name == "no") {
    r.fixed = Side::No;
  } else if (name == "mix") {
    const std::vector<double> v = parse_doubles(args);
    if (v.size() != 1 || v[0] < 0.0 || v[0] > 1.0) {
      throw std::invalid_argument("bad noise_side spec: " + spec);
    }
    r.mixed = true;
    r.yes_prob = v[0];
  } else {
    throw std::invalid_argument("bad noise_side spec: " + spec);
  }
  return r;
}

std::string NoiseSideRule::repr() const {
  if (mixed) {
    std::ostringstream out;
    out.precision(17);
    out << "mix:" << yes_prob;
    return out.str();
  }
  return fixed == Side::Yes ? "yes" : "no";
}

void SimConfig::validate() const {
  if (contracts < 1) throw std::invalid_argument("contracts must be >= 1");
  if (static_cast<int>(true_state_prob.size()) != contracts) {
    throw std::invalid_argument("true_state_prob needs one value per contract");
  }
  for (double p : true_state_prob) {
    if (p <= 0.0 || p >= 1.0) throw std::invalid_argument("true_state_prob must be in (0,1)");
  }
  if (n_informed < 0 || n_noise < 0) throw std::invalid_argument("trader counts must be >= 0");
  if (hazard < 0.0) throw std::invalid_argument("hazard must be >= 0");
  if (!lob::tick_valid(noise_band_lo) || !lob::tick_valid(noise_band_hi) ||
      noise_band_lo > noise_band_hi) {
    throw std::invalid_argument("noise band must be valid ticks with lo <= hi");
  }
  if (noise_flip_fraction < 0.0 || noise_flip_fraction > 1.0) {
    throw std::invalid_argument("noise_flip_fraction must be in [0,1]");
  }
  if (days < 1) throw std::invalid_argument("days must be >= 1");
  if (convergence_time >= 0.0) {
    if (convergence_contract < 0 || convergence_contract >= contracts) {
      throw std::invalid_argument("convergence_contract out of range");
    }
    if (!lob::tick_valid(convergence_band_lo) || !lob::tick_valid(convergence_band_hi) ||
        convergence_band_lo > convergence_band_hi) {
      throw std::invalid_argument("convergence band must be valid ticks with lo <= hi");
    }
  }
}

SimConfig SimConfig::from_kv(const std::map<std::string, std::string>& kv) {
  SimConfig c;
  bool prob_set = false;
  for (const auto& [key, value] : kv) {
    if (key == "contracts") {
      c.contracts = std::stoi(value);
    } else if (key == "true_state_prob") {
      c.true_state_prob = parse_doubles(value);
      prob_set = true;
    } else if (key == "n_informed") {
      c.n_informed = std::stoi(value);
    } else if (key == "n_noise") {
      c.n_noise = std::stoi(value);
    } else if (key == "belief") {
      c.belief = ScalarDist::parse(value);
    } else if (key == "entry") {
      c.entry = ScalarDist::parse(value);
    } else if (key == "hazard") {
      c.hazard = std::stod(value);
    } else if (key == "order_size") {
      c.order_size = SizeDist::parse(value);
    } else if (key == "noise_side") {
      c.noise_side = NoiseSideRule::parse(value);
    } else if (key == "noise_band") {
      const std::vector<double> v = parse_doubles(value);
      if (v.size() != 2) throw std::invalid_argument("noise_band needs lo,hi");
      c.noise_band_lo = static_cast<Tick>(v[0]);
      c.noise_band_hi = static_cast<Tick>(v[1]);
    } else if (key == "noise_contract") {
      if (value == "fixed") {
        c.noise_contract_fixed = true;
      } else if (value == "random") {
        c.noise_contract_fixed = false;
      } else {
        throw std::invalid_argument("noise_contract must be fixed or random");
      }
    } else if (key == "noise_flip_fraction") {
      c.noise_flip_fraction = std::stod(value);
    } else if (key == "exec_prob") {
      c.exec_prob = ExecProbSpec::parse(value);
    } else if (key == "days") {
      c.days = std::stoi(value);
    } else if (key == "convergence_time") {
      c.convergence_time = value == "none" ? -1.0 : std::stod(value);
    } else if (key == "convergence_contract") {
      c.convergence_contract = std::stoi(value);
    } else if (key == "convergence_side") {
      if (!lob::side_from_string(value, c.convergence_side)) {
        throw std::invalid_argument("convergence_side must be YES or NO");
      }
    } else if (key == "convergence_band") {
      const std::vector<double> v = parse_doubles(value);
      if (v.size() != 2) throw std::invalid_argument("convergence_band needs lo,hi");
      c.convergence_band_lo = static_cast<Tick>(v[0]);
      c.convergence_band_hi = static_cast<Tick>(v[1]);
    } else {
      throw std::invalid_argument("unknown config key: " + key);
    }
  }
  if (prob_set && static_cast<int>(c.true_state_prob.size()) == 1 && c.contracts > 1) {
    c.true_state_prob.assign(static_cast<std::size_t>(c.contracts), c.true_state_prob[0]);
  }
  if (!prob_set) c.true_state_prob.assign(static_cast<std::size_t>(c.contracts), 0.5);
  c.validate();
  return c;
}

SimConfig SimConfig::load(const std::filesystem::path& path) {
  return from_kv(parse_kv_file(path));
}

std::string SimConfig::normalized_text() const {
  std::ostringstream out;
  out.precision(17);
  out << "belief=" << belief.repr() << '\n';
  out << "contracts=" << contracts << '\n';
  out << "convergence_band=" << convergence_band_lo << ',' << convergence_band_hi << '\n';
  out << "convergence_contract=" << convergence_contract << '\n';
  out << "convergence_side=" << lob::to_string(convergence_side) << '\n';
  out << "convergence_time=" << convergence_time << '\n';
  out << "days=" << days << '\n';
  out << "entry=" << entry.repr() << '\n';
  out << "exec_prob=" << exec_prob.repr() << '\n';
  out << "hazard=" << hazard << '\n';
  out << "n_informed=" << n_informed << '\n';
  out << "n_noise=" << n_noise << '\n';
  out << "noise_band=" << noise_band_lo << ',' << noise_band_hi << '\n';
  out << "noise_contract=" << (noise_contract_fixed ? "fixed" : "random") << '\n';
  out << "noise_flip_fraction=" << noise_flip_fraction << '\n';
  out << "noise_side=" << noise_side.repr() << '\n';
  out << "order_size=" << order_size.repr() << '\n';
  out << "true_state_prob=";
  for (std::size_t i = 0; i < true_state_prob.size(); ++i) {
    if (i) out << ',';
    out << true_state_prob[i];
  }
  out << '\n';
  return out.str();
}

std::string SimConfig::hash_hex(std::uint64_t seed) const {
  const std::string text = normalized_text();
  std::uint64_t h = lob::fnv1a_bytes(text.data(), text.size(), lob::kFnvOffset);
  h = lob::fnv1a(seed, h);
  std::ostringstream out;
  out << std::hex << h;
  return out.str();
}

std::map<std::string, std::string> parse_kv_text(const std::string& text) {
  std::map<std::string, std::string> out;
  std::stringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto comment = line.find('#');
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": empty key or value");
    }
    out[key] = value;
  }
  return out;
}

std::map<std::string, std::string> parse_kv_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_kv_text(buffer.str());
}

}  // namespace pmlab::sim
