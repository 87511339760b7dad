#include "pmlab/stats/kernel_regression.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace pmlab::stats {

namespace {
constexpr double kBandwidthFloor = 1e-9;
}

NwModel NwModel::fit(std::vector<double> x, std::vector<double> y, int dims) {
  if (dims <= 0) throw std::invalid_argument("NwModel: dims must be positive");
  if (y.empty() || x.size() != y.size() * static_cast<std::size_t>(dims)) {
    throw std::invalid_argument("NwModel: x must be n x dims with n >= 1");
  }
  NwModel model;
  model.dims_ = dims;
  const std::size_t n = y.size();

  model.bandwidth_.assign(static_cast<std::size_t>(dims), kBandwidthFloor);
  const double nd = static_cast<double>(n);
  const double exponent = 1.0 / (dims + 4.0);
  const double constant = std::pow(4.0 / (dims + 2.0), exponent) * std::pow(nd, -exponent);
  for (int m = 0; m < dims; ++m) {
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += x[i * dims + m];
    mean /= nd;
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = x[i * dims + m] - mean;
      ss += d * d;
    }
    const double sigma = n > 1 ? std::sqrt(ss / (nd - 1.0)) : 0.0;
    model.bandwidth_[m] = std::max(sigma * constant, kBandwidthFloor);
  }

  model.x_ = std::move(x);
  model.y_ = std::move(y);
  return model;
}

NwModel NwModel::fit_with_bandwidths(std::vector<double> x, std::vector<double> y, int dims,
                                     std::vector<double> bandwidths) {
  if (static_cast<int>(bandwidths.size()) != dims) {
    throw std::invalid_argument("NwModel: one bandwidth per dimension required");
  }
  for (double h : bandwidths) {
    if (!(h > 0.0)) throw std::invalid_argument("NwModel: bandwidths must be positive");
  }
  NwModel model = fit(std::move(x), std::move(y), dims);
  model.bandwidth_ = std::move(bandwidths);
  return model;
}

double NwModel::predict(std::span<const double> query) const {
  if (static_cast<int>(query.size()) != dims_ || y_.empty()) {
    throw std::invalid_argument("NwModel::predict: wrong query size or empty model");
  }
  last_degenerate_ = false;
  const std::size_t n = y_.size();

  // Log-kernel accumulation with a running max keeps the weight ratio well
  // defined even when every raw kernel value underflows.
  std::vector<double> log_w(n);
  double max_log = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    const double* row = &x_[i * dims_];
    for (int m = 0; m < dims_; ++m) {
      const double z = (row[m] - query[m]) / bandwidth_[m];
      acc -= 0.5 * z * z;
    }
    log_w[i] = acc;
    if (acc > max_log) max_log = acc;
  }

  // Below roughly -708 even the largest raw kernel weight underflows to
  // zero in double precision: every weight is zero mass.
  if (!std::isfinite(max_log) || max_log < -708.0) {
    // Nearest sample by scaled distance, with each dimension's
    // contribution capped so one blown-up coordinate cannot swamp the rest.
    last_degenerate_ = true;
    std::size_t best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      double dist = 0.0;
      const double* row = &x_[i * dims_];
      for (int m = 0; m < dims_; ++m) {
        const double z = (row[m] - query[m]) / std::max(bandwidth_[m], kBandwidthFloor);
        dist += std::min(z * z, 1e12);
      }
      if (dist < best_dist) {
        best_dist = dist;
        best = i;
      }
    }
    return y_[best];
  }

  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = std::exp(log_w[i] - max_log);
    num += w * y_[i];
    den += w;
  }
  return num / den;
}

void NwModel::save_csv(const std::filesystem::path& path, const std::string& feature_set) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << "# nw-model dims=" << dims_ << " n=" << y_.size() << " features=" << feature_set << '\n';
  out.precision(17);
  out << "bandwidth";
  for (double h : bandwidth_) out << ',' << h;
  out << '\n';
  for (std::size_t i = 0; i < y_.size(); ++i) {
    out << y_[i];
    for (int m = 0; m < dims_; ++m) out << ',' << x_[i * dims_ + m];
    out << '\n';
  }
}

NwModel NwModel::load_csv(const std::filesystem::path& path, std::string* feature_set) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line.rfind("# nw-model", 0) != 0) {
    throw std::runtime_error("not an nw-model file: " + path.string());
  }
  int dims = 0;
  {
    std::stringstream header(line);
    std::string token;
    while (header >> token) {
      if (token.rfind("dims=", 0) == 0) dims = std::stoi(token.substr(5));
      if (feature_set != nullptr && token.rfind("features=", 0) == 0) {
        *feature_set = token.substr(9);
      }
    }
  }
  if (dims <= 0) throw std::runtime_error("nw-model header missing dims");

  NwModel model;
  model.dims_ = dims;
  if (!std::getline(in, line) || line.rfind("bandwidth", 0) != 0) {
    throw std::runtime_error("nw-model missing bandwidth line");
  }
  {
    std::stringstream row(line);
    std::string cell;
    std::getline(row, cell, ',');
    while (std::getline(row, cell, ',')) model.bandwidth_.push_back(std::stod(cell));
  }
  if (static_cast<int>(model.bandwidth_.size()) != dims) {
    throw std::runtime_error("nw-model bandwidth count mismatch");
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream row(line);
    std::string cell;
    std::getline(row, cell, ',');
    model.y_.push_back(std::stod(cell));
    for (int m = 0; m < dims; ++m) {
      if (!std::getline(row, cell, ',')) throw std::runtime_error("nw-model truncated row");
      model.x_.push_back(std::stod(cell));
    }
  }
  if (model.y_.empty()) throw std::runtime_error("nw-model has no samples");
  return model;
}

}  // namespace pmlab::stats
