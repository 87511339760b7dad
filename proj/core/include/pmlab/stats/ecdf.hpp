#pragma once

#include <algorithm>
#include <span>
#include <vector>

namespace pmlab::stats {

/// Right-continuous empirical CDF over a copied, sorted sample.
class Ecdf {
 public:
  explicit Ecdf(std::vector<double> values) : values_(std::move(values)) {
    std::sort(values_.begin(), values_.end());
  }

  double operator()(double x) const {
    if (values_.empty()) return 0.0;
    const auto it = std::upper_bound(values_.begin(), values_.end(), x);
    return static_cast<double>(it - values_.begin()) / static_cast<double>(values_.size());
  }

  std::size_t size() const { return values_.size(); }
  const std::vector<double>& sorted() const { return values_; }

 private:
  std::vector<double> values_;
};

/// Pool-adjacent-violators: least-squares nondecreasing fit, equal weights.
std::vector<double> isotonic_nondecreasing(std::span<const double> y);

/// Order statistic at level s (type-1 quantile); s <= 0 gives the minimum.
double sample_quantile(std::vector<double> sorted_values, double level);

}  // namespace pmlab::stats
