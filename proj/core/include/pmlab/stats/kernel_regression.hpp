#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace pmlab::stats {

/// Nadaraya-Watson regression with a product-Gaussian kernel and
/// per-dimension Silverman bandwidths
///   h_m = sigma_m * (4 / (M + 2))^(1/(M+4)) * n^(-1/(M+4)).
/// Fitted on binary execution labels the prediction is a probability.
class NwModel {
 public:
  NwModel() = default;

  /// `x` is row-major, n rows of `dims` coordinates.
  static NwModel fit(std::vector<double> x, std::vector<double> y, int dims);

  /// Same, with caller-chosen bandwidths instead of Silverman's rule.
  static NwModel fit_with_bandwidths(std::vector<double> x, std::vector<double> y, int dims,
                                     std::vector<double> bandwidths);

  double predict(std::span<const double> query) const;

  /// True when the last predict() fell back to the nearest sample because
  /// every kernel weight underflowed (degenerate bandwidth on a mismatched
  /// zero-variance dimension).
  bool last_predict_degenerate() const { return last_degenerate_; }

  int dims() const { return dims_; }
  std::size_t size() const { return y_.size(); }
  const std::vector<double>& bandwidths() const { return bandwidth_; }

  void save_csv(const std::filesystem::path& path, const std::string& feature_set) const;
  static NwModel load_csv(const std::filesystem::path& path, std::string* feature_set = nullptr);

 private:
  std::vector<double> x_;  // row-major n x dims
  std::vector<double> y_;
  std::vector<double> bandwidth_;
  int dims_ = 0;
  mutable bool last_degenerate_ = false;
};

}  // namespace pmlab::stats
