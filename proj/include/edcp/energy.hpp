#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "edcp/series.hpp"

namespace edcp {

/// Symmetric n x n matrix of kernel values h(X_i, X_j) = |X_i - X_j|^omega,
/// with cached row sums and the upper-triangle total.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;

  /// Takes ownership of a filled row-major n x n buffer.
  DistanceMatrix(std::size_t n, double omega, std::vector<double> values);

  std::size_t size() const noexcept { return n_; }
  double omega() const noexcept { return omega_; }

  double operator()(std::size_t i, std::size_t j) const noexcept { return values_[i * n_ + j]; }
  std::span<const double> row(std::size_t i) const noexcept { return {values_.data() + i * n_, n_}; }

  /// Sum over j != i of h_ij.
  double row_sum(std::size_t i) const noexcept { return row_sums_[i]; }
  std::span<const double> row_sums() const noexcept { return row_sums_; }

  /// Sum over i < j of h_ij.
  double pair_total() const noexcept { return pair_total_; }
  double max_value() const noexcept { return max_value_; }

  std::span<const double> values() const noexcept { return values_; }

 private:
  std::size_t n_ = 0;
  double omega_ = 1.0;
  std::vector<double> values_;
  std::vector<double> row_sums_;
  double pair_total_ = 0.0;
  double max_value_ = 0.0;
};

/// Segment statistics for the split {X_1..X_k} | {X_{k+1}..X_n}.
struct SplitStatistics {
  std::size_t k = 0;
  double u_xy = 0.0;
  double u_xx = 0.0;
  double u_yy = 0.0;
  double e_k = 0.0;
};

/// Throws ParameterError unless 0 < omega < 2.
void validate_omega(double omega);

DistanceMatrix distance_matrix(const Series& series, double omega = 1.0);

/// Direct evaluation of the three U-statistics by explicit double sums.
SplitStatistics split_statistics(const DistanceMatrix& dist, std::size_t k);

/// Builds the statistics from raw pair sums (cross, within-left, within-right).
SplitStatistics statistics_from_sums(std::size_t n, std::size_t k, double cross, double left,
                                     double right) noexcept;

/// Batch evaluation over `candidates` (ascending or not). Runs one O(n^2)
/// incremental pass; agrees with split_statistics to 1e-10 relative.
std::vector<SplitStatistics> scan_energy(const DistanceMatrix& dist,
                                         std::span<const std::size_t> candidates);

}  // namespace edcp
