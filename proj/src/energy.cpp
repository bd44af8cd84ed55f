#include "edcp/energy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "edcp/errors.hpp"
#include "edcp/kernels.hpp"

namespace edcp {

DistanceMatrix::DistanceMatrix(std::size_t n, double omega, std::vector<double> values)
    : n_(n), omega_(omega), values_(std::move(values)), row_sums_(n, 0.0) {
  for (std::size_t i = 0; i < n_; ++i) {
    double s = 0.0;
    for (double v : row(i)) s += v;
    row_sums_[i] = s;
    for (std::size_t j = i + 1; j < n_; ++j) {
      pair_total_ += values_[i * n_ + j];
      max_value_ = std::max(max_value_, values_[i * n_ + j]);
    }
  }
}

void validate_omega(double omega) {
  if (!(omega > 0.0 && omega < 2.0)) {
    throw ParameterError("omega must lie in (0, 2), got " + std::to_string(omega));
  }
}

DistanceMatrix distance_matrix(const Series& series, double omega) {
  validate_omega(omega);
  const std::size_t n = series.size();
  std::vector<double> values(n * n, 0.0);
  kernels::omp::fill_distance_matrix(series, omega, values);
  return DistanceMatrix(n, omega, std::move(values));
}

namespace {

void check_split(std::size_t n, std::size_t k) {
  if (k < 2 || k + 2 > n) {
    throw SplitError("split index " + std::to_string(k) + " outside [2, " +
                     std::to_string(n < 2 ? 0 : n - 2) + "] for n = " + std::to_string(n));
  }
}

}  // namespace

SplitStatistics statistics_from_sums(std::size_t n, std::size_t k, double cross, double left,
                                     double right) noexcept {
  const auto kd = static_cast<double>(k);
  const auto md = static_cast<double>(n - k);
  SplitStatistics s;
  s.k = k;
  s.u_xy = cross / (kd * md);
  s.u_xx = 2.0 * left / (kd * (kd - 1.0));
  s.u_yy = 2.0 * right / (md * (md - 1.0));
  s.e_k = 2.0 * s.u_xy - s.u_xx - s.u_yy;
  return s;
}

SplitStatistics split_statistics(const DistanceMatrix& dist, std::size_t k) {
  const std::size_t n = dist.size();
  check_split(n, k);
  double cross = 0.0, left = 0.0, right = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) left += dist(i, j);
    for (std::size_t j = k; j < n; ++j) cross += dist(i, j);
  }
  for (std::size_t i = k; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) right += dist(i, j);
  }
  return statistics_from_sums(n, k, cross, left, right);
}

std::vector<SplitStatistics> scan_energy(const DistanceMatrix& dist,
                                         std::span<const std::size_t> candidates) {
  const std::size_t n = dist.size();
  if (candidates.empty()) throw ConfigurationError("empty candidate set");
  std::size_t k_min = n, k_max = 0;
  for (std::size_t k : candidates) {
    check_split(n, k);
    k_min = std::min(k_min, k);
    k_max = std::max(k_max, k);
  }
  std::vector<std::size_t> identity(n);
  for (std::size_t i = 0; i < n; ++i) identity[i] = i;
  kernels::PairSums sums;
  kernels::pair_sums_along(dist, identity, k_min, k_max, sums);

  std::vector<SplitStatistics> out;
  out.reserve(candidates.size());
  for (std::size_t k : candidates) {
    out.push_back(statistics_from_sums(n, k, sums.cross[k], sums.left[k], sums.right[k]));
  }
  return out;
}

}  // namespace edcp
