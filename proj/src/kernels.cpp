#include "edcp/kernels.hpp"

#include <cmath>

namespace edcp::kernels {

namespace {

inline double kernel_value(std::span<const double> x, std::span<const double> y, double omega) noexcept {
  double r;
  if (x.size() == 1) {
    r = std::abs(x[0] - y[0]);
  } else {
    double sq = 0.0;
    for (std::size_t c = 0; c < x.size(); ++c) {
      const double d = x[c] - y[c];
      sq += d * d;
    }
    r = std::sqrt(sq);
  }
  return omega == 1.0 ? r : std::pow(r, omega);
}

inline void fill_row(const Series& series, double omega, std::span<double> out, std::size_t i) {
  const std::size_t n = series.size();
  const auto xi = series.point(i);
  out[i * n + i] = 0.0;
  for (std::size_t j = i + 1; j < n; ++j) {
    const double h = kernel_value(xi, series.point(j), omega);
    out[i * n + j] = h;
    out[j * n + i] = h;
  }
}

inline double replicate_statistic(const DistanceMatrix& dist, const ScanWindow& window,
                                  const PermutationScheme& scheme, std::uint64_t seed,
                                  std::size_t l, std::vector<std::size_t>& order,
                                  PairSums& scratch) {
  Rng rng(derive_seed(seed, l));
  permute_indices(dist.size(), scheme, rng, order);
  return scan_max(dist, order, window, scratch).t;
}

}  // namespace

void pair_sums_along(const DistanceMatrix& dist, std::span<const std::size_t> order,
                     std::size_t k_min, std::size_t k_max, PairSums& out) {
  const std::size_t n = dist.size();
  out.cross.assign(k_max + 1, 0.0);
  out.left.assign(k_max + 1, 0.0);
  out.right.assign(k_max + 1, 0.0);

  double left = 0.0, prefix_rows = 0.0;
  for (std::size_t k = 1; k <= k_max; ++k) {
    const std::size_t p = order[k - 1];
    const auto row = dist.row(p);
    double c = 0.0;
    for (std::size_t a = 0; a + 1 < k; ++a) c += row[order[a]];
    left += c;
    prefix_rows += dist.row_sum(p);
    out.left[k] = left;
    out.cross[k] = prefix_rows - 2.0 * left;
  }

  double right = 0.0;
  for (std::size_t k = n; k-- > k_min;) {
    const auto row = dist.row(order[k]);
    for (std::size_t b = k + 1; b < n; ++b) right += row[order[b]];
    if (k <= k_max) out.right[k] = right;
  }
}

ScanMax scan_max(const DistanceMatrix& dist, std::span<const std::size_t> order,
                 const ScanWindow& window, PairSums& scratch) {
  const std::size_t n = dist.size();
  pair_sums_along(dist, order, window.k_lo, window.k_hi, scratch);
  ScanMax best{-1.0, window.k_lo};
  for (std::size_t k = window.k_lo; k <= window.k_hi; ++k) {
    const auto s = statistics_from_sums(n, k, scratch.cross[k], scratch.left[k], scratch.right[k]);
    const double z = std::abs(studentized(s.e_k, n, k, window.s_psi));
    if (z > best.t) best = {z, k};
  }
  return best;
}

namespace serial {

void fill_distance_matrix(const Series& series, double omega, std::span<double> out) {
  for (std::size_t i = 0; i < series.size(); ++i) fill_row(series, omega, out, i);
}

std::vector<double> permutation_replicates(const DistanceMatrix& dist, const ScanWindow& window,
                                           const PermutationScheme& scheme, std::uint64_t seed,
                                           std::size_t count) {
  std::vector<double> out(count);
  std::vector<std::size_t> order;
  PairSums scratch;
  for (std::size_t l = 0; l < count; ++l) {
    out[l] = replicate_statistic(dist, window, scheme, seed, l, order, scratch);
  }
  return out;
}

}  // namespace serial

namespace omp {

void fill_distance_matrix(const Series& series, double omega, std::span<double> out) {
  const auto n = static_cast<std::ptrdiff_t>(series.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < n; ++i) fill_row(series, omega, out, static_cast<std::size_t>(i));
}

std::vector<double> permutation_replicates(const DistanceMatrix& dist, const ScanWindow& window,
                                           const PermutationScheme& scheme, std::uint64_t seed,
                                           std::size_t count) {
  std::vector<double> out(count);
  const auto total = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel
  {
    std::vector<std::size_t> order;
    PairSums scratch;
#pragma omp for schedule(static)
    for (std::ptrdiff_t l = 0; l < total; ++l) {
      const auto idx = static_cast<std::size_t>(l);
      out[idx] = replicate_statistic(dist, window, scheme, seed, idx, order, scratch);
    }
  }
  return out;
}

}  // namespace omp

}  // namespace edcp::kernels
