#pragma once

// Hot loops of the library. Each kernel exists as a plain serial reference
// and as an OpenMP version; both produce bit-identical output for any
// thread count.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "edcp/energy.hpp"
#include "edcp/permutation.hpp"
#include "edcp/series.hpp"

namespace edcp::kernels {

/// Pair sums for the splits k = k_min..k_max of a sample taken in some order.
/// cross[k]: pairs straddling the split, left[k]/right[k]: pairs inside each side.
struct PairSums {
  std::vector<double> cross;
  std::vector<double> left;
  std::vector<double> right;
};

/// Within-left sums grow forward from k = 1 and within-right sums grow
/// backward from k = n - 1, so neither is formed by subtracting from the
/// total. Cost O(n^2).
void pair_sums_along(const DistanceMatrix& dist, std::span<const std::size_t> order,
                     std::size_t k_min, std::size_t k_max, PairSums& out);

/// Candidate window [k_lo, k_hi] and the shared scale used for Z.
struct ScanWindow {
  std::size_t k_lo = 0;
  std::size_t k_hi = 0;
  double s_psi = 0.0;
};

/// Z_{n,k} = k(n-k) e_k / (sqrt(2) n s_psi).
inline double studentized(double e_k, std::size_t n, std::size_t k, double s_psi) noexcept {
  const double nk = static_cast<double>(k) * static_cast<double>(n - k);
  return nk / (1.4142135623730951 * static_cast<double>(n) * s_psi) * e_k;
}

struct ScanMax {
  double t = 0.0;
  std::size_t k = 0;
};

/// max_k |Z_{n,k}| over the window for the sample reordered by `order`;
/// ties go to the smallest k.
ScanMax scan_max(const DistanceMatrix& dist, std::span<const std::size_t> order,
                 const ScanWindow& window, PairSums& scratch);

namespace serial {

void fill_distance_matrix(const Series& series, double omega, std::span<double> out);

/// T^(l) for l = 0..count-1, replicate l drawn from derive_seed(seed, l).
std::vector<double> permutation_replicates(const DistanceMatrix& dist, const ScanWindow& window,
                                           const PermutationScheme& scheme, std::uint64_t seed,
                                           std::size_t count);

}  // namespace serial

namespace omp {

void fill_distance_matrix(const Series& series, double omega, std::span<double> out);

std::vector<double> permutation_replicates(const DistanceMatrix& dist, const ScanWindow& window,
                                           const PermutationScheme& scheme, std::uint64_t seed,
                                           std::size_t count);

}  // namespace omp

}  // namespace edcp::kernels
