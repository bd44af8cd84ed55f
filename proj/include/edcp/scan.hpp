#pragma once

#include <boost/rational.hpp>

#include <cstddef>
#include <vector>

#include "edcp/energy.hpp"
#include "edcp/series.hpp"

namespace edcp {

/// Double-centered scale estimate s_{Psi,n} of the degenerate kernel, pooled
/// over the whole sample and shared by every candidate split.
struct ScaleEstimate {
  double s_psi = 0.0;
  double s_psi_sq = 0.0;
  std::size_t n = 0;
  /// h-bar_{i.} (mean over j != i of h_ij).
  std::vector<double> row_means;
  /// h-bar_{..} (mean over i < j of h_ij).
  double grand_mean = 0.0;

  /// Psi-hat_ij = h_ij - h-bar_i. - h-bar_j. + h-bar_..
  double centered(const DistanceMatrix& dist, std::size_t i, std::size_t j) const noexcept {
    return dist(i, j) - row_means[i] - row_means[j] + grand_mean;
  }
};

/// Throws SizeError when n < 3.
ScaleEstimate degenerate_scale(const DistanceMatrix& dist);

/// True when the scale cannot studentize: every distance is zero or
/// s_psi <= 1e-12 * max distance.
bool is_degenerate(const ScaleEstimate& scale, const DistanceMatrix& dist) noexcept;

/// The trimmed interior K_eta = { ceil(eta n) <= k <= floor((1-eta) n), k >= 2, n-k >= 2 }.
struct CandidateSet {
  double eta = 0.1;
  std::size_t n = 0;
  std::vector<std::size_t> indices;

  std::size_t front() const { return indices.front(); }
  std::size_t back() const { return indices.back(); }
};

/// Throws ParameterError for eta outside (0, 1/2), SizeError for n < 4 and
/// ConfigurationError when the set comes out empty.
CandidateSet candidate_set(std::size_t n, double eta);

/// Throws DegenerateScaleError when scale.s_psi == 0.
double studentize(const SplitStatistics& stats, const ScaleEstimate& scale, std::size_t n);

struct ScanResult {
  CandidateSet candidates;
  ScaleEstimate scale;
  std::vector<SplitStatistics> splits;  // aligned with candidates.indices
  std::vector<double> z;                // aligned with candidates.indices
  double t_n = 0.0;
  std::size_t k_hat = 0;
};

/// Studentized scan over K_eta; k_hat is the smallest maximizer of |Z|.
ScanResult scan(const Series& series, double eta = 0.1, double omega = 1.0);
ScanResult scan(const DistanceMatrix& dist, double eta = 0.1);

/// The symmetric weights w_{n,k}(i, j) and a_{n,k} = 2w that express
/// S_{n,k} = k(n-k) E_k / n as (1/n) sum_{i<j} a_{n,k}(i,j) h_ij.
/// Indices are 1-based, as in the split convention.
class SplitWeights {
 public:
  using Fraction = boost::rational<long long>;

  SplitWeights(std::size_t n, std::size_t k);

  std::size_t n() const noexcept { return n_; }
  std::size_t k() const noexcept { return k_; }

  Fraction w(std::size_t i, std::size_t j) const noexcept;
  Fraction a(std::size_t i, std::size_t j) const noexcept { return 2 * w(i, j); }
  double a_value(std::size_t i, std::size_t j) const noexcept { return boost::rational_cast<double>(a(i, j)); }

  /// sum_{j != i} w(i, j).
  Fraction row_sum(std::size_t i) const noexcept;
  /// sum_{i<j} a(i, j).
  Fraction total_sum() const noexcept;
  /// sum_{i<j} a(i, j)^2 = 2km^2/(k-1) + 4km + 2mk^2/(m-1).
  Fraction squared_sum() const noexcept;
  /// squared_sum() / n^2, which tends to 2.
  double normalized_squared_sum() const noexcept;

 private:
  std::size_t n_;
  std::size_t k_;
  Fraction within_left_;
  Fraction within_right_;
};

}  // namespace edcp
