#include "edcp/scan.hpp"

#include <cmath>
#include <string>

#include "edcp/errors.hpp"
#include "edcp/kernels.hpp"

namespace edcp {

ScaleEstimate degenerate_scale(const DistanceMatrix& dist) {
  const std::size_t n = dist.size();
  if (n < 3) throw SizeError("scale estimate needs n >= 3, got " + std::to_string(n));
  const auto nd = static_cast<double>(n);

  ScaleEstimate out;
  out.n = n;
  out.row_means.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.row_means[i] = dist.row_sum(i) / (nd - 1.0);
  out.grand_mean = 2.0 * dist.pair_total() / (nd * (nd - 1.0));

  double sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = dist.row(i);
    const double ri = out.grand_mean - out.row_means[i];
    double acc = 0.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double psi = row[j] + ri - out.row_means[j];
      acc += psi * psi;
    }
    sq += acc;
  }
  out.s_psi_sq = 2.0 * sq / (nd * (nd - 1.0));
  out.s_psi = std::sqrt(out.s_psi_sq);
  return out;
}

bool is_degenerate(const ScaleEstimate& scale, const DistanceMatrix& dist) noexcept {
  return dist.max_value() == 0.0 || !(scale.s_psi > 1e-12 * dist.max_value());
}

CandidateSet candidate_set(std::size_t n, double eta) {
  if (!(eta > 0.0 && eta < 0.5)) {
    throw ParameterError("eta must lie in (0, 1/2), got " + std::to_string(eta));
  }
  if (n < 4) throw SizeError("candidate splits need n >= 4, got " + std::to_string(n));
  const double nd = static_cast<double>(n);
  // The 1e-9 guard keeps e.g. 0.1 * 30 from rounding up to 4.
  const auto lo = static_cast<std::size_t>(std::ceil(eta * nd - 1e-9));
  const auto hi = static_cast<std::size_t>(std::floor((1.0 - eta) * nd + 1e-9));

  CandidateSet out;
  out.eta = eta;
  out.n = n;
  for (std::size_t k = std::max<std::size_t>(lo, 2); k <= hi && k + 2 <= n; ++k) {
    out.indices.push_back(k);
  }
  if (out.indices.empty()) {
    throw ConfigurationError("no interior split for n = " + std::to_string(n) +
                             " and eta = " + std::to_string(eta));
  }
  return out;
}

double studentize(const SplitStatistics& stats, const ScaleEstimate& scale, std::size_t n) {
  if (!(scale.s_psi > 0.0)) throw DegenerateScaleError("s_psi is zero; Z is undefined");
  return kernels::studentized(stats.e_k, n, stats.k, scale.s_psi);
}

ScanResult scan(const DistanceMatrix& dist, double eta) {
  const std::size_t n = dist.size();
  ScanResult out;
  out.candidates = candidate_set(n, eta);
  out.scale = degenerate_scale(dist);
  if (is_degenerate(out.scale, dist)) {
    throw DegenerateScaleError("all pairwise distances are numerically zero (constant data); "
                               "no change is detectable");
  }
  out.splits = scan_energy(dist, out.candidates.indices);
  out.z.reserve(out.splits.size());
  out.t_n = -1.0;
  for (const auto& s : out.splits) {
    const double z = studentize(s, out.scale, n);
    out.z.push_back(z);
    if (std::abs(z) > out.t_n) {
      out.t_n = std::abs(z);
      out.k_hat = s.k;
    }
  }
  return out;
}

ScanResult scan(const Series& series, double eta, double omega) {
  return scan(distance_matrix(series, omega), eta);
}

SplitWeights::SplitWeights(std::size_t n, std::size_t k) : n_(n), k_(k) {
  if (k < 2 || k + 2 > n) {
    throw SplitError("weights need 2 <= k <= n-2, got k = " + std::to_string(k) + ", n = " +
                     std::to_string(n));
  }
  const auto kk = static_cast<long long>(k);
  const auto m = static_cast<long long>(n - k);
  within_left_ = Fraction(-m, kk - 1);
  within_right_ = Fraction(-kk, m - 1);
}

SplitWeights::Fraction SplitWeights::w(std::size_t i, std::size_t j) const noexcept {
  if (i == j) return 0;
  const bool li = i <= k_, lj = j <= k_;
  if (li && lj) return within_left_;
  if (!li && !lj) return within_right_;
  return 1;
}

SplitWeights::Fraction SplitWeights::row_sum(std::size_t i) const noexcept {
  const auto k = static_cast<long long>(k_);
  const auto m = static_cast<long long>(n_ - k_);
  return i <= k_ ? Fraction(k - 1) * within_left_ + m : Fraction(m - 1) * within_right_ + k;
}

SplitWeights::Fraction SplitWeights::total_sum() const noexcept {
  const auto k = static_cast<long long>(k_);
  const auto m = static_cast<long long>(n_ - k_);
  return 2 * (Fraction(k * (k - 1) / 2) * within_left_ + k * m + Fraction(m * (m - 1) / 2) * within_right_);
}

SplitWeights::Fraction SplitWeights::squared_sum() const noexcept {
  const auto k = static_cast<long long>(k_);
  const auto m = static_cast<long long>(n_ - k_);
  return Fraction(2 * k * m * m, k - 1) + 4 * k * m + Fraction(2 * m * k * k, m - 1);
}

double SplitWeights::normalized_squared_sum() const noexcept {
  const auto nd = static_cast<double>(n_);
  return boost::rational_cast<double>(squared_sum()) / (nd * nd);
}

}  // namespace edcp
