#include "edcp/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "edcp/errors.hpp"
#include "edcp/kernels.hpp"

namespace edcp {

// --- permutations -----------------------------------------------------------

std::size_t PermutationScheme::resolved_block_length(std::size_t n) const {
  if (kind == SchemeKind::uniform) return 1;
  if (block_length) return *block_length;
  return static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
}

std::string to_string(SchemeKind kind) {
  return kind == SchemeKind::uniform ? "uniform" : "circular_block";
}

SchemeKind scheme_kind_from_string(const std::string& name) {
  if (name == "uniform") return SchemeKind::uniform;
  if (name == "circular_block" || name == "block") return SchemeKind::circular_block;
  throw ParameterError("unknown permutation scheme '" + name + "'");
}

void validate_scheme(const PermutationScheme& scheme, std::size_t n) {
  if (scheme.kind == SchemeKind::uniform) return;
  const std::size_t m = scheme.resolved_block_length(n);
  if (m == 0 || m > n) {
    throw ParameterError("block length " + std::to_string(m) + " outside [1, " + std::to_string(n) + "]");
  }
}

std::vector<std::size_t> block_permutation(std::size_t n, std::size_t block_length,
                                           std::span<const std::size_t> block_order) {
  std::vector<std::size_t> out;
  out.reserve(n);
  for (std::size_t b : block_order) {
    const std::size_t first = b * block_length;
    const std::size_t last = std::min(n, first + block_length);
    for (std::size_t i = first; i < last; ++i) out.push_back(i);
  }
  return out;
}

void permute_indices(std::size_t n, const PermutationScheme& scheme, Rng& rng,
                     std::vector<std::size_t>& out) {
  out.resize(n);
  if (scheme.kind == SchemeKind::uniform) {
    std::iota(out.begin(), out.end(), std::size_t{0});
    std::shuffle(out.begin(), out.end(), rng);
    return;
  }
  const std::size_t m = scheme.resolved_block_length(n);
  if (m == 0 || m > n) {
    throw ParameterError("block length " + std::to_string(m) + " outside [1, " + std::to_string(n) + "]");
  }
  const std::size_t blocks = (n + m - 1) / m;
  std::vector<std::size_t> order(blocks);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), rng);
  out = block_permutation(n, m, order);
}

std::vector<std::size_t> permute_indices(std::size_t n, const PermutationScheme& scheme, Rng& rng) {
  std::vector<std::size_t> out;
  permute_indices(n, scheme, rng, out);
  return out;
}

// --- calibration ------------------------------------------------------------

void validate(const DetectorConfig& config) {
  if (!(config.eta > 0.0 && config.eta < 0.5)) {
    throw ParameterError("eta must lie in (0, 1/2), got " + std::to_string(config.eta));
  }
  validate_omega(config.omega);
  if (!(config.alpha > 0.0 && config.alpha < 1.0)) {
    throw ParameterError("alpha must lie in (0, 1), got " + std::to_string(config.alpha));
  }
  if (config.permutations < 1) throw ParameterError("at least one permutation is required");
  if (config.scheme.block_length && *config.scheme.block_length == 0) {
    throw ParameterError("block length must be positive");
  }
}

std::size_t quantile_rank(std::size_t permutations, double alpha) {
  const double x = (1.0 - alpha) * static_cast<double>(permutations);
  const auto rank = static_cast<std::size_t>(std::ceil(x - 1e-9));
  return std::clamp<std::size_t>(rank, 1, permutations);
}

double permutation_p_value(std::span<const double> replicates, double t_obs) noexcept {
  const auto at_least = std::count_if(replicates.begin(), replicates.end(),
                                      [t_obs](double t) { return t >= t_obs; });
  return static_cast<double>(1 + at_least) / static_cast<double>(replicates.size() + 1);
}

CalibrationResult calibrate(const DistanceMatrix& dist, const ScanResult& observed,
                            const DetectorConfig& config) {
  validate(config);
  const std::size_t n = dist.size();
  validate_scheme(config.scheme, n);

  const kernels::ScanWindow window{observed.candidates.front(), observed.candidates.back(),
                                   observed.scale.s_psi};
  CalibrationResult out;
  out.t_obs = observed.t_n;
  out.permutations = config.permutations;
  out.seed = config.seed;
  out.block_length = config.scheme.resolved_block_length(n);
  out.replicates =
      kernels::omp::permutation_replicates(dist, window, config.scheme, config.seed, config.permutations);

  std::vector<double> sorted = out.replicates;
  const std::size_t rank = quantile_rank(config.permutations, config.alpha);
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(rank - 1), sorted.end());
  out.c_alpha = sorted[rank - 1];
  out.p_value = permutation_p_value(out.replicates, out.t_obs);
  return out;
}

CalibrationResult calibrate(const Series& series, const DetectorConfig& config) {
  validate(config);
  const auto dist = distance_matrix(series, config.omega);
  return calibrate(dist, scan(dist, config.eta), config);
}

Detection detect(const Series& series, const DetectorConfig& config) {
  validate(config);
  const auto dist = distance_matrix(series, config.omega);
  Detection out;
  out.scan = scan(dist, config.eta);
  out.calibration = calibrate(dist, out.scan, config);

  auto& d = out.decision;
  d.t_n = out.scan.t_n;
  d.c_alpha = out.calibration.c_alpha;
  d.p_value = out.calibration.p_value;
  d.reject = d.t_n > d.c_alpha;
  if (d.reject) d.k_hat = out.scan.k_hat;
  d.alpha = config.alpha;
  d.scheme = config.scheme;
  d.block_length = out.calibration.block_length;
  d.permutations = config.permutations;
  d.seed = config.seed;
  return out;
}

DetectionDecision detect_single(const Series& series, const DetectorConfig& config) {
  return detect(series, config).decision;
}

}  // namespace edcp
