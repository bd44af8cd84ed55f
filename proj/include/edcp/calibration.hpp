#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "edcp/energy.hpp"
#include "edcp/permutation.hpp"
#include "edcp/scan.hpp"
#include "edcp/series.hpp"

namespace edcp {

/// Everything one single-change test needs.
struct DetectorConfig {
  double eta = 0.1;
  double omega = 1.0;
  double alpha = 0.05;
  std::size_t permutations = 999;
  PermutationScheme scheme{};
  std::uint64_t seed = 0;
};

/// Throws ParameterError on any out-of-range field.
void validate(const DetectorConfig& config);

struct CalibrationResult {
  double t_obs = 0.0;
  double c_alpha = 0.0;
  double p_value = 1.0;
  std::vector<double> replicates;  // in replicate order l = 0..L-1
  std::size_t permutations = 0;
  std::uint64_t seed = 0;
  std::size_t block_length = 1;
};

/// 1-based rank ceil((1 - alpha) L) of the order statistic used as c_alpha.
std::size_t quantile_rank(std::size_t permutations, double alpha);

/// (1 + #{T^(l) >= t_obs}) / (L + 1).
double permutation_p_value(std::span<const double> replicates, double t_obs) noexcept;

/// Permutation null for the observed scan. The scale s_psi is a pooled
/// pairwise statistic, identical on every reordering, so it is reused rather
/// than recomputed for both schemes.
CalibrationResult calibrate(const DistanceMatrix& dist, const ScanResult& observed,
                            const DetectorConfig& config);

CalibrationResult calibrate(const Series& series, const DetectorConfig& config);

struct DetectionDecision {
  double t_n = 0.0;
  double c_alpha = 0.0;
  double p_value = 1.0;
  bool reject = false;
  std::optional<std::size_t> k_hat;  // set iff reject
  double alpha = 0.05;
  PermutationScheme scheme{};
  std::size_t block_length = 1;
  std::size_t permutations = 0;
  std::uint64_t seed = 0;
};

/// Full output of one test: the decision plus the scan and null it came from.
struct Detection {
  DetectionDecision decision;
  ScanResult scan;
  CalibrationResult calibration;
};

Detection detect(const Series& series, const DetectorConfig& config);

DetectionDecision detect_single(const Series& series, const DetectorConfig& config);

}  // namespace edcp
