#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "edcp/calibration.hpp"
#include "edcp/series.hpp"

namespace edcp {

enum class Correction { none, bonferroni };

std::string to_string(Correction correction);
Correction correction_from_string(const std::string& name);

struct SegmentationConfig {
  DetectorConfig detector{};
  /// Minimum segment length to test; unset means default_n_min(n, eta).
  std::optional<std::size_t> n_min;
  Correction correction = Correction::none;
  /// Bonferroni divisor; unset means floor(n / n_min).
  std::optional<std::size_t> bonferroni_m;
};

/// ceil(2 eta n), clamped below at 4.
std::size_t default_n_min(std::size_t n, double eta);

/// One tested or untested segment [start, end] (1-based, inclusive).
struct SegmentNode {
  std::size_t start = 0;
  std::size_t end = 0;
  std::size_t depth = 0;
  std::optional<DetectionDecision> decision;
  /// Global change point c: the distribution differs between ..c and c+1...
  std::optional<std::size_t> split;
  /// Why the node is a leaf without a decision (too short, constant data, ...).
  std::string diagnostic;

  std::size_t length() const noexcept { return end - start + 1; }
};

struct SegmentationReport {
  std::size_t n = 0;
  std::vector<std::size_t> change_points;  // sorted, 1-based
  std::vector<SegmentNode> nodes;           // depth-first order
  std::size_t depth = 0;
  std::size_t n_min = 0;
  double segment_alpha = 0.05;

  /// Maximal segments [start, end] between consecutive change points.
  std::vector<std::pair<std::size_t, std::size_t>> segments() const;
};

/// Recursive binary segmentation. Node [s, e] is tested at the (possibly
/// corrected) level with a seed derived from (seed, s, e); on rejection it
/// splits at s - 1 + k_hat and both halves are processed.
SegmentationReport segment(const Series& series, const SegmentationConfig& config);

}  // namespace edcp
