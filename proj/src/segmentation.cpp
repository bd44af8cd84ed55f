#include "edcp/segmentation.hpp"

#include <algorithm>
#include <cmath>

#include "edcp/errors.hpp"

namespace edcp {

std::string to_string(Correction correction) {
  return correction == Correction::none ? "none" : "bonferroni";
}

Correction correction_from_string(const std::string& name) {
  if (name == "none") return Correction::none;
  if (name == "bonferroni") return Correction::bonferroni;
  throw ParameterError("unknown correction '" + name + "'");
}

std::size_t default_n_min(std::size_t n, double eta) {
  const auto v = static_cast<std::size_t>(std::ceil(2.0 * eta * static_cast<double>(n) - 1e-9));
  return std::max<std::size_t>(v, 4);
}

std::vector<std::pair<std::size_t, std::size_t>> SegmentationReport::segments() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t start = 1;
  for (std::size_t c : change_points) {
    out.emplace_back(start, c);
    start = c + 1;
  }
  if (n > 0) out.emplace_back(start, n);
  return out;
}

namespace {

struct Segmenter {
  const Series& series;
  const SegmentationConfig& config;
  std::size_t n_min;
  double level;
  SegmentationReport& report;

  void visit(std::size_t start, std::size_t end, std::size_t depth) {
    SegmentNode node;
    node.start = start;
    node.end = end;
    node.depth = depth;
    report.depth = std::max(report.depth, depth);
    const std::size_t len = end - start + 1;

    if (len < n_min) {
      node.diagnostic = "shorter than n_min";
      report.nodes.push_back(std::move(node));
      return;
    }

    DetectorConfig det = config.detector;
    det.alpha = level;
    det.seed = derive_seed(config.detector.seed, start, end);
    if (det.scheme.block_length && *det.scheme.block_length > len) det.scheme.block_length = len;
    const Series piece = series.slice(start - 1, len);
    try {
      node.decision = detect_single(piece, det);
    } catch (const DegenerateScaleError&) {
      node.diagnostic = "degenerate scale (constant segment)";
    } catch (const ConfigurationError&) {
      node.diagnostic = "no interior split";
    } catch (const SizeError&) {
      node.diagnostic = "too short to split";
    }

    if (!node.decision || !node.decision->reject) {
      report.nodes.push_back(std::move(node));
      return;
    }
    const std::size_t cut = start - 1 + *node.decision->k_hat;
    node.split = cut;
    report.change_points.push_back(cut);
    report.nodes.push_back(std::move(node));
    visit(start, cut, depth + 1);
    visit(cut + 1, end, depth + 1);
  }
};

}  // namespace

SegmentationReport segment(const Series& series, const SegmentationConfig& config) {
  validate(config.detector);
  const std::size_t n = series.size();
  SegmentationReport report;
  report.n = n;
  report.n_min = config.n_min.value_or(default_n_min(n, config.detector.eta));
  if (report.n_min < 4) throw ParameterError("n_min must be at least 4");

  double level = config.detector.alpha;
  if (config.correction == Correction::bonferroni) {
    const std::size_t m = config.bonferroni_m.value_or(std::max<std::size_t>(1, n / report.n_min));
    if (m < 1) throw ParameterError("Bonferroni bound must be at least 1");
    level /= static_cast<double>(m);
  }
  report.segment_alpha = level;

  if (n > 0) {
    Segmenter run{series, config, report.n_min, level, report};
    run.visit(1, n, 0);
  }
  std::sort(report.change_points.begin(), report.change_points.end());
  return report;
}

}  // namespace edcp
