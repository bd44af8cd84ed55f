#pragma once

// JSON encodings of the public result types. nlohmann::json objects keep
// their keys sorted, so dump() output is canonical.

#include <json.hpp>

#include "edcp/calibration.hpp"
#include "edcp/scan.hpp"
#include "edcp/segmentation.hpp"
#include "edcp/simulation.hpp"

namespace edcp {

void to_json(nlohmann::json& j, const PermutationScheme& s);
void from_json(const nlohmann::json& j, PermutationScheme& s);

void to_json(nlohmann::json& j, const DetectorConfig& c);
void from_json(const nlohmann::json& j, DetectorConfig& c);

void to_json(nlohmann::json& j, const DetectionDecision& d);
void from_json(const nlohmann::json& j, DetectionDecision& d);

void to_json(nlohmann::json& j, const SegmentNode& node);
void from_json(const nlohmann::json& j, SegmentNode& node);

void to_json(nlohmann::json& j, const SegmentationReport& r);
void from_json(const nlohmann::json& j, SegmentationReport& r);

void to_json(nlohmann::json& j, const SimulationSummary& s);
void from_json(const nlohmann::json& j, SimulationSummary& s);

/// Per-split trace {k, e_k, z} of a scan.
nlohmann::json scan_trace(const ScanResult& scan);

bool operator==(const DetectionDecision& a, const DetectionDecision& b);

}  // namespace edcp
