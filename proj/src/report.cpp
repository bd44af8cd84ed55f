#include "edcp/report.hpp"

namespace edcp {

using nlohmann::json;

namespace {

template <typename T>
void put_optional(json& j, const char* key, const std::optional<T>& v) {
  j[key] = v ? json(*v) : json(nullptr);
}

template <typename T>
void get_optional(const json& j, const char* key, std::optional<T>& v) {
  if (!j.contains(key) || j.at(key).is_null()) {
    v.reset();
  } else {
    v = j.at(key).get<T>();
  }
}

}  // namespace

void to_json(json& j, const PermutationScheme& s) {
  j = json{{"kind", to_string(s.kind)}};
  put_optional(j, "block_length", s.block_length);
}

void from_json(const json& j, PermutationScheme& s) {
  s.kind = scheme_kind_from_string(j.at("kind").get<std::string>());
  get_optional(j, "block_length", s.block_length);
}

void to_json(json& j, const DetectorConfig& c) {
  j = json{{"eta", c.eta},
           {"omega", c.omega},
           {"alpha", c.alpha},
           {"permutations", c.permutations},
           {"scheme", c.scheme},
           {"seed", c.seed}};
}

void from_json(const json& j, DetectorConfig& c) {
  c.eta = j.at("eta").get<double>();
  c.omega = j.at("omega").get<double>();
  c.alpha = j.at("alpha").get<double>();
  c.permutations = j.at("permutations").get<std::size_t>();
  c.scheme = j.at("scheme").get<PermutationScheme>();
  c.seed = j.at("seed").get<std::uint64_t>();
}

void to_json(json& j, const DetectionDecision& d) {
  j = json{{"t_n", d.t_n},
           {"c_alpha", d.c_alpha},
           {"p_value", d.p_value},
           {"reject", d.reject},
           {"alpha", d.alpha},
           {"scheme", d.scheme},
           {"block_length", d.block_length},
           {"permutations", d.permutations},
           {"seed", d.seed}};
  put_optional(j, "k_hat", d.k_hat);
}

void from_json(const json& j, DetectionDecision& d) {
  d.t_n = j.at("t_n").get<double>();
  d.c_alpha = j.at("c_alpha").get<double>();
  d.p_value = j.at("p_value").get<double>();
  d.reject = j.at("reject").get<bool>();
  d.alpha = j.at("alpha").get<double>();
  d.scheme = j.at("scheme").get<PermutationScheme>();
  d.block_length = j.at("block_length").get<std::size_t>();
  d.permutations = j.at("permutations").get<std::size_t>();
  d.seed = j.at("seed").get<std::uint64_t>();
  get_optional(j, "k_hat", d.k_hat);
}

void to_json(json& j, const SegmentNode& node) {
  j = json{{"start", node.start}, {"end", node.end}, {"depth", node.depth}, {"diagnostic", node.diagnostic}};
  put_optional(j, "decision", node.decision);
  put_optional(j, "split", node.split);
}

void from_json(const json& j, SegmentNode& node) {
  node.start = j.at("start").get<std::size_t>();
  node.end = j.at("end").get<std::size_t>();
  node.depth = j.at("depth").get<std::size_t>();
  node.diagnostic = j.at("diagnostic").get<std::string>();
  get_optional(j, "decision", node.decision);
  get_optional(j, "split", node.split);
}

void to_json(json& j, const SegmentationReport& r) {
  j = json{{"n", r.n},
           {"change_points", r.change_points},
           {"nodes", r.nodes},
           {"depth", r.depth},
           {"n_min", r.n_min},
           {"segment_alpha", r.segment_alpha}};
}

void from_json(const json& j, SegmentationReport& r) {
  r.n = j.at("n").get<std::size_t>();
  r.change_points = j.at("change_points").get<std::vector<std::size_t>>();
  r.nodes = j.at("nodes").get<std::vector<SegmentNode>>();
  r.depth = j.at("depth").get<std::size_t>();
  r.n_min = j.at("n_min").get<std::size_t>();
  r.segment_alpha = j.at("segment_alpha").get<double>();
}

void to_json(json& j, const SimulationSummary& s) {
  j = json{{"scenario", s.scenario},
           {"n", s.n},
           {"replications", s.replications},
           {"localized", s.localized},
           {"conditional_localization", s.conditional_localization},
           {"seconds", s.seconds}};
  put_optional(j, "rejections", s.rejections);
  put_optional(j, "rejection_rate", s.rejection_rate);
  put_optional(j, "monte_carlo_se", s.monte_carlo_se);
  put_optional(j, "mean_localization_error", s.mean_localization_error);
  put_optional(j, "localization_se", s.localization_se);
}

void from_json(const json& j, SimulationSummary& s) {
  s.scenario = j.at("scenario").get<std::string>();
  s.n = j.at("n").get<std::size_t>();
  s.replications = j.at("replications").get<std::size_t>();
  s.localized = j.at("localized").get<std::size_t>();
  s.conditional_localization = j.at("conditional_localization").get<bool>();
  s.seconds = j.at("seconds").get<double>();
  get_optional(j, "rejections", s.rejections);
  get_optional(j, "rejection_rate", s.rejection_rate);
  get_optional(j, "monte_carlo_se", s.monte_carlo_se);
  get_optional(j, "mean_localization_error", s.mean_localization_error);
  get_optional(j, "localization_se", s.localization_se);
}

json scan_trace(const ScanResult& scan) {
  json out = json::array();
  for (std::size_t i = 0; i < scan.splits.size(); ++i) {
    out.push_back({{"k", scan.splits[i].k}, {"e_k", scan.splits[i].e_k}, {"z", scan.z[i]}});
  }
  return out;
}

bool operator==(const DetectionDecision& a, const DetectionDecision& b) {
  return a.t_n == b.t_n && a.c_alpha == b.c_alpha && a.p_value == b.p_value && a.reject == b.reject &&
         a.k_hat == b.k_hat && a.alpha == b.alpha && a.scheme.kind == b.scheme.kind &&
         a.scheme.block_length == b.scheme.block_length && a.block_length == b.block_length &&
         a.permutations == b.permutations && a.seed == b.seed;
}

}  // namespace edcp
