#include "edcp/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "edcp/errors.hpp"
#include "edcp/report.hpp"

namespace edcp {

using nlohmann::json;

namespace {

std::string number_token(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

template <typename T>
std::string opt_token(const std::optional<T>& v) {
  if (!v) return {};
  if constexpr (std::is_floating_point_v<T>) {
    return number_token(*v);
  } else {
    return std::to_string(*v);
  }
}

std::string cell_name(const std::string& kind, const CellSpec& c) {
  std::string name = kind + ":" + to_string(c.family) + ":n=" + std::to_string(c.n);
  if (kind == "size") return name;
  name += ":loc=" + number_token(c.location);
  if (c.shift != 0.0) name += ":shift=" + number_token(c.shift);
  if (c.variance) name += ":variance=" + number_token(*c.variance);
  if (c.shape) name += ":shape=" + number_token(*c.shape);
  return name;
}

Distribution base_distribution(Family f) {
  switch (f) {
    case Family::normal: return Distribution::normal(0.0, 1.0);
    case Family::skew_normal: return Distribution::skew_normal(0.0, 1.0, 1.0);
    case Family::exponential: return Distribution::exponential(1.0);
  }
  return {};
}

json config_echo(const RunConfig& c) {
  static const char* commands[] = {"detect", "segment", "simulate"};
  json j{{"command", commands[static_cast<int>(c.command)]},
         {"detector", c.detector},
         {"format", c.format == OutputFormat::json ? "json" : "csv"},
         {"preset", c.preset}};
  if (c.command != Command::simulate) {
    j["input"] = c.input;
    j["group_column"] = c.csv.group_column ? json(*c.csv.group_column) : json(nullptr);
    j["order_column"] = c.csv.order_column ? json(*c.csv.order_column) : json(nullptr);
    j["value_columns"] = c.csv.value_columns;
  }
  if (c.command == Command::segment) {
    j["n_min"] = c.n_min ? json(*c.n_min) : json(nullptr);
    j["correction"] = to_string(c.correction);
    j["bonferroni_m"] = c.bonferroni_m ? json(*c.bonferroni_m) : json(nullptr);
  }
  if (c.command == Command::simulate) {
    j["cells"] = c.cells;
    j["replications"] = c.replications;
    j["conditional_localization"] = c.conditional_localization;
  }
  return j;
}

json error_json(const std::string& kind, const std::string& message) {
  return json{{"kind", kind}, {"message", message}};
}

std::uint64_t group_seed(std::uint64_t seed, const std::string& key) { return derive_seed(seed, hash_key(key)); }

void run_detect(const RunConfig& config, const IngestResult& data, RunOutcome& out) {
  std::ostringstream csv;
  csv << "group,n,t_n,c_alpha,p_value,reject,k_hat,order_key,error\n";
  json results = json::array();
  for (const auto& g : data.groups) {
    json r{{"group", g.key}, {"n", g.series.size()}};
    DetectorConfig det = config.detector;
    det.seed = group_seed(config.detector.seed, g.key);
    try {
      const Detection d = detect(g.series, det);
      r["decision"] = d.decision;
      r["k_scan"] = d.scan.k_hat;
      if (d.decision.k_hat) r["order_key"] = g.order_keys[*d.decision.k_hat - 1];
      if (config.trace) r["trace"] = scan_trace(d.scan);
      csv << csv_escape(g.key) << ',' << g.series.size() << ',' << number_token(d.decision.t_n) << ','
          << number_token(d.decision.c_alpha) << ',' << number_token(d.decision.p_value) << ','
          << (d.decision.reject ? "true" : "false") << ',' << opt_token(d.decision.k_hat) << ','
          << (d.decision.k_hat ? csv_escape(g.order_keys[*d.decision.k_hat - 1]) : "") << ",\n";
    } catch (const DegenerateScaleError& e) {
      r["error"] = error_json("degenerate_scale", e.what());
      out.exit_code = std::max(out.exit_code, kExitDegenerate);
      csv << csv_escape(g.key) << ',' << g.series.size() << ",,,,,,,degenerate_scale\n";
    } catch (const Error& e) {
      r["error"] = error_json("input", e.what());
      out.exit_code = std::max(out.exit_code, kExitInputError);
      csv << csv_escape(g.key) << ',' << g.series.size() << ",,,,,,,input\n";
    }
    results.push_back(std::move(r));
  }
  out.report["results"] = std::move(results);
  out.csv = csv.str();
}

void run_segment(const RunConfig& config, const IngestResult& data, RunOutcome& out) {
  std::ostringstream csv;
  csv << "group,change_point,order_key,next_order_key\n";
  json results = json::array();
  for (const auto& g : data.groups) {
    json r{{"group", g.key}, {"n", g.series.size()}};
    SegmentationConfig seg;
    seg.detector = config.detector;
    seg.detector.seed = group_seed(config.detector.seed, g.key);
    seg.n_min = config.n_min;
    seg.correction = config.correction;
    seg.bonferroni_m = config.bonferroni_m;
    try {
      const SegmentationReport rep = segment(g.series, seg);
      r["segmentation"] = rep;
      json cps = json::array();
      for (std::size_t c : rep.change_points) {
        cps.push_back({{"index", c}, {"order_key", g.order_keys[c - 1]}, {"next_order_key", g.order_keys[c]}});
        csv << csv_escape(g.key) << ',' << c << ',' << csv_escape(g.order_keys[c - 1]) << ','
            << csv_escape(g.order_keys[c]) << '\n';
      }
      r["change_points"] = std::move(cps);
    } catch (const DegenerateScaleError& e) {
      r["error"] = error_json("degenerate_scale", e.what());
      out.exit_code = std::max(out.exit_code, kExitDegenerate);
    } catch (const Error& e) {
      r["error"] = error_json("input", e.what());
      out.exit_code = std::max(out.exit_code, kExitInputError);
    }
    results.push_back(std::move(r));
  }
  out.report["results"] = std::move(results);
  out.csv = csv.str();
}

void run_simulate(const RunConfig& config, RunOutcome& out) {
  if (config.preset.empty()) throw ParameterError("simulate needs --preset (table1, power, localization)");
  const std::string kind = config.preset == "table1" ? "size" : config.preset;
  if (kind != "size" && kind != "power" && kind != "localization") {
    throw ParameterError("unknown simulation preset '" + config.preset + "'");
  }
  std::vector<CellSpec> cells;
  if (config.cells.empty()) {
    cells = preset_cells(config.preset);
  } else {
    for (const auto& text : config.cells) cells.push_back(parse_cell(text));
  }

  std::ostringstream csv;
  csv << "scenario,family,n,location,shift,variance,shape,replications,rejection_rate,monte_carlo_se,"
         "mean_localization_error,localization_se\n";
  json results = json::array();
  json timing = json::object();
  for (const auto& cell : cells) {
    Scenario sc;
    sc.name = cell_name(kind, cell);
    sc.base = base_distribution(cell.family);
    sc.n = cell.n;
    sc.replications = config.replications;
    sc.detector = config.detector;
    sc.seed = derive_seed(config.detector.seed, hash_key(sc.name));
    if (kind == "size") {
      if (cell.has_change()) throw ParameterError("table1 cells take no change parameters");
    } else {
      if (!cell.has_change()) throw ParameterError("cell '" + sc.name + "' needs shift, variance or shape");
      sc.change = Change{cell.location, cell.shift, cell.variance, cell.shape};
    }
    SimulationSummary s = kind == "size"    ? run_size(sc)
                          : kind == "power" ? run_power(sc)
                                            : run_localization(sc, config.conditional_localization);
    timing[sc.name] = s.seconds;
    json js = s;
    js.erase("seconds");
    js["family"] = to_string(cell.family);
    results.push_back(std::move(js));
    csv << sc.name << ',' << to_string(cell.family) << ',' << cell.n << ','
        << (kind == "size" ? "" : number_token(cell.location)) << ','
        << (kind == "size" ? "" : number_token(cell.shift)) << ',' << opt_token(cell.variance) << ','
        << opt_token(cell.shape) << ',' << s.replications << ',' << opt_token(s.rejection_rate) << ','
        << opt_token(s.monte_carlo_se) << ',' << opt_token(s.mean_localization_error) << ','
        << opt_token(s.localization_se) << '\n';
  }
  out.report["results"] = std::move(results);
  out.report["timing"]["cells"] = std::move(timing);
  out.csv = csv.str();
}

}  // namespace

CellSpec parse_cell(const std::string& text) {
  CellSpec c;
  std::stringstream ss(text);
  std::string token;
  bool first = true;
  while (std::getline(ss, token, ',')) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) {
      if (!first) throw ParameterError("cell token '" + token + "' is not key=value");
      c.family = family_from_string(token);
      first = false;
      continue;
    }
    first = false;
    const std::string key = token.substr(0, eq), value = token.substr(eq + 1);
    try {
      if (key == "family") {
        c.family = family_from_string(value);
      } else if (key == "n") {
        c.n = std::stoul(value);
      } else if (key == "loc" || key == "location") {
        c.location = std::stod(value);
      } else if (key == "shift" || key == "mean") {
        c.shift = std::stod(value);
      } else if (key == "variance" || key == "var") {
        c.variance = std::stod(value);
      } else if (key == "shape") {
        c.shape = std::stod(value);
      } else {
        throw ParameterError("unknown cell key '" + key + "'");
      }
    } catch (const std::logic_error&) {
      throw ParameterError("bad value '" + value + "' for cell key '" + key + "'");
    }
  }
  return c;
}

std::vector<CellSpec> preset_cells(const std::string& preset) {
  static const std::size_t sizes[] = {20, 30, 50, 100, 200};
  static const double locations[] = {0.1, 0.2, 0.3, 0.4, 0.5};
  static const double shifts[] = {0.5, 1.0, 1.5, 2.0};
  std::vector<CellSpec> out;
  const auto cell = [](Family f, std::size_t n, double loc = 0.5, double shift = 0.0) {
    CellSpec c;
    c.family = f;
    c.n = n;
    c.location = loc;
    c.shift = shift;
    return c;
  };
  if (preset == "table1") {
    for (Family f : {Family::normal, Family::skew_normal, Family::exponential}) {
      for (std::size_t n : sizes) out.push_back(cell(f, n));
    }
  } else if (preset == "power") {
    for (double shift : shifts) {
      for (std::size_t n : sizes) {
        for (double loc : locations) out.push_back(cell(Family::normal, n, loc, shift));
      }
    }
  } else if (preset == "localization") {
    for (double shift : shifts) out.push_back(cell(Family::normal, 100, 0.5, shift));
  } else {
    throw ParameterError("unknown simulation preset '" + preset + "'");
  }
  return out;
}

RunOutcome run(const RunConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();
  RunOutcome out;
  out.report["config"] = config_echo(config);
  out.report["warnings"] = json::array();
  try {
    validate(config.detector);
    if (config.command == Command::simulate) {
      run_simulate(config, out);
    } else {
      const IngestResult data = ingest(std::filesystem::path(config.input), config.csv);
      out.report["warnings"] = data.warnings;
      if (config.command == Command::detect) {
        run_detect(config, data, out);
      } else {
        run_segment(config, data, out);
      }
    }
  } catch (const DegenerateScaleError& e) {
    out.report["error"] = error_json("degenerate_scale", e.what());
    out.exit_code = kExitDegenerate;
  } catch (const Error& e) {
    out.report["error"] = error_json("input", e.what());
    out.exit_code = kExitInputError;
  }
  out.report["timing"]["seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

namespace {

void add_detector_options(CLI::App& app, RunConfig& c, std::optional<std::uint64_t>& seed,
                          std::string& scheme, std::optional<std::size_t>& block, std::string& format,
                          std::string& output) {
  app.add_option("--eta", c.detector.eta, "trimming fraction in (0, 1/2)")->capture_default_str();
  app.add_option("--omega", c.detector.omega, "distance exponent in (0, 2)")->capture_default_str();
  app.add_option("--alpha", c.detector.alpha, "test level")->capture_default_str();
  app.add_option("-L,--permutations", c.detector.permutations, "permutation replicates")->capture_default_str();
  app.add_option("--scheme", scheme, "uniform | circular_block")->capture_default_str();
  app.add_option("--block-length", block, "block length M (default ceil(sqrt(n)))");
  app.add_option("--seed", seed, "RNG seed (or EDCP_SEED)");
  app.add_option("--format", format, "json | csv")->capture_default_str();
  app.add_option("-o,--output", output, "write the report here instead of stdout");
  app.add_flag("--trace", c.trace, "include the per-split Z trace");
}

void add_input_options(CLI::App& app, RunConfig& c, std::string& values, std::string& preset) {
  app.add_option("input", c.input, "CSV file with a header row")->required();
  app.add_option("--group-col", c.csv.group_column, "grouping column (e.g. chromosome)");
  app.add_option("--order-col", c.csv.order_column, "ordering column (e.g. position)");
  app.add_option("--value-cols", values, "comma-separated value columns (default: all others)");
  app.add_option("--delimiter", c.csv.delimiter, "field delimiter");
  app.add_option("--preset", preset, "cgh: circular block permutation with M = ceil(sqrt(n))");
}

}  // namespace

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Energy-distance change-point detection"};
  app.require_subcommand(1);

  RunConfig config;
  std::optional<std::uint64_t> seed;
  std::string scheme = "uniform", format = "json", output, values, preset, correction = "none";
  std::optional<std::size_t> block;

  auto* detect_cmd = app.add_subcommand("detect", "single change-point test per group");
  auto* segment_cmd = app.add_subcommand("segment", "binary segmentation per group");
  auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo size/power/localization");
  for (auto* sub : {detect_cmd, segment_cmd, simulate_cmd}) {
    add_detector_options(*sub, config, seed, scheme, block, format, output);
  }
  add_input_options(*detect_cmd, config, values, preset);
  add_input_options(*segment_cmd, config, values, preset);
  segment_cmd->add_option("--n-min", config.n_min, "minimum segment length (default ceil(2 eta n))");
  segment_cmd->add_option("--correction", correction, "none | bonferroni")->capture_default_str();
  segment_cmd->add_option("--bonferroni-m", config.bonferroni_m, "Bonferroni divisor (default n / n_min)");
  simulate_cmd->add_option("--preset", config.preset, "table1 | power | localization")->required();
  simulate_cmd->add_option("--cell", config.cells, "cell like normal,n=100[,shift=1,loc=0.5]");
  simulate_cmd->add_option("-R,--replications", config.replications, "outer replications")->capture_default_str();
  simulate_cmd->add_flag("--conditional", config.conditional_localization,
                         "average localization over rejecting runs only");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  RunOutcome result;
  try {
    config.command = detect_cmd->parsed() ? Command::detect : segment_cmd->parsed() ? Command::segment : Command::simulate;
    if (config.command != Command::simulate) config.preset = preset;
    config.detector.scheme.kind = scheme_kind_from_string(scheme);
    if (config.preset == "cgh") {
      config.detector.scheme.kind = SchemeKind::circular_block;
    } else if (!config.preset.empty() && config.command != Command::simulate) {
      throw ParameterError("unknown input preset '" + config.preset + "'");
    }
    config.detector.scheme.block_length = block;
    if (block && config.detector.scheme.kind == SchemeKind::uniform) {
      throw ParameterError("--block-length requires --scheme circular_block");
    }
    config.correction = correction_from_string(correction);
    if (format == "json") {
      config.format = OutputFormat::json;
    } else if (format == "csv") {
      config.format = OutputFormat::csv;
    } else {
      throw ParameterError("unknown format '" + format + "'");
    }
    if (!seed) {
      if (const char* env = std::getenv("EDCP_SEED")) seed = std::stoull(env);
    }
    config.detector.seed = seed.value_or(0);
    if (!values.empty()) {
      std::stringstream ss(values);
      std::string col;
      while (std::getline(ss, col, ',')) config.csv.value_columns.push_back(col);
    }
    result = run(config);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }

  std::ofstream file;
  std::ostream* sink = &out;
  if (!output.empty()) {
    file.open(output);
    if (!file) {
      err << "error: cannot write '" << output << "'\n";
      return kExitInputError;
    }
    sink = &file;
  }
  if (config.format == OutputFormat::json || result.report.contains("error")) {
    *sink << result.report.dump(2) << '\n';
  } else {
    *sink << result.csv;
  }
  for (const auto& w : result.report["warnings"]) err << "warning: " << w.get<std::string>() << '\n';
  if (result.report.contains("error")) err << "error: " << result.report["error"]["message"].get<std::string>() << '\n';
  return result.exit_code;
}

}  // namespace edcp
