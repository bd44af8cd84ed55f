#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "edcp/calibration.hpp"
#include "edcp/io.hpp"
#include "edcp/segmentation.hpp"
#include "edcp/simulation.hpp"

namespace edcp {

enum class Command { detect, segment, simulate };
enum class OutputFormat { json, csv };

/// Exit statuses of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitDegenerate = 3;

/// One simulation cell, e.g. "normal,n=100" or "normal,n=50,shift=1.5,loc=0.5".
struct CellSpec {
  Family family = Family::normal;
  std::size_t n = 100;
  double location = 0.5;
  double shift = 0.0;
  std::optional<double> variance;
  std::optional<double> shape;

  bool has_change() const noexcept { return shift != 0.0 || variance || shape; }
};

CellSpec parse_cell(const std::string& text);

/// Cells of a named preset ("table1", "power", "localization").
std::vector<CellSpec> preset_cells(const std::string& preset);

struct RunConfig {
  Command command = Command::detect;
  std::string input;
  CsvFormat csv{};
  std::string preset;              // simulate: table1 | power | localization; detect/segment: cgh
  std::vector<std::string> cells;  // simulate only
  std::size_t replications = 1000;
  bool conditional_localization = false;
  DetectorConfig detector{};
  std::optional<std::size_t> n_min;
  Correction correction = Correction::none;
  std::optional<std::size_t> bonferroni_m;
  OutputFormat format = OutputFormat::json;
  bool trace = false;
};

struct RunOutcome {
  nlohmann::json report;  // always built, including on failure
  int exit_code = kExitOk;
  std::string csv;        // set when format == csv
};

/// Executes one command. Errors end up in the report and the exit code;
/// nothing is thrown for bad input.
RunOutcome run(const RunConfig& config);

/// Full command-line entry point (argument parsing included).
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace edcp
