#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "edcp/series.hpp"

namespace edcp {

/// Column layout of an input CSV (header row required).
struct CsvFormat {
  std::optional<std::string> group_column;  // e.g. chromosome
  std::optional<std::string> order_column;  // e.g. position; file order if unset
  std::vector<std::string> value_columns;   // every other column if empty
  char delimiter = ',';
};

/// One ordered series, e.g. one chromosome.
struct Group {
  std::string key;
  Series series;
  std::vector<std::string> order_keys;  // ordering-key token per row, after sorting
  std::vector<std::size_t> source_rows; // 1-based data row per point, after sorting
};

struct IngestResult {
  std::vector<Group> groups;  // sorted by group key
  std::vector<std::string> warnings;
};

/// Throws InputError on missing columns (schema) or unparsable cells
/// (naming the 1-based data row). Groups with fewer than 4 rows are dropped
/// with a warning.
IngestResult ingest(std::istream& in, const CsvFormat& format);
IngestResult ingest(const std::filesystem::path& path, const CsvFormat& format);

}  // namespace edcp
