#include "edcp/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "edcp/errors.hpp"

namespace edcp {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  std::string out(s.substr(b, e - b + 1));
  if (out.size() >= 2 && out.front() == '"' && out.back() == '"') out = out.substr(1, out.size() - 2);
  return out;
}

std::vector<std::string> split_line(const std::string& line, char delim) {
  std::vector<std::string> out;
  std::string cell;
  bool quoted = false;
  for (char c : line) {
    if (c == '"') quoted = !quoted;
    if (c == delim && !quoted) {
      out.push_back(trim(cell));
      cell.clear();
    } else {
      cell.push_back(c);
    }
  }
  out.push_back(trim(cell));
  return out;
}

std::optional<double> parse_number(const std::string& s) {
  if (s.empty()) return std::nullopt;
  double v = 0.0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::size_t column_index(const std::vector<std::string>& header, const std::string& name) {
  auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw InputError("schema error: missing column '" + name + "'");
  return static_cast<std::size_t>(it - header.begin());
}

/// Numeric ordering for keys like "3" or "chr15" that share a prefix.
std::optional<double> numeric_suffix(const std::string& key, const std::string& prefix) {
  if (key.compare(0, prefix.size(), prefix) != 0) return std::nullopt;
  return parse_number(key.substr(prefix.size()));
}

std::string common_alpha_prefix(const std::vector<std::string>& keys) {
  if (keys.empty()) return {};
  std::string p = keys.front();
  p = p.substr(0, p.find_first_of("0123456789"));
  for (const auto& k : keys) {
    if (k.compare(0, p.size(), p) != 0) return {};
  }
  return p;
}

struct Row {
  std::size_t data_row;
  double order;
  std::string order_token;
  std::vector<double> values;
};

}  // namespace

IngestResult ingest(std::istream& in, const CsvFormat& format) {
  std::string line;
  if (!std::getline(in, line)) throw InputError("schema error: empty input, header row required");
  const auto header = split_line(line, format.delimiter);

  std::optional<std::size_t> group_col, order_col;
  if (format.group_column) group_col = column_index(header, *format.group_column);
  if (format.order_column) order_col = column_index(header, *format.order_column);
  std::vector<std::size_t> value_cols;
  if (format.value_columns.empty()) {
    for (std::size_t c = 0; c < header.size(); ++c) {
      if (c != group_col && c != order_col) value_cols.push_back(c);
    }
  } else {
    for (const auto& name : format.value_columns) value_cols.push_back(column_index(header, name));
  }
  if (value_cols.empty()) throw InputError("schema error: no value columns");

  std::map<std::string, std::vector<Row>> by_group;
  std::vector<std::string> group_order;
  std::size_t data_row = 0;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    ++data_row;
    const auto cells = split_line(line, format.delimiter);
    if (cells.size() != header.size()) {
      throw InputError("parse error at row " + std::to_string(data_row) + ": expected " +
                       std::to_string(header.size()) + " cells, found " + std::to_string(cells.size()));
    }
    Row row;
    row.data_row = data_row;
    if (order_col) {
      auto v = parse_number(cells[*order_col]);
      if (!v) {
        throw InputError("parse error at row " + std::to_string(data_row) + ": ordering key '" +
                         cells[*order_col] + "' is not numeric");
      }
      row.order = *v;
      row.order_token = cells[*order_col];
    } else {
      row.order = static_cast<double>(data_row);
      row.order_token = std::to_string(data_row);
    }
    for (std::size_t c : value_cols) {
      auto v = parse_number(cells[c]);
      if (!v) {
        throw InputError("parse error at row " + std::to_string(data_row) + ", column '" + header[c] +
                         "': '" + cells[c] + "' is not a finite number");
      }
      row.values.push_back(*v);
    }
    const std::string key = group_col ? cells[*group_col] : std::string{};
    auto [it, fresh] = by_group.try_emplace(key);
    if (fresh) group_order.push_back(key);
    it->second.push_back(std::move(row));
  }

  const std::string prefix = common_alpha_prefix(group_order);
  const bool numeric = std::all_of(group_order.begin(), group_order.end(),
                                   [&](const auto& k) { return numeric_suffix(k, prefix).has_value(); });
  std::sort(group_order.begin(), group_order.end(), [&](const auto& a, const auto& b) {
    if (numeric) return *numeric_suffix(a, prefix) < *numeric_suffix(b, prefix);
    return a < b;
  });

  IngestResult out;
  for (const auto& key : group_order) {
    auto& rows = by_group[key];
    const std::string label = key.empty() ? "<all>" : key;
    if (rows.size() < 4) {
      out.warnings.push_back("group '" + label + "' has " + std::to_string(rows.size()) +
                             " rows (< 4); skipped");
      continue;
    }
    std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.order < b.order; });
    Group g;
    g.key = key;
    std::vector<double> values;
    values.reserve(rows.size() * value_cols.size());
    for (auto& r : rows) {
      values.insert(values.end(), r.values.begin(), r.values.end());
      g.order_keys.push_back(std::move(r.order_token));
      g.source_rows.push_back(r.data_row);
    }
    g.series = Series(std::move(values), value_cols.size());
    out.groups.push_back(std::move(g));
  }
  return out;
}

IngestResult ingest(const std::filesystem::path& path, const CsvFormat& format) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  return ingest(in, format);
}

}  // namespace edcp
