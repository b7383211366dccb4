#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dagum/classify.hpp"
#include "dagum/fields.hpp"

namespace dagum::io {

/// Shortest decimal text that reads back to the same double.
std::string format_double(double v);

/// A CSV document: header, rows of fields kept as text, and '#' comment
/// lines.  A comment's position is the number of header/data lines before it.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::pair<std::size_t, std::string>> comments;  // text after '#'

  void add_comment(std::string text);  // appended after the current last line
  void add_row(std::vector<std::string> fields);
};

std::string to_csv(const CsvTable& table);

/// Parses text produced by to_csv (RFC 4180 quoting, '\n' line ends).
/// Throws std::runtime_error on ragged rows or a missing header.
CsvTable parse_csv(std::string_view text);

/// Writes to a temporary sibling file and renames it over `path`.
void atomic_write(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

/// Structured-text (JSON) documents, two-space indented.
std::string verdict_to_json(const classify::Verdict& v);
std::string table_to_json(const classify::ThresholdTable& t);

CsvTable threshold_table_csv(const classify::ThresholdTable& t);
CsvTable psd_reports_csv(const std::vector<fields::PsdReport>& reports);
CsvTable profile_csv(const fields::Profile& p);

}  // namespace dagum::io
