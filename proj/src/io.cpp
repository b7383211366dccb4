#include "dagum/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include <unistd.h>

#include <json.hpp>

namespace dagum::io {

namespace {

bool needs_quotes(std::string_view s) {
  return s.find_first_of(",\"\n\r") != std::string_view::npos;
}

void append_field(std::string& out, std::string_view s) {
  if (!needs_quotes(s)) {
    out.append(s);
    return;
  }
  out.push_back('"');
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
}

void append_record(std::string& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out.push_back(',');
    append_field(out, fields[i]);
  }
  out.push_back('\n');
}

// One record starting at `pos`; advances pos past the terminating newline.
std::vector<std::string> read_record(std::string_view text, std::size_t& pos) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  bool was_quoted = false;
  while (pos < text.size()) {
    const char c = text[pos++];
    if (quoted) {
      if (c == '"') {
        if (pos < text.size() && text[pos] == '"') {
          field.push_back('"');
          ++pos;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    if (c == '"' && field.empty() && !was_quoted) {
      quoted = true;
      was_quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
      was_quoted = false;
    } else if (c == '\n') {
      fields.push_back(std::move(field));
      return fields;
    } else {
      field.push_back(c);
    }
  }
  if (quoted) throw std::runtime_error("csv: unterminated quoted field");
  fields.push_back(std::move(field));
  return fields;
}

std::string model_params(const models::Model& m) {
  const auto names = m.param_names();
  return std::string(names[0]) + "=" + format_double(m.p1) + ";" + std::string(names[1]) + "=" + format_double(m.p2);
}

nlohmann::ordered_json number_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void CsvTable::add_comment(std::string text) {
  comments.emplace_back((header.empty() ? 0 : 1) + rows.size(), std::move(text));
}

void CsvTable::add_row(std::vector<std::string> fields) { rows.push_back(std::move(fields)); }

std::string to_csv(const CsvTable& table) {
  if (table.header.empty()) throw std::invalid_argument("csv: header is empty");
  std::string out;
  std::size_t next_comment = 0;
  auto flush_comments = [&](std::size_t position) {
    while (next_comment < table.comments.size() && table.comments[next_comment].first <= position) {
      out.push_back('#');
      out.append(table.comments[next_comment].second);
      out.push_back('\n');
      ++next_comment;
    }
  };
  flush_comments(0);
  append_record(out, table.header);
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    if (table.rows[i].size() != table.header.size()) throw std::invalid_argument("csv: row width differs from header");
    flush_comments(i + 1);
    append_record(out, table.rows[i]);
  }
  flush_comments(std::numeric_limits<std::size_t>::max());
  return out;
}

CsvTable parse_csv(std::string_view text) {
  CsvTable table;
  std::size_t pos = 0;
  std::size_t lines = 0;
  while (pos < text.size()) {
    if (text[pos] == '#') {
      const std::size_t end = text.find('\n', pos);
      const std::size_t stop = end == std::string_view::npos ? text.size() : end;
      table.comments.emplace_back(lines, std::string(text.substr(pos + 1, stop - pos - 1)));
      pos = end == std::string_view::npos ? text.size() : end + 1;
      continue;
    }
    std::vector<std::string> record = read_record(text, pos);
    if (lines == 0) {
      table.header = std::move(record);
    } else {
      if (record.size() != table.header.size()) throw std::runtime_error("csv: ragged row");
      table.rows.push_back(std::move(record));
    }
    ++lines;
  }
  if (table.header.empty()) throw std::runtime_error("csv: missing header");
  return table;
}

void atomic_write(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw std::runtime_error("write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot rename onto " + path.string() + ": " + ec.message());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string verdict_to_json(const classify::Verdict& v) {
  nlohmann::ordered_json j;
  j["status"] = std::string(classify::to_string(v.status));
  j["basis"] = std::string(classify::to_string(v.basis));
  j["citation"] = v.citation;
  if (v.certificate) {
    const classify::Certificate& c = *v.certificate;
    nlohmann::ordered_json cj;
    cj["kind"] = std::string(classify::to_string(c.kind));
    if (c.kind == classify::CertificateKind::indefinite_gram) {
      cj["location"] = c.point_set;
    } else {
      cj["location"] = number_or_null(c.location);
    }
    cj["order"] = c.order ? nlohmann::ordered_json(*c.order) : nlohmann::ordered_json(nullptr);
    cj["value"] = number_or_null(c.value);
    j["certificate"] = cj;
  } else {
    j["certificate"] = nullptr;
  }
  j["notes"] = v.notes;
  if (v.c_bounds) {
    j["c_bounds"] = {{"lower", v.c_bounds->lower}, {"upper", v.c_bounds->upper}};
  }
  return j.dump(2) + "\n";
}

std::string table_to_json(const classify::ThresholdTable& t) {
  nlohmann::ordered_json j;
  j["beta_grid"] = t.beta_grid;
  j["psi_max"] = t.psi_max;
  j["l_values"] = t.l_values;
  j["c_lower"] = t.c_lower;
  j["c_upper"] = t.c_upper;
  j["beta_star"] = t.beta_star;
  return j.dump(2) + "\n";
}

CsvTable threshold_table_csv(const classify::ThresholdTable& t) {
  CsvTable csv;
  const bool with_c = !t.c_lower.empty();
  csv.header = {"beta", "psi_max", "l_beta"};
  if (with_c) {
    csv.header.push_back("c_lower");
    csv.header.push_back("c_upper");
  }
  csv.add_comment(" beta_star=" + format_double(t.beta_star));
  for (std::size_t i = 0; i < t.beta_grid.size(); ++i) {
    std::vector<std::string> row{format_double(t.beta_grid[i]), format_double(t.psi_max[i]),
                                 format_double(t.l_values[i])};
    if (with_c) {
      row.push_back(format_double(t.c_lower[i]));
      row.push_back(format_double(t.c_upper[i]));
    }
    csv.add_row(std::move(row));
  }
  return csv;
}

CsvTable psd_reports_csv(const std::vector<fields::PsdReport>& reports) {
  CsvTable csv;
  csv.header = {"model",         "params",         "point_set_id",   "dimension", "n_points",
                "convention",    "min_eigenvalue", "max_eigenvalue", "verdict",   "tol"};
  for (const fields::PsdReport& r : reports) {
    csv.add_row({std::string(r.model.id()), model_params(r.model), r.point_set_id, std::to_string(r.dimension),
                 std::to_string(r.n_points), std::string(fields::to_string(r.convention)),
                 format_double(r.min_eigenvalue), format_double(r.max_eigenvalue),
                 std::string(fields::to_string(r.verdict)), format_double(r.tol)});
  }
  return csv;
}

CsvTable profile_csv(const fields::Profile& p) {
  CsvTable csv;
  csv.header = {"index", "t", "value"};
  csv.add_comment(" model=" + std::string(p.model.id()) + " " + model_params(p.model));
  csv.add_comment(" spacing=" + format_double(p.spacing) + " seed=" + std::to_string(p.seed) +
                  " jitter=" + format_double(fields::kJitter));
  for (std::size_t i = 0; i < p.values.size(); ++i) {
    csv.add_row({std::to_string(i), format_double(p.spacing * static_cast<double>(i)), format_double(p.values[i])});
  }
  return csv;
}

}  // namespace dagum::io
