// SPDX-License-Identifier: Apache-2.0
//
// hstbeam: location-aware beam-forming toolkit for high-speed rail links

#include "cli/csv_writer.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace hstbeam::cli {

std::string format_double(double value, int precision) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0.0 ? "inf" : "-inf";
  if (precision < 1) precision = 1;
  if (precision > 17) precision = 17;
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*g", precision, value);
  return buffer;
}

void write_file_atomic(const std::filesystem::path &path, const std::string &content) {
  const std::filesystem::path temp = path.string() + ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + temp.string() + "' for writing");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("short write to '" + temp.string() + "'");
  }
  std::filesystem::rename(temp, path);
}

CsvFile::CsvFile(std::vector<std::string> columns, int precision)
    : columns_(std::move(columns)), precision_(precision) {
  if (columns_.empty()) throw std::invalid_argument("CSV table needs at least one column");
}

void CsvFile::add_metadata(const std::string &line) { metadata_.push_back("# " + line); }

void CsvFile::begin_row() { rows_.emplace_back(); }

void CsvFile::add(double value) { rows_.back().push_back(format_double(value, precision_)); }

void CsvFile::add(std::uint64_t value) { rows_.back().push_back(std::to_string(value)); }

void CsvFile::add(std::uint32_t value) { rows_.back().push_back(std::to_string(value)); }

void CsvFile::add(int value) { rows_.back().push_back(std::to_string(value)); }

void CsvFile::add(bool value) { rows_.back().push_back(value ? "1" : "0"); }

void CsvFile::add(const std::string &text) { rows_.back().push_back(text); }

std::string CsvFile::content() const {
  std::string out;
  for (const std::string &line : metadata_) {
    out += line;
    out += '\n';
  }
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (i > 0) out += ',';
    out += columns_[i];
  }
  out += '\n';
  for (const auto &row : rows_) {
    if (row.size() != columns_.size())
      throw std::logic_error("CSV row width does not match the column count");
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out += ',';
      out += row[i];
    }
    out += '\n';
  }
  return out;
}

void CsvFile::write_atomic(const std::filesystem::path &path) const {
  write_file_atomic(path, content());
}

}  // namespace hstbeam::cli
