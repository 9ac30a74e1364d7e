// SPDX-License-Identifier: Apache-2.0
//
// hstbeam: location-aware beam-forming toolkit for high-speed rail links

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace hstbeam::cli {

/// Deterministic float formatting for CSV cells: %.{precision}g, with NaN
/// and infinities normalized to fixed spellings.
std::string format_double(double value, int precision);

/// Write `content` to `path` atomically: the bytes land in a sibling temp
/// file first and are renamed into place, so readers never see a partial
/// file and reruns replace outputs in one step.
void write_file_atomic(const std::filesystem::path &path, const std::string &content);

/// Accumulates a CSV table: '#' metadata lines, one column-name row, then
/// data rows. Cells carry pre-formatted text; the typed `add` overloads
/// format numbers consistently.
class CsvFile {
 public:
  CsvFile(std::vector<std::string> columns, int precision);

  /// Adds one metadata line (leading "# " supplied here).
  void add_metadata(const std::string &line);

  void begin_row();
  void add(double value);
  void add(std::uint64_t value);
  void add(std::uint32_t value);
  void add(int value);
  void add(bool value);
  void add(const std::string &text);

  std::string content() const;
  void write_atomic(const std::filesystem::path &path) const;

 private:
  std::vector<std::string> metadata_;
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
  int precision_;
};

}  // namespace hstbeam::cli
