#pragma once

// Plain comma-separated tables. Numbers are written with %.17g so that a
// round trip reproduces every double exactly. No quoting: fields must not
// contain commas or newlines.

#include <filesystem>
#include <string>
#include <vector>

#include "pcmq/frames.hpp"

namespace pcmq::csv {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of `name` in the header; throws std::out_of_range if absent.
  std::size_t column(const std::string& name) const;
  double number(std::size_t row, const std::string& name) const;
};

std::string format_double(double v);

void write(const std::filesystem::path& path, const Table& table);
/// Throws std::runtime_error on I/O failure or ragged rows.
Table read(const std::filesystem::path& path);

/// Columns j,e1,...,ed.
Table frame_table(const UnitNormFrame& frame);
UnitNormFrame frame_from_table(const Table& table);

}  // namespace pcmq::csv
