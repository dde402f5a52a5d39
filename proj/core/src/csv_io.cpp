#include "pcmq/csv_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pcmq::csv {
namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

std::size_t Table::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw std::out_of_range("csv: no column '" + name + "'");
}

double Table::number(std::size_t row, const std::string& name) const {
  return std::stod(rows.at(row).at(column(name)));
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write(const std::filesystem::path& path, const Table& table) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("csv: cannot open " + path.string() + " for writing");
  auto emit = [&](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << fields[i];
    out << '\n';
  };
  emit(table.header);
  for (const auto& row : table.rows) emit(row);
  if (!out) throw std::runtime_error("csv: write failed for " + path.string());
}

Table read(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("csv: cannot open " + path.string());
  Table t;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("csv: empty file " + path.string());
  t.header = split(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto row = split(line);
    if (row.size() != t.header.size()) throw std::runtime_error("csv: ragged row in " + path.string());
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table frame_table(const UnitNormFrame& frame) {
  Table t;
  t.header.push_back("j");
  for (std::size_t i = 1; i <= frame.dim(); ++i) t.header.push_back("e" + std::to_string(i));
  for (std::size_t j = 0; j < frame.count(); ++j) {
    std::vector<std::string> row{std::to_string(j)};
    for (double v : frame.vector(j)) row.push_back(format_double(v));
    t.rows.push_back(std::move(row));
  }
  return t;
}

UnitNormFrame frame_from_table(const Table& table) {
  if (table.header.size() < 3 || table.header.front() != "j") throw std::runtime_error("csv: not a frame table");
  const std::size_t d = table.header.size() - 1;
  std::vector<double> data;
  data.reserve(d * table.rows.size());
  for (const auto& row : table.rows)
    for (std::size_t i = 1; i <= d; ++i) data.push_back(std::stod(row[i]));
  return UnitNormFrame(d, std::move(data));
}

}  // namespace pcmq::csv
