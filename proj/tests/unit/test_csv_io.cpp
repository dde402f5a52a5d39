#include <doctest.h>

#include <filesystem>
#include <stdexcept>

#include "pcmq/csv_io.hpp"
#include "pcmq/frames.hpp"

using namespace pcmq;
namespace fs = std::filesystem;

TEST_CASE("format_double round trips") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0}) CHECK(std::stod(csv::format_double(v)) == v);
}

TEST_CASE("table write and read") {
  const fs::path p = fs::temp_directory_path() / "pcmq_csv_table.csv";
  csv::Table t{{"a", "b"}, {{"1", "x"}, {"2.5", ""}}};
  csv::write(p, t);
  const auto back = csv::read(p);
  CHECK(back.header == t.header);
  CHECK(back.rows == t.rows);
  CHECK(back.number(1, "a") == 2.5);
  CHECK_THROWS_AS(back.column("c"), std::out_of_range);
  fs::remove(p);
  CHECK_THROWS_AS(csv::read(p), std::runtime_error);
}

TEST_CASE("frames survive a CSV round trip bit for bit") {
  const fs::path p = fs::temp_directory_path() / "pcmq_csv_frame.csv";
  const auto f = random_sphere_frame(4, 50, 12);
  const auto t = csv::frame_table(f);
  CHECK(t.header == std::vector<std::string>{"j", "e1", "e2", "e3", "e4"});
  csv::write(p, t);
  const auto g = csv::frame_from_table(csv::read(p));
  CHECK(g.dim() == 4);
  CHECK(g.count() == 50);
  CHECK(std::equal(f.data().begin(), f.data().end(), g.data().begin()));
  fs::remove(p);
}
